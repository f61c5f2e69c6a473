// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mobscore/feature_set.hpp"

namespace mobscore {

/// Which target subsets a method scores.
enum class TargetFamily {
    kAllSubsets,  // every S
    kSingletons,  // |S| = 1
    kUpToOrder,   // 1 <= |S| <= k
    kExactOrder,  // |S| = k
};

/// Where weight(S, T) can be nonzero, as a function of the target S. Score
/// computation iterates only that region; kFull means the whole lattice.
enum class SupportPattern {
    kEqual,      // T = S
    kSupersets,  // S subseteq T
    kSubsets,    // T subseteq S
    kFull,
};

/// The weight function w(S, T) of a weighted-Moebius attribution method:
/// score(S) = sum over T of w(S, T) * mobius(T). A kernel claiming
/// faithfulness has w(S, T) = 0 whenever S and T are disjoint and T is
/// nonempty (the weight at T = {} is immaterial since mobius({}) = 0).
struct WeightKernel {
    std::string id;
    int order = 0; // k; 0 when the method has no order parameter
    TargetFamily family = TargetFamily::kAllSubsets;
    SupportPattern support = SupportPattern::kFull;
    bool faithful_claim = false;
    std::function<double(const FeatureSet& target, const FeatureSet& coalition)> weight;

    bool in_family(const FeatureSet& target) const;
    std::string family_description() const;
};

// Table of registered methods. k defaults to 2 for sii/sti/mi.

/// w(S,T) = 1 iff S = T: the Moebius scores themselves.
WeightKernel mobius_kernel();

/// w(S,T) = 1/|T| iff |S| = 1 and S subseteq T.
WeightKernel shapley_kernel();

/// Shapley interaction index: w(S,T) = 1/(|T|-|S|+1) iff |S| <= k and
/// S subseteq T.
WeightKernel sii_kernel(int k = 2);

/// Shapley-Taylor interaction index: w(S,T) = 1 iff |S| < k and S = T;
/// w(S,T) = 1/C(|T|,k) iff |S| = k and S subseteq T.
WeightKernel sti_kernel(int k = 2);

/// Pure indirect effect: w(S,T) = 1 iff |S| = 1 and S = T.
WeightKernel pie_kernel();

/// Total indirect effect: w(S,T) = 1 iff |S| = 1 and S subseteq T.
WeightKernel tie_kernel();

/// Mediated interaction effect of order k: w(S,T) = 1 iff |S| = k and S = T.
WeightKernel mi_kernel(int k = 2);

/// Interaction attribution via the zeta transform: w(S,T) = 1 iff
/// T subseteq S, so score(S) equals the isolation score of S. The order is
/// the queried |S|, so every subset is a valid target.
WeightKernel arch_attribute_kernel();

/// Registered method ids, in registry order.
const std::vector<std::string>& kernel_registry_ids();

/// Looks up a registered kernel by id, overriding its order with k when
/// given. Unknown ids raise a ValidationError that lists the registry.
WeightKernel make_kernel(const std::string& id, std::optional<int> k = std::nullopt);

/// The method's default targets within dimension d (canonical order):
/// all nonempty subsets, singletons, nonempty |S| <= k, or |S| = k.
std::vector<FeatureSet> default_targets(const WeightKernel& kernel, int d);

} // namespace mobscore
