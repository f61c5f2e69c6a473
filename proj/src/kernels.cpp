// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/kernels.hpp"

#include "mobscore/numeric.hpp"

namespace mobscore {

bool WeightKernel::in_family(const FeatureSet& target) const {
    const int c = target.cardinality();
    switch (family) {
        case TargetFamily::kAllSubsets: return true;
        case TargetFamily::kSingletons: return c == 1;
        case TargetFamily::kUpToOrder: return c >= 1 && c <= order;
        case TargetFamily::kExactOrder: return c == order;
    }
    return false;
}

std::string WeightKernel::family_description() const {
    switch (family) {
        case TargetFamily::kAllSubsets: return "any subset";
        case TargetFamily::kSingletons: return "single features";
        case TargetFamily::kUpToOrder: return "subsets of size 1.." + std::to_string(order);
        case TargetFamily::kExactOrder: return "subsets of size " + std::to_string(order);
    }
    return "";
}

namespace {

void check_order(int k) {
    if (k < 1) throw ValidationError("order k must be >= 1, got " + std::to_string(k));
}

} // namespace

WeightKernel mobius_kernel() {
    WeightKernel kernel;
    kernel.id = "mobius";
    kernel.family = TargetFamily::kAllSubsets;
    kernel.support = SupportPattern::kEqual;
    kernel.faithful_claim = true;
    kernel.weight = [](const FeatureSet& s, const FeatureSet& t) {
        return s.bits() == t.bits() ? 1.0 : 0.0;
    };
    return kernel;
}

WeightKernel shapley_kernel() {
    WeightKernel kernel;
    kernel.id = "shapley";
    kernel.family = TargetFamily::kSingletons;
    kernel.support = SupportPattern::kSupersets;
    kernel.faithful_claim = true;
    kernel.weight = [](const FeatureSet& s, const FeatureSet& t) {
        if (s.cardinality() != 1 || !s.is_subset_of(t)) return 0.0;
        return 1.0 / static_cast<double>(t.cardinality());
    };
    return kernel;
}

WeightKernel sii_kernel(int k) {
    check_order(k);
    WeightKernel kernel;
    kernel.id = "sii";
    kernel.order = k;
    kernel.family = TargetFamily::kUpToOrder;
    kernel.support = SupportPattern::kSupersets;
    kernel.faithful_claim = true;
    kernel.weight = [k](const FeatureSet& s, const FeatureSet& t) {
        const int cs = s.cardinality();
        if (cs < 1 || cs > k || !s.is_subset_of(t)) return 0.0;
        return 1.0 / static_cast<double>(t.cardinality() - cs + 1);
    };
    return kernel;
}

WeightKernel sti_kernel(int k) {
    check_order(k);
    WeightKernel kernel;
    kernel.id = "sti";
    kernel.order = k;
    kernel.family = TargetFamily::kUpToOrder;
    kernel.support = SupportPattern::kSupersets;
    kernel.faithful_claim = true;
    kernel.weight = [k](const FeatureSet& s, const FeatureSet& t) {
        const int cs = s.cardinality();
        if (cs < 1 || cs > k) return 0.0;
        if (cs < k) return s.bits() == t.bits() ? 1.0 : 0.0;
        if (!s.is_subset_of(t)) return 0.0;
        return 1.0 / binomial(t.cardinality(), k);
    };
    return kernel;
}

WeightKernel pie_kernel() {
    WeightKernel kernel;
    kernel.id = "pie";
    kernel.family = TargetFamily::kSingletons;
    kernel.support = SupportPattern::kEqual;
    kernel.faithful_claim = true;
    kernel.weight = [](const FeatureSet& s, const FeatureSet& t) {
        return (s.cardinality() == 1 && s.bits() == t.bits()) ? 1.0 : 0.0;
    };
    return kernel;
}

WeightKernel tie_kernel() {
    WeightKernel kernel;
    kernel.id = "tie";
    kernel.family = TargetFamily::kSingletons;
    kernel.support = SupportPattern::kSupersets;
    kernel.faithful_claim = true;
    kernel.weight = [](const FeatureSet& s, const FeatureSet& t) {
        return (s.cardinality() == 1 && s.is_subset_of(t)) ? 1.0 : 0.0;
    };
    return kernel;
}

WeightKernel mi_kernel(int k) {
    check_order(k);
    WeightKernel kernel;
    kernel.id = "mi";
    kernel.order = k;
    kernel.family = TargetFamily::kExactOrder;
    kernel.support = SupportPattern::kEqual;
    kernel.faithful_claim = true;
    kernel.weight = [k](const FeatureSet& s, const FeatureSet& t) {
        return (s.cardinality() == k && s.bits() == t.bits()) ? 1.0 : 0.0;
    };
    return kernel;
}

WeightKernel arch_attribute_kernel() {
    WeightKernel kernel;
    kernel.id = "arch_attribute";
    kernel.family = TargetFamily::kAllSubsets;
    kernel.support = SupportPattern::kSubsets;
    kernel.faithful_claim = true;
    kernel.weight = [](const FeatureSet& s, const FeatureSet& t) {
        return t.is_subset_of(s) ? 1.0 : 0.0;
    };
    return kernel;
}

const std::vector<std::string>& kernel_registry_ids() {
    static const std::vector<std::string> ids = {
        "mobius", "shapley", "sii", "sti", "pie", "tie", "mi", "arch_attribute",
    };
    return ids;
}

WeightKernel make_kernel(const std::string& id, std::optional<int> k) {
    if (id == "mobius") return mobius_kernel();
    if (id == "shapley") return shapley_kernel();
    if (id == "sii") return sii_kernel(k.value_or(2));
    if (id == "sti") return sti_kernel(k.value_or(2));
    if (id == "pie") return pie_kernel();
    if (id == "tie") return tie_kernel();
    if (id == "mi") return mi_kernel(k.value_or(2));
    if (id == "arch_attribute") return arch_attribute_kernel();
    std::string known;
    for (const auto& name : kernel_registry_ids()) {
        if (!known.empty()) known += ", ";
        known += name;
    }
    throw ValidationError("unknown method '" + id + "'; registered methods: " + known);
}

std::vector<FeatureSet> default_targets(const WeightKernel& kernel, int d) {
    std::vector<FeatureSet> out;
    for (const FeatureSet& s : canonical_subsets(d)) {
        if (s.empty()) continue;
        if (kernel.in_family(s)) out.push_back(s);
    }
    return out;
}

} // namespace mobscore
