// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mobscore/set_function.hpp"

namespace mobscore {

// The literal double-sum oracles are O(4^d); keep them on small lattices.
inline constexpr int kNaiveTransformMaxDim = 14;

/// Zeta transform: zeta(F)(S) = sum over T subseteq S of F(T).
/// Subset-sum dynamic program, one pass per feature, O(d * 2^d) additions.
SetFunction zeta_transform(const SetFunction& f);

/// Moebius transform: mu(F)(S) = sum over T subseteq S of (-1)^(|S|-|T|) F(T).
/// Inverse of zeta_transform; signed subset-sum dynamic program.
SetFunction mobius_transform(const SetFunction& f);

// Literal double-sum forms, used as independent cross-check oracles.
// Restricted to d <= kNaiveTransformMaxDim.
SetFunction zeta_transform_naive(const SetFunction& f);
SetFunction mobius_transform_naive(const SetFunction& f);

} // namespace mobscore
