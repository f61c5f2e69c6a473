// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mobscore {

/// Invalid configuration or input data (bad dimension, missing subset,
/// malformed file, target outside a method's family). CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Backend evaluation failure: spawn/transport error, protocol violation,
/// timeout, non-finite reply. CLI exit code 2.
class OracleError : public std::runtime_error {
public:
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

/// The fresh-evaluation budget cannot cover the request. CLI exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mobscore
