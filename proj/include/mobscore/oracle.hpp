// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "mobscore/polynomial.hpp"
#include "mobscore/set_function.hpp"

namespace mobscore {

/// The black-box boundary: evaluate the model with only the features in
/// `keep` present. How removed features are realized (baseline substitution,
/// masking, prompt ablation, ...) is entirely the backend's business.
class OracleBackend {
public:
    virtual ~OracleBackend() = default;
    virtual int dimension() const = 0;
    virtual double evaluate(const FeatureSet& keep) = 0;
    virtual std::string kind() const = 0;
};

/// Per-subset evaluation bookkeeping. At most one fresh backend evaluation
/// per subset; cache hits and preloaded entries are tracked separately.
class EvaluationLog {
public:
    struct Record {
        double value = 0.0;
        bool fresh = false;      // obtained from the backend in this run
        bool preloaded = false;  // seeded from a cache file
        std::uint64_t cached_hits = 0;
        double wall_seconds = 0.0;
    };

    void record_fresh(std::uint32_t mask, double value, double wall_seconds);
    void record_preloaded(std::uint32_t mask, double value);
    void record_cached_hit(std::uint32_t mask);
    void forget(std::uint32_t mask);

    const Record* find(std::uint32_t mask) const;
    const std::map<std::uint32_t, Record>& records() const noexcept { return records_; }
    std::uint64_t total_fresh() const noexcept { return total_fresh_; }

private:
    std::map<std::uint32_t, Record> records_;
    std::uint64_t total_fresh_ = 0;
};

struct OracleOptions {
    /// Per-evaluation deadline for remote backends; table and polynomial
    /// backends ignore it.
    double timeout_seconds = 60.0;
    /// Fresh-evaluation budget.
    std::uint64_t max_evaluations = std::numeric_limits<std::uint64_t>::max();
    /// Parallel backend fan-out for table materialization.
    int fan_out = 1;
    /// Optional write-through cache file (value-table format) for resumable
    /// runs; preloaded on construction when the file exists.
    std::string cache_path;
};

/// Memoizing front for a backend. eval_keep is safe for concurrent callers;
/// a subset is evaluated freshly at most once, with concurrent requesters
/// for the same subset waiting on the first result.
class ModelOracle {
public:
    explicit ModelOracle(std::unique_ptr<OracleBackend> backend, OracleOptions options = {});
    ~ModelOracle();

    ModelOracle(const ModelOracle&) = delete;
    ModelOracle& operator=(const ModelOracle&) = delete;

    int dimension() const noexcept { return d_; }
    std::string backend_kind() const;
    const OracleOptions& options() const noexcept { return options_; }

    /// v(S): model output with exactly the features in S kept.
    double eval_keep(const FeatureSet& keep);

    /// Dense feature isolation table A_f(S) = v(S) - v(empty); entry at the
    /// empty set is exactly 0. Issues one fresh evaluation per uncached
    /// subset, in ascending bitmask order (fan-out > 1 parallelizes the
    /// backend calls without changing any value).
    SetFunction isolation_table();

    /// Re-queries the backend for an already-cached subset and compares.
    /// Returns false (and warns on stderr) when the backend disagrees with
    /// the cache — a nondeterministic backend. The cached value stands
    /// either way, and audit evaluations are not counted as fresh.
    bool audit_cached(const FeatureSet& keep);

    std::uint64_t fresh_evaluations() const;
    EvaluationLog log_snapshot() const;

    /// Writes all evaluated subsets to the cache file (no-op without one).
    void flush_cache();

private:
    double evaluate_uncached(const FeatureSet& keep);
    void preload_cache_file();
    void write_cache_file_locked();

    std::unique_ptr<OracleBackend> backend_;
    OracleOptions options_;
    int d_;

    mutable std::mutex mu_;
    std::condition_variable cv_;
    struct Slot {
        bool ready = false;
        double value = 0.0;
    };
    std::unordered_map<std::uint32_t, Slot> memo_;
    EvaluationLog log_;
    std::uint64_t fresh_ = 0;
};

/// Cooperative interruption for signal handling: stores 128 + signal number
/// (0 = not interrupted). Fresh evaluations and blocked remote reads abort
/// with an OracleError once it is set. With a write-through cache every
/// completed evaluation is already on disk, so nothing is lost.
std::atomic<int>& interrupt_flag();

/// Backend over an explicit v(S) table.
std::unique_ptr<OracleBackend> make_table_backend(SetFunction values);

/// Backend over a polynomial model; removal = baseline substitution.
std::unique_ptr<OracleBackend> make_polynomial_backend(PolynomialModel model);

/// Reads a value-table file (see table_io.hpp) into a table backend.
/// expected_d, when >= 0, must match the file's declared dimension.
std::unique_ptr<OracleBackend> load_table_oracle(const std::string& path, int expected_d = -1,
                                                 bool allow_large = false);

/// Spawns `command` via /bin/sh; one JSON request line {"keep":[...]} per
/// query on its stdin, one JSON reply line {"value": number} per answer on
/// its stdout. The child must flush per line.
std::unique_ptr<OracleBackend> spawn_subprocess_oracle(const std::string& command, int d,
                                                       double timeout_seconds = 60.0);

/// HTTP backend: POST {"keep":[...]} to the given http:// URL, expecting
/// 200 with {"value": number}. Three attempts with exponential backoff.
/// The host must be reachable at connect time.
std::unique_ptr<OracleBackend> connect_http_oracle(const std::string& url, int d,
                                                   double timeout_seconds = 60.0);

} // namespace mobscore
