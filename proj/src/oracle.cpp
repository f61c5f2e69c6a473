// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/oracle.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include "mobscore/table_io.hpp"

namespace mobscore {

std::atomic<int>& interrupt_flag() {
    static std::atomic<int> flag{0};
    return flag;
}

void EvaluationLog::record_fresh(std::uint32_t mask, double value, double wall_seconds) {
    Record& r = records_[mask];
    r.value = value;
    r.fresh = true;
    r.wall_seconds = wall_seconds;
    ++total_fresh_;
}

void EvaluationLog::record_preloaded(std::uint32_t mask, double value) {
    Record& r = records_[mask];
    r.value = value;
    r.preloaded = true;
}

void EvaluationLog::record_cached_hit(std::uint32_t mask) { ++records_[mask].cached_hits; }

void EvaluationLog::forget(std::uint32_t mask) { records_.erase(mask); }

const EvaluationLog::Record* EvaluationLog::find(std::uint32_t mask) const {
    auto it = records_.find(mask);
    return it == records_.end() ? nullptr : &it->second;
}

ModelOracle::ModelOracle(std::unique_ptr<OracleBackend> backend, OracleOptions options)
    : backend_(std::move(backend)), options_(std::move(options)), d_(backend_->dimension()) {
    check_table_dimension(d_, true);
    if (options_.fan_out < 1) options_.fan_out = 1;
    if (!options_.cache_path.empty()) preload_cache_file();
}

ModelOracle::~ModelOracle() = default;

std::string ModelOracle::backend_kind() const { return backend_->kind(); }

double ModelOracle::eval_keep(const FeatureSet& keep) {
    if (keep.width() != d_) {
        throw ValidationError("subset width " + std::to_string(keep.width()) +
                              " does not match oracle dimension " + std::to_string(d_));
    }
    const std::uint32_t mask = keep.bits();

    std::unique_lock lk(mu_);
    for (;;) {
        auto it = memo_.find(mask);
        if (it == memo_.end()) break;
        if (it->second.ready) {
            log_.record_cached_hit(mask);
            return it->second.value;
        }
        // Another caller is evaluating this subset; wait for its result.
        cv_.wait(lk);
    }

    if (interrupt_flag().load() != 0) {
        throw OracleError("interrupted before evaluating subset " + keep.to_string());
    }
    if (fresh_ >= options_.max_evaluations) {
        throw BudgetError("evaluation budget of " + std::to_string(options_.max_evaluations) +
                          " exhausted at subset " + keep.to_string());
    }
    ++fresh_;
    memo_.emplace(mask, Slot{});
    lk.unlock();

    double value = 0.0;
    double wall = 0.0;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        value = backend_->evaluate(keep);
        wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!std::isfinite(value)) {
            throw OracleError("backend returned a non-finite value for subset " + keep.to_string());
        }
    } catch (...) {
        lk.lock();
        memo_.erase(mask);
        --fresh_;
        cv_.notify_all();
        throw;
    }

    lk.lock();
    Slot& slot = memo_[mask];
    slot.ready = true;
    slot.value = value;
    log_.record_fresh(mask, value, wall);
    if (!options_.cache_path.empty()) write_cache_file_locked();
    cv_.notify_all();
    return value;
}

SetFunction ModelOracle::isolation_table() {
    const std::size_t n = std::size_t{1} << d_;

    {
        std::unique_lock lk(mu_);
        std::uint64_t uncached = 0;
        for (std::uint32_t m = 0; m < n; ++m) {
            auto it = memo_.find(m);
            if (it == memo_.end() || !it->second.ready) ++uncached;
        }
        if (fresh_ + uncached > options_.max_evaluations) {
            throw BudgetError("full isolation table needs " + std::to_string(uncached) +
                              " more evaluations but the budget of " +
                              std::to_string(options_.max_evaluations) + " allows only " +
                              std::to_string(options_.max_evaluations - fresh_));
        }
    }

    std::vector<double> v(n, 0.0);
    const int workers = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(options_.fan_out), n));
    if (workers <= 1) {
        for (std::uint32_t m = 0; m < n; ++m) {
            v[m] = eval_keep(FeatureSet::from_mask(m, d_));
        }
    } else {
        std::atomic<std::uint32_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint32_t m = next.fetch_add(1);
                    if (m >= n) return;
                    try {
                        v[m] = eval_keep(FeatureSet::from_mask(m, d_));
                    } catch (...) {
                        std::lock_guard g(failure_mu);
                        if (!failure) failure = std::current_exception();
                        next.store(static_cast<std::uint32_t>(n));
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    const double v_empty = v[0];
    std::vector<double> isolation(n);
    for (std::size_t m = 0; m < n; ++m) isolation[m] = v[m] - v_empty;
    isolation[0] = 0.0;
    return SetFunction(d_, std::move(isolation), true);
}

bool ModelOracle::audit_cached(const FeatureSet& keep) {
    double cached = 0.0;
    {
        std::lock_guard lk(mu_);
        auto it = memo_.find(keep.bits());
        if (it == memo_.end() || !it->second.ready) {
            throw ValidationError("subset " + keep.to_string() + " has no cached value to audit");
        }
        cached = it->second.value;
    }
    const double fresh = backend_->evaluate(keep);
    if (fresh == cached) return true;
    std::cerr << "warning: nondeterministic backend: subset " << keep.to_string()
              << " cached " << cached << " but re-evaluated to " << fresh
              << "; keeping the cached value\n";
    return false;
}

std::uint64_t ModelOracle::fresh_evaluations() const {
    std::lock_guard lk(mu_);
    return fresh_;
}

EvaluationLog ModelOracle::log_snapshot() const {
    std::lock_guard lk(mu_);
    return log_;
}

void ModelOracle::flush_cache() {
    std::lock_guard lk(mu_);
    if (!options_.cache_path.empty()) write_cache_file_locked();
}

void ModelOracle::preload_cache_file() {
    if (!std::filesystem::exists(options_.cache_path)) return;
    const auto entries = load_partial_value_table(options_.cache_path, d_);
    std::lock_guard lk(mu_);
    for (const auto& [mask, value] : entries) {
        memo_[mask] = Slot{true, value};
        log_.record_preloaded(mask, value);
    }
}

void ModelOracle::write_cache_file_locked() {
    std::map<std::uint32_t, double> values;
    for (const auto& [mask, slot] : memo_) {
        if (slot.ready) values[mask] = slot.value;
    }
    write_partial_value_table(options_.cache_path, d_, values);
}

namespace {

class TableBackend final : public OracleBackend {
public:
    explicit TableBackend(SetFunction values) : values_(std::move(values)) {}
    int dimension() const override { return values_.dimension(); }
    double evaluate(const FeatureSet& keep) override { return values_.at(keep); }
    std::string kind() const override { return "table"; }

private:
    SetFunction values_;
};

class PolynomialBackend final : public OracleBackend {
public:
    explicit PolynomialBackend(PolynomialModel model) : model_(std::move(model)) {}
    int dimension() const override { return model_.dimension(); }
    double evaluate(const FeatureSet& keep) override { return model_.evaluate_keep(keep); }
    std::string kind() const override { return "polynomial"; }

private:
    PolynomialModel model_;
};

} // namespace

std::unique_ptr<OracleBackend> make_table_backend(SetFunction values) {
    return std::make_unique<TableBackend>(std::move(values));
}

std::unique_ptr<OracleBackend> make_polynomial_backend(PolynomialModel model) {
    return std::make_unique<PolynomialBackend>(std::move(model));
}

std::unique_ptr<OracleBackend> load_table_oracle(const std::string& path, int expected_d,
                                                 bool allow_large) {
    SetFunction table = load_value_table(path, allow_large);
    if (expected_d >= 0 && table.dimension() != expected_d) {
        throw ValidationError("table " + path + " declares d=" + std::to_string(table.dimension()) +
                              " but d=" + std::to_string(expected_d) + " was requested");
    }
    return make_table_backend(std::move(table));
}

} // namespace mobscore
