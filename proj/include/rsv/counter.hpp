#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "rsv/formula.hpp"

namespace rsv {

struct counter_config {
    enum class branching_rule { most_frequent, fixed_order };

    branching_rule branching = branching_rule::most_frequent;
    bool component_caching = true;
    // Components with at most this many variables are counted by direct
    // enumeration instead of further splitting.
    int exhaustive_fallback_threshold = 5;
    // Hard cap on branching decisions; exceeding it raises budget_error.
    std::uint64_t decision_cap = 50'000'000;
};

struct counter_stats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t cached_components = 0;
    std::uint64_t cache_hits = 0;
    double wall_ms = 0.0;
};

struct model_count {
    mpz_class value;
    counter_stats stats;
};

// Exact #SAT over all `num_vars` variables: variables not mentioned in any
// clause each double the count; the empty clause set gives 2^num_vars and an
// unsatisfiable formula gives 0.  Deterministic for a fixed configuration.
model_count count_models(const cnf_formula& f, const counter_config& cfg = {});

// Brute-force oracle over at most 26 variables.
model_count count_exhaustive(const cnf_formula& f);

}  // namespace rsv
