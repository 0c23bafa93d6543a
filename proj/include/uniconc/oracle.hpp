#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "uniconc/polynomial.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

inline constexpr std::size_t kDefaultOracleCap = 8;

/// Brute-force ground truth: every word of length n that stays off the sink, deduplicated by
/// normal form.
struct ExecutionSet {
    StateId origin = 0;
    std::size_t length = 0;
    /// Normal form -> target state.
    std::map<NormalForm, StateId> traces;
    std::vector<std::size_t> by_target;

    std::size_t size() const { return traces.size(); }
};

/// Throws CapExceeded when n > cap. Parallel over two-letter prefixes unless `serial`.
ExecutionSet enumerate_executions(const ConcurrentSystem& sys, StateId origin, std::size_t n,
                                  std::size_t cap = kDefaultOracleCap, bool serial = false);

struct CrossCheckEntry {
    std::size_t n = 0;
    StateId from = 0;
    StateId to = 0;
    BigInt oracle;
    BigInt paths;
    BigInt series;
};

struct CrossCheckReport {
    std::size_t max_n = 0;
    std::vector<CrossCheckEntry> entries;
    /// The convolution of mu with the path counts is Id up to max_n.
    bool inversion = false;
    bool pass = false;
    std::vector<CrossCheckEntry> mismatches() const;
};

/// Oracle counts vs ADSC path counts vs coefficients of the series inverse of mu, for every
/// n <= max_n and every state pair. Throws CapExceeded.
CrossCheckReport cross_check(const ConcurrentSystem& sys, std::size_t max_n, std::size_t cap = kDefaultOracleCap);

}  // namespace uniconc
