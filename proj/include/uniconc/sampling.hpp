#pragma once

#include <cstdint>
#include <vector>

#include "uniconc/graphs.hpp"
#include "uniconc/measure.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

/// SplitMix64. Independent streams come from hashing (seed, stream id), so sharded runs
/// give the same numbers whatever the thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next();
    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform in [0, n) by rejection; n > 0.
    BigInt below(const BigInt& n);

private:
    std::uint64_t state_;
};

struct SampledExecution {
    StateId start = 0;
    /// DSC node ids, one per clique.
    std::vector<std::size_t> nodes;
    Word trace;
    std::uint64_t seed = 0;
};

/// First node from the initial law at `start`, then steps-1 moves of the chain.
SampledExecution sample_mcsc(const ConcurrentSystem& sys, const UniformMeasure& m, StateId start, std::size_t steps,
                             std::uint64_t seed);

/// Exact uniform sampler over the executions of length n from one state. Path weights
/// W_k(v), the number of k-node ADSC paths from v to a chain end, are exact integers.
class UniformSampler {
public:
    /// Throws EmptySet when there is no execution of length n (n >= 1).
    UniformSampler(const ConcurrentSystem& sys, StateId start, std::size_t n);

    const BigInt& total() const { return total_; }
    std::size_t length() const { return n_; }

    /// ADSC node ids of one uniform path.
    std::vector<std::size_t> sample_path(Rng& rng) const;
    Word sample(Rng& rng) const;

    /// Exact probability of each first clique, over the cliques enabled at start (canonical order).
    std::vector<std::pair<Clique, Rational>> first_clique_law() const;

    const StateCliqueGraph& adsc() const { return adsc_; }
    /// The (start,c,1) nodes, in the order of first_clique_law().
    const std::vector<std::size_t>& start_nodes() const { return starts_; }

private:
    StateCliqueGraph adsc_;
    StateId start_;
    std::size_t n_;
    // weights_[k][v] = W_{k+1}(v)
    std::vector<std::vector<BigInt>> weights_;
    std::vector<std::size_t> starts_;
    BigInt total_;
};

/// One uniform execution of length n. Stream 0 of `seed`.
Word sample_uniform_finite(const ConcurrentSystem& sys, StateId start, std::size_t n, std::uint64_t seed);

struct FirstCliqueReport {
    std::vector<Clique> cliques;
    std::vector<std::size_t> counts;
    std::vector<double> frequency;
    std::vector<double> expected;
    std::vector<double> z_score;
    double total_variation = 0;
    std::size_t samples = 0;
};

/// Sample i uses stream i of `seed`; the tally runs under OpenMP unless `serial`.
std::vector<std::size_t> tally_first_cliques(const UniformSampler& sampler, std::size_t samples, std::uint64_t seed,
                                             bool serial = false);

/// Empirical first-clique law of uniform length-n executions against h at `start`.
FirstCliqueReport empirical_first_clique(const ConcurrentSystem& sys, const UniformMeasure& m, StateId start,
                                         std::size_t n, std::size_t samples, std::uint64_t seed, bool serial = false);

}  // namespace uniconc
