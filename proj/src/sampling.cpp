#include "uniconc/sampling.hpp"

#include <cmath>
#include <limits>

#include "uniconc/error.hpp"

namespace uniconc {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ (stream_id * 0xD1B54A32D192ED03ULL + 1)));
}

std::uint64_t Rng::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

BigInt Rng::below(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("Rng::below needs a positive bound");
    const std::size_t bits = boost::multiprecision::msb(n) + 1;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t spare = words * 64 - bits;
    for (;;) {
        BigInt x = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t chunk = next();
            if (w == 0 && spare > 0) chunk >>= spare;
            x = (x << 64) | BigInt(chunk);
        }
        if (x < n) return x;
    }
}

SampledExecution sample_mcsc(const ConcurrentSystem& sys, const UniformMeasure& m, StateId start, std::size_t steps,
                             std::uint64_t seed) {
    if (start < 0 || static_cast<std::size_t>(start) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(start));
    SampledExecution out;
    out.start = start;
    out.seed = seed;
    Rng rng = Rng::stream(seed, 0);

    // Inverse CDF over candidates in DSC order; falls back to the last positive weight on rounding.
    auto draw = [&rng](const std::vector<std::size_t>& ids, auto weight) -> std::optional<std::size_t> {
        const double u = rng.uniform();
        double acc = 0;
        std::optional<std::size_t> last;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const double w = weight(k);
            if (w <= 0) continue;
            acc += w;
            last = ids[k];
            if (u < acc) return ids[k];
        }
        return last;
    };

    const auto& ids = m.chain.nodes_of_state[start];
    auto node = draw(ids, [&](std::size_t k) { return m.chain.initial[start][k]; });
    for (std::size_t step = 0; step < steps && node; ++step) {
        out.nodes.push_back(*node);
        const Word letters = m.dsc.nodes[*node].clique.letters();
        out.trace.insert(out.trace.end(), letters.begin(), letters.end());
        if (step + 1 == steps || m.chain.unreachable[*node]) break;
        const auto& succ = m.dsc.graph.succ[*node];
        const auto& row = m.chain.transition[*node];
        node = draw(succ, [&](std::size_t k) { return row[succ[k]]; });
    }
    return out;
}

UniformSampler::UniformSampler(const ConcurrentSystem& sys, StateId start, std::size_t n)
    : adsc_(build_adsc(sys)), start_(start), n_(n) {
    if (start < 0 || static_cast<std::size_t>(start) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(start));
    for (std::size_t v = 0; v < adsc_.size(); ++v)
        if (adsc_.nodes[v].state == start && adsc_.nodes[v].index == 1) starts_.push_back(v);
    if (n == 0) {
        total_ = 1;
        return;
    }
    const std::size_t m = adsc_.size();
    weights_.assign(n, std::vector<BigInt>(m));
    for (std::size_t v = 0; v < m; ++v)
        if (adsc_.nodes[v].index == adsc_.nodes[v].clique.size()) weights_[0][v] = 1;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t v = 0; v < m; ++v)
            for (const std::size_t w : adsc_.graph.succ[v]) weights_[k][v] += weights_[k - 1][w];
    total_ = 0;
    for (const std::size_t v : starts_) total_ += weights_[n - 1][v];
    if (total_ == 0)
        throw Error(ErrorKind::EmptySet,
                    "no execution of length " + std::to_string(n) + " from " + sys.state_name(start));
}

std::vector<std::size_t> UniformSampler::sample_path(Rng& rng) const {
    std::vector<std::size_t> path;
    if (n_ == 0) return path;
    // Pick among candidates with probability proportional to their exact weight.
    auto pick = [&rng](const std::vector<std::size_t>& ids, const std::vector<BigInt>& w, const BigInt& sum) {
        BigInt x = rng.below(sum);
        for (const std::size_t v : ids) {
            if (x < w[v]) return v;
            x -= w[v];
        }
        throw Error(ErrorKind::EmptySet, "inconsistent path weights");
    };
    std::size_t v = pick(starts_, weights_[n_ - 1], total_);
    path.push_back(v);
    for (std::size_t k = n_ - 1; k > 0; --k) {
        const auto& succ = adsc_.graph.succ[v];
        BigInt sum = 0;
        for (const std::size_t w : succ) sum += weights_[k - 1][w];
        v = pick(succ, weights_[k - 1], sum);
        path.push_back(v);
    }
    return path;
}

Word UniformSampler::sample(Rng& rng) const {
    Word out;
    for (const std::size_t v : sample_path(rng)) {
        const SCNode& x = adsc_.nodes[v];
        out.push_back(x.clique.letters()[static_cast<std::size_t>(x.index - 1)]);
    }
    return out;
}

std::vector<std::pair<Clique, Rational>> UniformSampler::first_clique_law() const {
    std::vector<std::pair<Clique, Rational>> out;
    for (const std::size_t v : starts_) {
        const Rational p = n_ == 0 ? Rational(0) : Rational(weights_[n_ - 1][v], total_);
        out.emplace_back(adsc_.nodes[v].clique, p);
    }
    return out;
}

Word sample_uniform_finite(const ConcurrentSystem& sys, StateId start, std::size_t n, std::uint64_t seed) {
    const UniformSampler sampler(sys, start, n);
    Rng rng = Rng::stream(seed, 0);
    return sampler.sample(rng);
}

std::vector<std::size_t> tally_first_cliques(const UniformSampler& sampler, std::size_t samples, std::uint64_t seed,
                                             bool serial) {
    const auto law = sampler.first_clique_law();
    const std::size_t k = law.size();
    std::vector<std::size_t> counts(k, 0);
    if (sampler.length() == 0 || k == 0) return counts;
    // ADSC start node -> position in the law.
    std::vector<std::size_t> slot(sampler.adsc().size(), k);
    for (std::size_t j = 0; j < k; ++j) slot[sampler.start_nodes()[j]] = j;
    auto first = [&](std::size_t i) {
        Rng rng = Rng::stream(seed, i);
        return slot[sampler.sample_path(rng).front()];
    };
    if (serial) {
        for (std::size_t i = 0; i < samples; ++i) ++counts[first(i)];
        return counts;
    }
    const auto total = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel
    {
        std::vector<std::size_t> local(k, 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < total; ++i) ++local[first(static_cast<std::size_t>(i))];
#pragma omp critical
        for (std::size_t j = 0; j < k; ++j) counts[j] += local[j];
    }
    return counts;
}

FirstCliqueReport empirical_first_clique(const ConcurrentSystem& sys, const UniformMeasure& m, StateId start,
                                         std::size_t n, std::size_t samples, std::uint64_t seed, bool serial) {
    const UniformSampler sampler(sys, start, n);
    FirstCliqueReport out;
    out.samples = samples;
    out.counts = tally_first_cliques(sampler, samples, seed, serial);
    for (const auto& [clique, p] : sampler.first_clique_law()) out.cliques.push_back(clique);
    for (std::size_t j = 0; j < out.cliques.size(); ++j) {
        const double freq = samples ? static_cast<double>(out.counts[j]) / static_cast<double>(samples) : 0.0;
        const double h = m.h_at(sys, start, out.cliques[j]);
        const double expected = h > kNullThreshold ? h : 0.0;
        out.frequency.push_back(freq);
        out.expected.push_back(expected);
        const double sd = std::sqrt(expected * (1 - expected) / static_cast<double>(samples ? samples : 1));
        out.z_score.push_back(sd > 0 ? (freq - expected) / sd
                                     : (freq == expected ? 0.0 : std::numeric_limits<double>::infinity()));
        out.total_variation += 0.5 * std::abs(freq - expected);
    }
    return out;
}

}  // namespace uniconc
