#include "uniconc/oracle.hpp"

#include "uniconc/error.hpp"
#include "uniconc/graphs.hpp"
#include "uniconc/spectral.hpp"

namespace uniconc {

namespace {

// Depth-first over words, pruning as soon as the sink is hit.
void extend(const ConcurrentSystem& sys, StateId s, Word& word, std::size_t n, std::map<NormalForm, StateId>& out) {
    if (word.size() == n) {
        out.emplace(normal_form(sys.monoid(), word), s);
        return;
    }
    for (std::size_t a = 0; a < sys.letter_count(); ++a) {
        const StateId t = sys.step(s, static_cast<Letter>(a));
        if (t == kSink) continue;
        word.push_back(static_cast<Letter>(a));
        extend(sys, t, word, n, out);
        word.pop_back();
    }
}

}  // namespace

ExecutionSet enumerate_executions(const ConcurrentSystem& sys, StateId origin, std::size_t n, std::size_t cap,
                                  bool serial) {
    if (n > cap)
        throw Error(ErrorKind::CapExceeded,
                    "length " + std::to_string(n) + " exceeds the oracle cap " + std::to_string(cap));
    if (origin < 0 || static_cast<std::size_t>(origin) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(origin));
    ExecutionSet out;
    out.origin = origin;
    out.length = n;

    // Seeds of the search: all live prefixes of length min(n, 2).
    const std::size_t depth = n < 2 ? n : 2;
    std::vector<std::pair<Word, StateId>> prefixes{{Word{}, origin}};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::pair<Word, StateId>> next;
        for (const auto& [w, s] : prefixes)
            for (std::size_t a = 0; a < sys.letter_count(); ++a) {
                const StateId t = sys.step(s, static_cast<Letter>(a));
                if (t == kSink) continue;
                Word longer = w;
                longer.push_back(static_cast<Letter>(a));
                next.emplace_back(std::move(longer), t);
            }
        prefixes = std::move(next);
    }

    if (serial) {
        for (auto [w, s] : prefixes) extend(sys, s, w, n, out.traces);
    } else {
        const auto count = static_cast<std::ptrdiff_t>(prefixes.size());
        std::vector<std::map<NormalForm, StateId>> partial(prefixes.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            Word w = prefixes[i].first;
            extend(sys, prefixes[i].second, w, n, partial[i]);
        }
        // Merge in prefix order so the result never depends on scheduling.
        for (auto& part : partial) out.traces.merge(part);
    }
    out.by_target.assign(sys.state_count(), 0);
    for (const auto& [nf, target] : out.traces) ++out.by_target[target];
    return out;
}

std::vector<CrossCheckEntry> CrossCheckReport::mismatches() const {
    std::vector<CrossCheckEntry> out;
    for (const auto& e : entries)
        if (e.oracle != e.paths || e.oracle != e.series) out.push_back(e);
    return out;
}

CrossCheckReport cross_check(const ConcurrentSystem& sys, std::size_t max_n, std::size_t cap) {
    if (max_n > cap)
        throw Error(ErrorKind::CapExceeded,
                    "length " + std::to_string(max_n) + " exceeds the oracle cap " + std::to_string(cap));
    CrossCheckReport report;
    report.max_n = max_n;
    const InversionReport inversion = verify_inversion(sys, max_n);
    report.inversion = inversion.pass;
    const auto series = series_inverse(mobius_matrix(sys), max_n);
    const std::size_t k = sys.state_count();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t n = 0; n <= max_n; ++n) {
            const ExecutionSet set = enumerate_executions(sys, static_cast<StateId>(a), n, cap);
            for (std::size_t b = 0; b < k; ++b)
                report.entries.push_back(CrossCheckEntry{n, static_cast<StateId>(a), static_cast<StateId>(b),
                                                         BigInt(set.by_target[b]), inversion.counts[n][a][b],
                                                         series[n][a][b]});
        }
    report.pass = report.inversion && report.mismatches().empty();
    return report;
}

}  // namespace uniconc
