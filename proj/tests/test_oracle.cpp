#include <set>

#include "doctest.h"
#include "support.hpp"
#include "uniconc/fixtures.hpp"
#include "uniconc/oracle.hpp"

using namespace uniconc;

TEST_CASE("E1 executions of length two") {
    const ConcurrentSystem sys = fixtures::e1();
    const TraceMonoid& m = sys.monoid();
    const ExecutionSet set = enumerate_executions(sys, 0, 2);
    std::set<std::string> to_alpha0, all;
    for (const auto& [nf, target] : set.traces) {
        const std::string w = m.format_word(flatten(nf));
        all.insert(w);
        if (target == 0) to_alpha0.insert(w);
    }
    CHECK(to_alpha0 == std::set<std::string>{"aa", "ad", "dd", "bc"});
    CHECK(all.size() == 6);
    CHECK(set.by_target == std::vector<std::size_t>{4, 2});
}

TEST_CASE("trivial lengths") {
    const ConcurrentSystem sys = fixtures::aztec();
    for (std::size_t s = 0; s < sys.state_count(); ++s) {
        const ExecutionSet e = enumerate_executions(sys, static_cast<StateId>(s), 0);
        CHECK(e.size() == 1);
        CHECK(e.traces.begin()->first.height() == 0);
    }
    const ConcurrentSystem stuck = ConcurrentSystem::create(TraceMonoid::free({"a"}), {"x", "y"}, {{"x", "a", "y"}});
    CHECK(enumerate_executions(stuck, 1, 1).size() == 0);
}

TEST_CASE("execution set invariants") {
    const ConcurrentSystem sys = fixtures::twelve();
    const ExecutionSet e = enumerate_executions(sys, 3, 6);
    std::size_t sum = 0;
    for (const std::size_t k : e.by_target) sum += k;
    CHECK(sum == e.size());
    for (const auto& [nf, target] : e.traces) {
        CHECK(nf.length() == 6);
        CHECK(sys.act(3, flatten(nf)) == target);
    }
}

TEST_CASE("cap") {
    CHECK(error_kind([] { enumerate_executions(fixtures::e1(), 0, 9); }) == ErrorKind::CapExceeded);
    CHECK(error_kind([] { cross_check(fixtures::e1(), 9); }) == ErrorKind::CapExceeded);
    CHECK(enumerate_executions(fixtures::tm1(), 0, 9, 9).size() == 6765);
}

TEST_CASE("serial and parallel enumeration agree") {
    const ConcurrentSystem sys = fixtures::aztec();
    const ExecutionSet a = enumerate_executions(sys, 0, 6);
    const ExecutionSet b = enumerate_executions(sys, 0, 6, kDefaultOracleCap, true);
    CHECK(a.traces == b.traces);
    CHECK(a.by_target == b.by_target);
}

TEST_CASE("oracle matches path counts and the series") {
    CHECK(cross_check(fixtures::e1(), 8).pass);
    CHECK(cross_check(fixtures::tm1(), 8).pass);
    CHECK(cross_check(fixtures::aztec(), 6).pass);
    CHECK(cross_check(fixtures::twelve(), 8).pass);

    const CrossCheckReport rep = cross_check(fixtures::tm1(), 8);
    const std::vector<int> fib{1, 3, 8, 21, 55, 144, 377, 987, 2584};
    for (const CrossCheckEntry& e : rep.entries) {
        CHECK(e.oracle == fib[e.n]);
        CHECK(e.series == fib[e.n]);
    }
    CHECK(rep.mismatches().empty());
    CHECK(rep.inversion);
}

TEST_CASE("executions split at every length") {
    const ConcurrentSystem sys = fixtures::e1();
    const TraceMonoid& m = sys.monoid();
    const std::size_t p = 2, q = 3;
    std::set<NormalForm> glued;
    for (StateId a = 0; a < 2; ++a) {
        glued.clear();
        for (const auto& [x, mid] : enumerate_executions(sys, a, p).traces)
            for (const auto& [y, end] : enumerate_executions(sys, mid, q).traces) {
                Word w = flatten(x);
                const Word tail = flatten(y);
                w.insert(w.end(), tail.begin(), tail.end());
                glued.insert(normal_form(m, w));
            }
        std::set<NormalForm> direct;
        for (const auto& [nf, target] : enumerate_executions(sys, a, p + q).traces) direct.insert(nf);
        CHECK(glued == direct);
    }
}
