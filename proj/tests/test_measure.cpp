#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "uniconc/fixtures.hpp"
#include "uniconc/measure.hpp"

using namespace uniconc;

namespace {

std::vector<ConcurrentSystem> irreducible_fixtures() {
    return {fixtures::e1(), fixtures::tm1(), fixtures::aztec(), fixtures::twelve()};
}

Clique clique(const TraceMonoid& m, std::string_view letters) {
    Clique c;
    for (const Letter a : m.parse_word(letters)) c = c.with(a);
    return c;
}

std::size_t node(const ConcurrentSystem& sys, const UniformMeasure& m, std::string_view state, std::string_view letters) {
    return *m.dsc.find(sys.state(state), clique(sys.monoid(), letters));
}

}  // namespace

TEST_CASE("E1 cocycle and tables") {
    const ConcurrentSystem sys = fixtures::e1();
    const UniformMeasure m = build_uniform_measure(sys);
    CHECK(m.cocycle.kernel_dimension == 1);
    for (StateId a = 0; a < 2; ++a)
        for (StateId b = 0; b < 2; ++b) CHECK(std::abs(m.gamma(a, b) - 1) <= 1e-9);

    const TraceMonoid& mo = sys.monoid();
    CHECK(m.f_at(sys, 0, clique(mo, "a")) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.f_at(sys, 0, clique(mo, "ad")) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.f_at(sys, 1, clique(mo, "a")) == 0);
    CHECK(m.f_at(sys, 1, Clique{}) == 1);

    auto h = [&](StateId s, std::string_view c) { return m.h_at(sys, s, clique(mo, c)); };
    CHECK(std::abs(h(0, "a") - 0.25) <= 1e-9);
    CHECK(std::abs(h(0, "b") - 0.25) <= 1e-9);
    CHECK(std::abs(h(0, "d")) <= 1e-9);
    CHECK(std::abs(h(0, "ad") - 0.25) <= 1e-9);
    CHECK(std::abs(h(0, "bd") - 0.25) <= 1e-9);
    CHECK(std::abs(h(1, "c") - 0.5) <= 1e-9);
    CHECK(std::abs(h(1, "d") - 0.5) <= 1e-9);

    CHECK(std::abs(m.g[node(sys, m, "alpha0", "a")] - 0.5) <= 1e-9);
    CHECK(std::abs(m.g[node(sys, m, "alpha0", "d")]) <= 1e-9);
}

TEST_CASE("E1 chain") {
    const ConcurrentSystem sys = fixtures::e1();
    const UniformMeasure m = build_uniform_measure(sys);
    const std::vector<std::pair<const char*, const char*>> order{
        {"alpha0", "a"}, {"alpha0", "b"}, {"alpha0", "ad"}, {"alpha0", "bd"}, {"alpha1", "c"}, {"alpha1", "d"}};
    const std::vector<std::vector<double>> expected{{.5, .5, 0, 0, 0, 0},     {0, 0, 0, 0, 1, 0},
                                                    {.25, .25, .25, .25, 0, 0}, {0, 0, 0, 0, .5, .5},
                                                    {.25, .25, .25, .25, 0, 0}, {0, 0, 0, 0, .5, .5}};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j) {
            const std::size_t u = node(sys, m, order[i].first, order[i].second);
            const std::size_t v = node(sys, m, order[j].first, order[j].second);
            CHECK(std::abs(m.chain.transition[u][v] - expected[i][j]) <= 1e-9);
        }
    const std::size_t null = node(sys, m, "alpha0", "d");
    CHECK(m.chain.unreachable[null]);
    std::size_t flagged = 0;
    for (const bool b : m.chain.unreachable) flagged += b;
    CHECK(flagged == 1);
}

TEST_CASE("single letter chain is [1]") {
    const ConcurrentSystem sys = ConcurrentSystem::canonical(TraceMonoid::free({"a"}));
    const UniformMeasure m = build_uniform_measure(sys);
    REQUIRE(m.chain.transition.size() == 1);
    CHECK(std::abs(m.chain.transition[0][0] - 1) <= 1e-12);
    CHECK(std::abs(m.chain.initial[0][0] - 1) <= 1e-12);
}

TEST_CASE("Aztec cocycle and first-clique law") {
    const ConcurrentSystem sys = fixtures::aztec();
    const UniformMeasure m = build_uniform_measure(sys);
    const double r = m.r;
    CHECK(std::abs(m.gamma(sys.state("0"), sys.state("1")) - 1 / r) <= 1e-6);
    CHECK(std::abs(m.gamma(sys.state("3"), sys.state("0")) - r * r) <= 1e-6);
    CHECK(std::abs(m.gamma(sys.state("1"), sys.state("2")) - 1) <= 1e-6);

    const TraceMonoid& mo = sys.monoid();
    const StateId one = sys.state("1");
    CHECK(std::abs(m.h_at(sys, one, clique(mo, "a"))) <= 1e-9);
    CHECK(std::abs(m.h_at(sys, one, clique(mo, "b")) - (1 - r * r)) <= 1e-9);
    CHECK(std::abs(m.h_at(sys, one, clique(mo, "ab")) - r * r) <= 1e-9);
    CHECK(std::abs(m.h_at(sys, one, clique(mo, "b")) - 0.725) < 1e-3);
}

TEST_CASE("canonical system has trivial cocycle and positive h") {
    const ConcurrentSystem sys = fixtures::tm1();
    const UniformMeasure m = build_uniform_measure(sys);
    CHECK(m.cocycle.u == std::vector<double>{1.0});
    for (const Clique c : enabled_cliques(sys, 0)) CHECK(m.h_at(sys, 0, c) > kNullThreshold);
}

TEST_CASE("measure invariants on every fixture") {
    for (const ConcurrentSystem& sys : irreducible_fixtures()) {
        const UniformMeasure m = build_uniform_measure(sys);
        const MeasureInvariants inv = check_invariants(sys, m);
        CHECK(inv.pass);
        CHECK(inv.cocycle_gap <= 1e-9);
        CHECK(inv.h_empty_gap <= 1e-9);
        CHECK(inv.h_min >= -1e-9);
        CHECK(inv.h_sum_gap <= 1e-9);
        CHECK(inv.product_gap <= 1e-9);
        CHECK(inv.row_sum_gap <= 1e-9);
        CHECK(m.cocycle.cross_check_gap <= 1e-3);
        for (std::size_t s = 0; s < sys.state_count(); ++s) CHECK(m.gamma(static_cast<StateId>(s), static_cast<StateId>(s)) == 1);
    }
}

TEST_CASE("chain condition on random executions") {
    std::mt19937 gen(17);
    for (const ConcurrentSystem& sys : irreducible_fixtures()) {
        const UniformMeasure m = build_uniform_measure(sys);
        auto f = [&](StateId a, const Word& x) {
            const StateId b = sys.act(a, x);
            return b == kSink ? 0.0 : std::pow(m.r, static_cast<double>(x.size())) * m.gamma(a, b);
        };
        for (int round = 0; round < 200; ++round) {
            const auto a = static_cast<StateId>(gen() % sys.state_count());
            Word x, y;
            for (std::size_t i = 0, n = gen() % 5; i < n; ++i) x.push_back(static_cast<Letter>(gen() % sys.letter_count()));
            for (std::size_t i = 0, n = gen() % 5; i < n; ++i) y.push_back(static_cast<Letter>(gen() % sys.letter_count()));
            const StateId mid = sys.act(a, x);
            if (mid == kSink || sys.act(mid, y) == kSink) continue;
            Word xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            CHECK(std::abs(f(a, xy) - f(a, x) * f(mid, y)) <= 1e-12);
        }
    }
}

TEST_CASE("numeric null check agrees with the graph classifier") {
    for (const ConcurrentSystem& sys : irreducible_fixtures()) {
        const UniformMeasure m = build_uniform_measure(sys);
        CHECK(numeric_null_check(sys, m.dsc, m.positive, m.h).agree());
    }
    const ConcurrentSystem az = fixtures::aztec();
    const UniformMeasure m = build_uniform_measure(az);
    std::size_t nulls = 0;
    for (const bool p : m.positive) nulls += !p;
    CHECK(m.dsc.size() == 26);
    CHECK(nulls == 8);

    // A deliberately wrong labelling is caught.
    std::vector<bool> wrong = m.positive;
    wrong.flip();
    CHECK_FALSE(numeric_null_check(az, m.dsc, wrong, m.h, false).agree());
    CHECK(error_kind([&] { numeric_null_check(az, m.dsc, wrong, m.h); }) == ErrorKind::ClassificationMismatch);
}

TEST_CASE("uniqueness diagnostics") {
    for (const ConcurrentSystem& sys : irreducible_fixtures()) {
        const UniformMeasure m = build_uniform_measure(sys);
        const UniquenessReport rep = uniqueness_diagnostics(sys, m);
        CHECK(rep.pass);
        CHECK(rep.kernel_dimension == 1);
        CHECK(rep.eigen_residual <= kEigenTolerance);
        CHECK(rep.basic_is_terminal);
        CHECK(rep.strict_reach_agrees);
    }
    const ConcurrentSystem e1 = fixtures::e1();
    CHECK(uniqueness_diagnostics(e1, build_uniform_measure(e1)).eigen_residual < 1e-9);

    const ConcurrentSystem az = fixtures::aztec();
    const UniquenessReport a = uniqueness_diagnostics(az, build_uniform_measure(az));
    CHECK(a.terminal_components == 1);
    CHECK(a.basic_components == 1);

    const ConcurrentSystem tw = fixtures::twelve();
    const UniquenessReport t = uniqueness_diagnostics(tw, build_uniform_measure(tw));
    CHECK(t.terminal_components == 2);
    CHECK(t.basic_components == 2);
}

TEST_CASE("two disconnected loops give a two-dimensional kernel") {
    const ConcurrentSystem sys =
        ConcurrentSystem::create(TraceMonoid::free({"a"}), {"x", "y"}, {{"x", "a", "x"}, {"y", "a", "y"}});
    CHECK(error_kind([&] { build_uniform_measure(sys); }) == ErrorKind::NotAccessible);
    CharacteristicRoot r = smallest_root(determinant(mobius_matrix(sys)));
    CHECK(r.lo == 1);
    CHECK(error_kind([&] { parry_cocycle(sys, r); }) == ErrorKind::KernelDimensionNotOne);
}
