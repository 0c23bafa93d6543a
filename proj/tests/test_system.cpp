#include <random>

#include "doctest.h"
#include "support.hpp"
#include "uniconc/fixtures.hpp"
#include "uniconc/system.hpp"

using namespace uniconc;

namespace {

std::vector<ActionEntry> e1_action() {
    return {{"alpha0", "a", "alpha0"}, {"alpha0", "b", "alpha1"}, {"alpha0", "d", "alpha0"},
            {"alpha1", "c", "alpha0"}, {"alpha1", "d", "alpha1"}};
}

TraceMonoid e1_monoid() { return TraceMonoid::create({"a", "b", "c", "d"}, {{"a", "d"}, {"b", "d"}}); }

ConcurrentSystem e1_without(const std::string& state, const std::string& letter) {
    std::vector<ActionEntry> action;
    for (const auto& e : e1_action())
        if (e.from != state || e.letter != letter) action.push_back(e);
    return ConcurrentSystem::create(e1_monoid(), {"alpha0", "alpha1"}, action);
}

std::vector<std::string> names(const TraceMonoid& m, const std::vector<Clique>& cs) {
    std::vector<std::string> out;
    for (const Clique c : cs) out.push_back(m.format_clique(c));
    return out;
}

}  // namespace

TEST_CASE("E1 builds and matches the fixture") {
    const ConcurrentSystem sys = ConcurrentSystem::create(e1_monoid(), {"alpha0", "alpha1"}, e1_action());
    CHECK(sys == fixtures::e1());
    CHECK(sys.base_state() == 0);
}

TEST_CASE("diamond violation names the triple") {
    // With alpha0.d = alpha1, alpha0.ad = alpha1 while alpha0.da = alpha1.a is the sink.
    std::vector<ActionEntry> action = e1_action();
    action[2].to = "alpha1";
    try {
        ConcurrentSystem::create(e1_monoid(), {"alpha0", "alpha1"}, action);
        FAIL("accepted a broken diamond");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DiamondViolation);
        CHECK(std::string(e.what()).find("(alpha0,a,d)") != std::string::npos);
    }
}

TEST_CASE("validation errors") {
    const TraceMonoid m = e1_monoid();
    CHECK(error_kind([&] { ConcurrentSystem::create(m, {}, {}); }) == ErrorKind::EmptyStateSet);
    CHECK(error_kind([&] { ConcurrentSystem::create(m, {"x", "x"}, {}); }) == ErrorKind::DuplicateState);
    CHECK(error_kind([&] { ConcurrentSystem::create(m, {"x"}, {{"y", "a", "x"}}); }) == ErrorKind::UnknownState);
    CHECK(error_kind([&] { ConcurrentSystem::create(m, {"x"}, {{"x", "q", "x"}}); }) == ErrorKind::UnknownLetter);
    CHECK(error_kind([&] { ConcurrentSystem::create(m, {"BOT"}, {}); }).has_value());
    CHECK(error_kind([&] { fixtures::e1().state("gamma"); }) == ErrorKind::UnknownState);
}

TEST_CASE("Aztec action from state 0") {
    const ConcurrentSystem sys = fixtures::aztec();
    const TraceMonoid& m = sys.monoid();
    CHECK(sys.step(sys.state("0"), m.letter("a")) == sys.state("1"));
    CHECK(sys.step(sys.state("0"), m.letter("b")) == sys.state("2"));
    CHECK(sys.step(sys.state("0"), m.letter("c")) == kSink);
}

TEST_CASE("act folds the action") {
    const ConcurrentSystem sys = fixtures::e1();
    const TraceMonoid& m = sys.monoid();
    CHECK(sys.act(0, m.parse_word("bcd")) == 0);
    CHECK(sys.act(1, Word{}) == 1);
    CHECK(sys.act(0, m.parse_word("c")) == kSink);
    CHECK(sys.act(0, m.parse_word("cab")) == kSink);
}

TEST_CASE("act is independent of the representative") {
    std::mt19937 gen(3);
    for (const ConcurrentSystem& sys : {fixtures::e1(), fixtures::aztec(), fixtures::twelve()}) {
        const TraceMonoid& m = sys.monoid();
        for (int round = 0; round < 300; ++round) {
            Word w(gen() % 10);
            for (auto& x : w) x = static_cast<Letter>(gen() % m.size());
            for (std::size_t s = 0; s < sys.state_count(); ++s) {
                const auto from = static_cast<StateId>(s);
                const StateId target = sys.act(from, w);
                for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                    if (!m.independent(w[i], w[i + 1])) continue;
                    Word v = w;
                    std::swap(v[i], v[i + 1]);
                    CHECK(sys.act(from, v) == target);
                }
                if (target == kSink) {
                    Word longer = w;
                    longer.push_back(0);
                    CHECK(sys.act(from, longer) == kSink);
                }
            }
        }
    }
}

TEST_CASE("enabled cliques") {
    const ConcurrentSystem sys = fixtures::e1();
    const TraceMonoid& m = sys.monoid();
    CHECK(names(m, enabled_cliques(sys, 0)) == std::vector<std::string>{"a", "b", "d", "ad", "bd"});
    CHECK(names(m, enabled_cliques(sys, 1)) == std::vector<std::string>{"c", "d"});
    const ConcurrentSystem tm1 = fixtures::tm1();
    CHECK(names(tm1.monoid(), enabled_cliques(tm1, 0)) == std::vector<std::string>{"a", "b", "c", "ab"});
}

TEST_CASE("classification") {
    for (const ConcurrentSystem& sys : {fixtures::e1(), fixtures::tm1(), fixtures::aztec(), fixtures::twelve()}) {
        const SystemClassification cls = classify_system(sys);
        CHECK(cls.accessible);
        CHECK(cls.alive);
        CHECK(cls.irreducible);
        CHECK_FALSE(cls.trivial);
    }
    const SystemClassification pair = classify_system(fixtures::commuting_pair());
    CHECK_FALSE(pair.monoid_irreducible);
    CHECK_FALSE(pair.irreducible);
    CHECK(pair.monoid_components.size() == 2);
}

TEST_CASE("removing alpha1.c breaks accessibility") {
    const SystemClassification cls = classify_system(e1_without("alpha1", "c"));
    CHECK_FALSE(cls.accessible);
    REQUIRE(cls.unreachable.has_value());
    CHECK(cls.unreachable->first == 1);
    CHECK(cls.unreachable->second == 0);
    CHECK_FALSE(cls.irreducible);
}

TEST_CASE("removing alpha0.a kills letter a") {
    const SystemClassification cls = classify_system(e1_without("alpha0", "a"));
    CHECK(cls.accessible);
    CHECK_FALSE(cls.alive);
    REQUIRE(cls.dead.has_value());
    CHECK(cls.dead->second == 0);
}

TEST_CASE("trivial system") {
    const ConcurrentSystem sys = ConcurrentSystem::create(e1_monoid(), {"x"}, {});
    const SystemClassification cls = classify_system(sys);
    CHECK(cls.trivial);
    CHECK_FALSE(cls.alive);
}

TEST_CASE("restriction") {
    const ConcurrentSystem e1 = fixtures::e1();
    const ConcurrentSystem r = restrict(e1, e1.monoid().letter("c"));
    CHECK(r.monoid().alphabet() == std::vector<std::string>{"a", "b", "d"});
    CHECK(names(r.monoid(), enabled_cliques(r, 1)) == std::vector<std::string>{"d"});

    const ConcurrentSystem az = fixtures::aztec();
    const ConcurrentSystem halves = restrict(az, az.monoid().letter("c"));
    const auto reach = state_reachability(halves);
    CHECK_FALSE(reach[halves.state("0")][halves.state("0'")]);
    CHECK_FALSE(reach[halves.state("0'")][halves.state("0")]);
    CHECK(reach[halves.state("0")][halves.state("3")]);
    CHECK_FALSE(classify_system(halves).accessible);
}

TEST_CASE("restriction never enables new executions") {
    std::mt19937 gen(8);
    const ConcurrentSystem az = fixtures::aztec();
    for (Letter a = 0; a < az.letter_count(); ++a) {
        const ConcurrentSystem r = restrict(az, a);
        for (int round = 0; round < 200; ++round) {
            Word w(gen() % 8);
            for (auto& x : w) x = static_cast<Letter>(gen() % r.letter_count());
            Word lifted;
            for (const Letter x : w) lifted.push_back(az.monoid().letter(r.monoid().name(x)));
            for (std::size_t s = 0; s < az.state_count(); ++s)
                if (r.act(static_cast<StateId>(s), w) != kSink)
                    CHECK(az.act(static_cast<StateId>(s), lifted) == r.act(static_cast<StateId>(s), w));
        }
    }
}

TEST_CASE("restriction by a letter enabled nowhere keeps the executions") {
    const TraceMonoid m = TraceMonoid::create({"a", "b", "z"}, {});
    const ConcurrentSystem sys = ConcurrentSystem::create(m, {"p", "q"}, {{"p", "a", "q"}, {"q", "b", "p"}});
    const ConcurrentSystem r = restrict(sys, m.letter("z"));
    CHECK(enabled_cliques(r, 0).size() == enabled_cliques(sys, 0).size());
    CHECK(enabled_cliques(r, 1).size() == enabled_cliques(sys, 1).size());
}

TEST_CASE("linking executions on E1") {
    const ConcurrentSystem sys = fixtures::e1();
    const TraceMonoid& m = sys.monoid();
    const LinkingExecution abcd{m.parse_word("abcd"), {0, 1, 2, 3}};
    CHECK(is_linking_execution(sys, 0, abcd, m.letter("a")));
    CHECK_FALSE(is_linking_execution(sys, 0, abcd, m.letter("b")));
    CHECK_FALSE(is_linking_execution(sys, 1, abcd, std::nullopt));

    for (StateId s = 0; s < 2; ++s)
        for (Letter a = 0; a < m.size(); ++a) {
            const auto x = find_linking_execution(sys, s, a);
            REQUIRE(x.has_value());
            CHECK(is_linking_execution(sys, s, *x, a));
        }
}

TEST_CASE("linking executions exist exactly for irreducible fixtures") {
    for (const ConcurrentSystem& sys : {fixtures::aztec(), fixtures::twelve(), fixtures::tm1()})
        for (std::size_t s = 0; s < sys.state_count(); ++s)
            for (Letter a = 0; a < sys.letter_count(); ++a)
                CHECK(find_linking_execution(sys, static_cast<StateId>(s), a).has_value());

    const ConcurrentSystem pair = fixtures::commuting_pair();
    CHECK_FALSE(find_linking_execution(pair, 0, 0).has_value());
}

TEST_CASE("a dead letter leaves some state without a linking execution") {
    const ConcurrentSystem sys = e1_without("alpha0", "a");
    bool some_missing = false;
    for (StateId s = 0; s < 2; ++s)
        for (Letter a = 0; a < sys.letter_count(); ++a) some_missing |= !find_linking_execution(sys, s, a).has_value();
    CHECK(some_missing);
}

TEST_CASE("linking execution requires accessibility") {
    CHECK(error_kind([] { find_linking_execution(e1_without("alpha1", "c"), 0, 0); }) == ErrorKind::NotAccessible);
}

TEST_CASE("canonical system") {
    const ConcurrentSystem sys = ConcurrentSystem::canonical(fixtures::tm1().monoid());
    CHECK(sys == fixtures::tm1());
    CHECK(sys.states() == std::vector<std::string>{"*"});
}
