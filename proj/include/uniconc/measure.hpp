#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uniconc/graphs.hpp"
#include "uniconc/spectral.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

/// Zero test for h when separating null from positive nodes.
inline constexpr double kNullThreshold = 1e-6;
/// Tolerance for the identities the measure must satisfy.
inline constexpr double kIdentityTolerance = 1e-9;

struct ParryCocycle {
    /// Right kernel vector of mu(r), normalized to 1 at the base state.
    std::vector<double> u;
    std::size_t kernel_dimension = 0;
    /// Largest relative gap to the growth-series ratio G_b(t)/G_a(t) just below r.
    double cross_check_gap = 0;

    double operator()(StateId a, StateId b) const { return u[b] / u[a]; }
};

/// Throws KernelDimensionNotOne, NonPositiveKernelVector, CrossCheckFailure.
ParryCocycle parry_cocycle(const ConcurrentSystem& sys, const CharacteristicRoot& root);

/// Indexed [state][clique position in monoid().cliques()].
using CliqueTable = std::vector<std::vector<double>>;

/// f(a, c) = r^|c| Gamma(a, a.c), or 0 when c is not enabled at a.
CliqueTable fibred_valuation(const ConcurrentSystem& sys, double r, const ParryCocycle& cocycle);

/// h(c) = sum over cliques c' containing c of (-1)^(|c'|-|c|) f(c').
CliqueTable mobius_transform(const ConcurrentSystem& sys, const CliqueTable& f);

/// g per DSC node: sum of h_b(d) over DSC successors (b,d).
std::vector<double> g_table(const ConcurrentSystem& sys, const StateCliqueGraph& dsc, const CliqueTable& h);

struct Mcsc {
    /// Row-stochastic on reachable rows, over DSC nodes.
    std::vector<std::vector<double>> transition;
    /// g <= kNullThreshold: never entered by the chain, left unnormalized.
    std::vector<bool> unreachable;
    /// initial[a][k]: probability that the first clique is the k-th DSC node of state a.
    std::vector<std::vector<double>> initial;
    /// DSC node ids of each state, in DSC order (the support of initial[a]).
    std::vector<std::vector<std::size_t>> nodes_of_state;
};

/// h values at or below kNullThreshold are treated as exact zeros.
Mcsc mcsc(const ConcurrentSystem& sys, const StateCliqueGraph& dsc, const CliqueTable& h);

struct NullCheckReport {
    /// DSC nodes where the graph classifier and the sign of h disagree.
    std::vector<std::size_t> mismatches;
    bool agree() const { return mismatches.empty(); }
};

/// Positive nodes must have h > kNullThreshold, null nodes |h| <= kNullThreshold.
/// Throws ClassificationMismatch when `strict` and the two disagree.
NullCheckReport numeric_null_check(const ConcurrentSystem& sys, const StateCliqueGraph& dsc,
                                   const std::vector<bool>& positive, const CliqueTable& h, bool strict = true);

struct UniformMeasure {
    CharacteristicRoot root;
    double r = 0;
    ParryCocycle cocycle;
    CliqueTable f;
    CliqueTable h;
    StateCliqueGraph dsc;
    std::vector<bool> positive;
    std::vector<double> g;
    Mcsc chain;

    double gamma(StateId a, StateId b) const { return cocycle(a, b); }
    /// Looks the clique up in the monoid order.
    double h_at(const ConcurrentSystem& sys, StateId a, Clique c) const;
    double f_at(const ConcurrentSystem& sys, StateId a, Clique c) const;
};

/// Root, cocycle, tables, chain and the numeric null cross-check.
UniformMeasure build_uniform_measure(const ConcurrentSystem& sys, const Rational& precision = default_precision());

struct MeasureInvariants {
    double cocycle_gap = 0;
    double h_empty_gap = 0;
    double h_min = 0;
    double h_sum_gap = 0;
    double product_gap = 0;
    double row_sum_gap = 0;
    bool pass = false;
};

MeasureInvariants check_invariants(const ConcurrentSystem& sys, const UniformMeasure& m);

struct UniquenessReport {
    std::size_t kernel_dimension = 0;
    double eigen_residual = 0;
    std::size_t terminal_components = 0;
    std::size_t basic_components = 0;
    /// Basic components of the positive ADSC are exactly its terminal components.
    bool basic_is_terminal = false;
    /// Null nodes are strictly downstream of a basic ADSC component and positive ones are not.
    bool strict_reach_agrees = false;
    /// Same, with a component counted as reaching itself. Expected to disagree; reported only.
    bool literal_reach_agrees = false;
    bool pass = false;
};

inline constexpr double kEigenTolerance = 1e-6;

UniquenessReport uniqueness_diagnostics(const ConcurrentSystem& sys, const UniformMeasure& m);

}  // namespace uniconc
