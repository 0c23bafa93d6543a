#include "uniconc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "uniconc/error.hpp"

namespace uniconc {

namespace {

struct Kernel {
    std::size_t dimension = 0;
    std::vector<double> vector;  // filled only when dimension == 1
};

// Gaussian elimination with full pivoting. Pivots at or below tau count as zero.
Kernel kernel_of(std::vector<std::vector<double>> a, double tau) {
    const std::size_t n = a.size();
    std::vector<std::size_t> col(n);
    std::iota(col.begin(), col.end(), 0);
    std::size_t rank = 0;
    for (; rank < n; ++rank) {
        std::size_t pr = rank, pc = rank;
        double best = -1;
        for (std::size_t i = rank; i < n; ++i)
            for (std::size_t j = rank; j < n; ++j)
                if (std::abs(a[i][col[j]]) > best) {
                    best = std::abs(a[i][col[j]]);
                    pr = i;
                    pc = j;
                }
        if (best <= tau) break;
        std::swap(a[rank], a[pr]);
        std::swap(col[rank], col[pc]);
        const double pivot = a[rank][col[rank]];
        for (std::size_t i = rank + 1; i < n; ++i) {
            const double m = a[i][col[rank]] / pivot;
            if (m == 0) continue;
            for (std::size_t j = rank; j < n; ++j) a[i][col[j]] -= m * a[rank][col[j]];
        }
    }
    Kernel k;
    k.dimension = n - rank;
    if (k.dimension != 1) return k;
    k.vector.assign(n, 0.0);
    k.vector[col[n - 1]] = 1.0;
    for (std::size_t i = n - 1; i-- > 0;) {
        double acc = 0;
        for (std::size_t j = i + 1; j < n; ++j) acc += a[i][col[j]] * k.vector[col[j]];
        k.vector[col[i]] = -acc / a[i][col[i]];
    }
    return k;
}

std::vector<std::vector<double>> mu_at(const PolynomialMatrix& mu, double z) {
    std::vector<std::vector<double>> out(mu.size(), std::vector<double>(mu.size()));
    for (std::size_t a = 0; a < mu.size(); ++a)
        for (std::size_t b = 0; b < mu.size(); ++b) out[a][b] = eval_double(mu[a][b], z);
    return out;
}

// Entry size before cancellation, sum of |coefficient| z^k. At a root the evaluated entries
// themselves can all be tiny (a 1x1 matrix is just theta(r)), so they are no usable scale.
double magnitude_at(const PolynomialMatrix& mu, double z) {
    double scale = 0;
    for (const auto& row : mu)
        for (const auto& p : row) {
            double acc = 0, power = 1;
            for (const auto& c : p.coefficients()) {
                acc += std::abs(static_cast<double>(c)) * power;
                power *= z;
            }
            scale = std::max(scale, acc);
        }
    return scale;
}

}  // namespace

ParryCocycle parry_cocycle(const ConcurrentSystem& sys, const CharacteristicRoot& root) {
    const PolynomialMatrix mu = mobius_matrix(sys);
    const double z = to_double(root.midpoint());
    const Kernel k = kernel_of(mu_at(mu, z), 1e-9 * magnitude_at(mu, z));
    ParryCocycle out;
    out.kernel_dimension = k.dimension;
    if (k.dimension != 1)
        throw Error(ErrorKind::KernelDimensionNotOne, "ker mu(r) has dimension " + std::to_string(k.dimension));
    const double pivot = k.vector[sys.base_state()];
    if (pivot == 0) throw Error(ErrorKind::NonPositiveKernelVector, "kernel vector vanishes at the base state");
    out.u = k.vector;
    for (std::size_t i = 0; i < out.u.size(); ++i) {
        out.u[i] /= pivot;
        if (!(out.u[i] > 0))
            throw Error(ErrorKind::NonPositiveKernelVector, "kernel vector is not positive at " + sys.state_name(static_cast<StateId>(i)));
    }

    // The cocycle is the limit of G_b(t)/G_a(t) as t grows to r.
    const Rational t = root.lo * Rational(999999, 1000000);
    const RationalMatrix g = growth_eval(sys, root, t);
    std::vector<double> rows;
    for (const auto& row : g) rows.push_back(to_double(std::accumulate(row.begin(), row.end(), Rational(0))));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < rows.size(); ++b) {
            const double ratio = rows[b] / rows[a];
            const double gamma = out(static_cast<StateId>(a), static_cast<StateId>(b));
            out.cross_check_gap = std::max(out.cross_check_gap, std::abs(ratio / gamma - 1.0));
        }
    if (out.cross_check_gap > 1e-3) {
        std::ostringstream os;
        os << "kernel cocycle and growth-series ratios differ by " << out.cross_check_gap;
        throw Error(ErrorKind::CrossCheckFailure, os.str());
    }
    return out;
}

CliqueTable fibred_valuation(const ConcurrentSystem& sys, double r, const ParryCocycle& cocycle) {
    const auto& cliques = sys.monoid().cliques();
    CliqueTable f(sys.state_count(), std::vector<double>(cliques.size(), 0.0));
    for (std::size_t s = 0; s < sys.state_count(); ++s) {
        const auto alpha = static_cast<StateId>(s);
        for (std::size_t k = 0; k < cliques.size(); ++k) {
            const StateId beta = sys.act(alpha, cliques[k]);
            if (beta != kSink) f[s][k] = std::pow(r, cliques[k].size()) * cocycle(alpha, beta);
        }
    }
    return f;
}

CliqueTable mobius_transform(const ConcurrentSystem& sys, const CliqueTable& f) {
    // Superset Moebius transform one letter at a time. Cliques are closed under subsets,
    // so sets outside the family contribute nothing and can be skipped.
    const TraceMonoid& m = sys.monoid();
    const auto& cliques = m.cliques();
    CliqueTable h = f;
    for (std::size_t a = 0; a < m.size(); ++a) {
        const auto l = static_cast<Letter>(a);
        for (std::size_t k = 0; k < cliques.size(); ++k) {
            const Clique c = cliques[k];
            if (c.contains(l) || !m.is_clique(c.with(l))) continue;
            const std::size_t up = m.clique_index(c.with(l));
            for (auto& row : h) row[k] -= row[up];
        }
    }
    return h;
}

std::vector<double> g_table(const ConcurrentSystem& sys, const StateCliqueGraph& dsc, const CliqueTable& h) {
    std::vector<double> g(dsc.size(), 0.0);
    for (std::size_t i = 0; i < dsc.size(); ++i)
        for (const std::size_t j : dsc.graph.succ[i])
            g[i] += h[dsc.nodes[j].state][sys.monoid().clique_index(dsc.nodes[j].clique)];
    return g;
}

Mcsc mcsc(const ConcurrentSystem& sys, const StateCliqueGraph& dsc, const CliqueTable& h) {
    const std::size_t n = dsc.size();
    std::vector<double> weight(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = h[dsc.nodes[j].state][sys.monoid().clique_index(dsc.nodes[j].clique)];
        weight[j] = w > kNullThreshold ? w : 0.0;
    }
    Mcsc out;
    out.transition.assign(n, std::vector<double>(n, 0.0));
    out.unreachable.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0;
        for (const std::size_t j : dsc.graph.succ[i]) total += weight[j];
        if (total <= kNullThreshold) {
            out.unreachable[i] = true;
            continue;
        }
        for (const std::size_t j : dsc.graph.succ[i]) out.transition[i][j] = weight[j] / total;
    }
    out.nodes_of_state.assign(sys.state_count(), {});
    for (std::size_t j = 0; j < n; ++j) out.nodes_of_state[dsc.nodes[j].state].push_back(j);
    out.initial.assign(sys.state_count(), {});
    for (std::size_t s = 0; s < sys.state_count(); ++s)
        for (const std::size_t j : out.nodes_of_state[s]) out.initial[s].push_back(weight[j]);
    // A state with a positive node has an initial law summing to 1 up to rounding.
    for (auto& law : out.initial) {
        const double total = std::accumulate(law.begin(), law.end(), 0.0);
        if (total > 0)
            for (double& p : law) p /= total;
    }
    return out;
}

NullCheckReport numeric_null_check(const ConcurrentSystem& sys, const StateCliqueGraph& dsc,
                                   const std::vector<bool>& positive, const CliqueTable& h, bool strict) {
    NullCheckReport report;
    for (std::size_t i = 0; i < dsc.size(); ++i) {
        const double v = h[dsc.nodes[i].state][sys.monoid().clique_index(dsc.nodes[i].clique)];
        const bool ok = positive[i] ? v > kNullThreshold : std::abs(v) <= kNullThreshold;
        if (!ok) report.mismatches.push_back(i);
    }
    if (strict && !report.agree()) {
        std::string msg = "graph and numeric classifications differ at";
        for (const std::size_t i : report.mismatches) msg += " " + dsc.describe(sys, i);
        throw Error(ErrorKind::ClassificationMismatch, msg);
    }
    return report;
}

double UniformMeasure::h_at(const ConcurrentSystem& sys, StateId a, Clique c) const {
    return h.at(static_cast<std::size_t>(a)).at(sys.monoid().clique_index(c));
}

double UniformMeasure::f_at(const ConcurrentSystem& sys, StateId a, Clique c) const {
    return f.at(static_cast<std::size_t>(a)).at(sys.monoid().clique_index(c));
}

UniformMeasure build_uniform_measure(const ConcurrentSystem& sys, const Rational& precision) {
    UniformMeasure m;
    m.root = characteristic_root(sys, precision);
    m.r = m.root.approx();
    m.cocycle = parry_cocycle(sys, m.root);
    m.f = fibred_valuation(sys, m.r, m.cocycle);
    m.h = mobius_transform(sys, m.f);
    m.dsc = build_dsc(sys);
    m.positive = classify_nodes(sys, m.dsc);
    numeric_null_check(sys, m.dsc, m.positive, m.h);
    m.g = g_table(sys, m.dsc, m.h);
    m.chain = mcsc(sys, m.dsc, m.h);
    return m;
}

MeasureInvariants check_invariants(const ConcurrentSystem& sys, const UniformMeasure& m) {
    MeasureInvariants out;
    const std::size_t n = sys.state_count();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const auto sa = static_cast<StateId>(a), sb = static_cast<StateId>(b), sc = static_cast<StateId>(c);
                out.cocycle_gap =
                    std::max(out.cocycle_gap, std::abs(m.gamma(sa, sc) - m.gamma(sa, sb) * m.gamma(sb, sc)));
            }
    out.h_min = 0;
    for (std::size_t a = 0; a < n; ++a) {
        out.h_empty_gap = std::max(out.h_empty_gap, std::abs(m.h[a][0]));
        double sum = 0;
        for (std::size_t k = 1; k < m.h[a].size(); ++k) {
            out.h_min = std::min(out.h_min, m.h[a][k]);
            sum += m.h[a][k];
        }
        out.h_sum_gap = std::max(out.h_sum_gap, std::abs(sum - 1.0));
    }
    for (std::size_t i = 0; i < m.dsc.size(); ++i) {
        const SCNode& x = m.dsc.nodes[i];
        const std::size_t k = sys.monoid().clique_index(x.clique);
        out.product_gap = std::max(out.product_gap, std::abs(m.h[x.state][k] - m.f[x.state][k] * m.g[i]));
        if (m.chain.unreachable[i]) continue;
        const double row = std::accumulate(m.chain.transition[i].begin(), m.chain.transition[i].end(), 0.0);
        out.row_sum_gap = std::max(out.row_sum_gap, std::abs(row - 1.0));
    }
    out.pass = out.cocycle_gap <= kIdentityTolerance && out.h_empty_gap <= kIdentityTolerance &&
               out.h_min >= -kIdentityTolerance && out.h_sum_gap <= kIdentityTolerance &&
               out.product_gap <= kIdentityTolerance && out.row_sum_gap <= kIdentityTolerance;
    return out;
}

UniquenessReport uniqueness_diagnostics(const ConcurrentSystem& sys, const UniformMeasure& m) {
    UniquenessReport out;
    out.kernel_dimension = m.cocycle.kernel_dimension;

    // Positive eigenvector of the positive ADSC built from h.
    const StateCliqueGraph adsc = build_adsc(sys);
    const StateCliqueGraph plus = positive_part(adsc, m.positive);
    const StateId base = sys.base_state();
    std::vector<double> u(plus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
        const SCNode& x = plus.nodes[i];
        u[i] = m.gamma(base, x.state) * m.h_at(sys, x.state, x.clique) / std::pow(m.r, x.index - 1);
    }
    for (std::size_t i = 0; i < plus.size(); ++i) {
        double acc = 0;
        for (const std::size_t j : plus.graph.succ[i]) acc += u[j];
        out.eigen_residual = std::max(out.eigen_residual, std::abs(acc - u[i] / m.r));
    }

    const ComponentRadii radii = component_radii(plus.graph, plus.condensation);
    out.terminal_components = plus.condensation.terminal_count();
    out.basic_components = radii.basic_count();
    out.basic_is_terminal = true;
    for (std::size_t c = 0; c < plus.condensation.count(); ++c)
        if (radii.basic[c] != plus.condensation.terminal[c]) out.basic_is_terminal = false;

    // Downstream-of-basic test on the full ADSC.
    const ComponentRadii full = component_radii(adsc.graph, adsc.condensation);
    const Condensation& cond = adsc.condensation;
    auto downstream = [&](std::size_t comp, bool strict) {
        for (std::size_t b = 0; b < cond.count(); ++b)
            if (full.basic[b] && cond.reach[b][comp] && (!strict || b != comp)) return true;
        return false;
    };
    out.strict_reach_agrees = true;
    out.literal_reach_agrees = true;
    for (std::size_t i = 0; i < adsc.size(); ++i) {
        const bool null = !m.positive[adsc.nodes[i].dsc_node];
        const std::size_t comp = cond.component[i];
        if (downstream(comp, true) != null) out.strict_reach_agrees = false;
        if (downstream(comp, false) != null) out.literal_reach_agrees = false;
    }

    out.pass = out.kernel_dimension == 1 && out.eigen_residual <= kEigenTolerance && out.basic_is_terminal &&
               out.strict_reach_agrees;
    return out;
}

}  // namespace uniconc
