#include "uniconc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uniconc/error.hpp"
#include "uniconc/kernels.hpp"

namespace uniconc {

PolynomialMatrix mobius_matrix(const ConcurrentSystem& sys) {
    const std::size_t n = sys.state_count();
    // Accumulate coefficients as plain vectors and build the polynomials once.
    const std::size_t width = sys.letter_count() + 1;
    std::vector<std::vector<std::vector<BigInt>>> acc(n, std::vector<std::vector<BigInt>>(n, std::vector<BigInt>(width)));
    for (std::size_t s = 0; s < n; ++s) {
        const auto alpha = static_cast<StateId>(s);
        for (const Clique c : sys.monoid().cliques()) {
            const StateId beta = sys.act(alpha, c);
            if (beta == kSink) continue;
            acc[s][beta][c.size()] += (c.size() % 2 == 0) ? 1 : -1;
        }
    }
    PolynomialMatrix m(n, std::vector<IntPoly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m[a][b] = IntPoly(std::move(acc[a][b]));
    return m;
}

IntPoly determinant(const PolynomialMatrix& input) {
    const std::size_t n = input.size();
    if (n == 0) return IntPoly::constant(1);
    PolynomialMatrix m = input;
    IntPoly prev = IntPoly::constant(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k].is_zero()) ++swap;
            if (swap == n) return {};
            std::swap(m[k], m[swap]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = {};
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

double CharacteristicRoot::approx() const {
    if (infinite) return std::numeric_limits<double>::infinity();
    return to_double(midpoint());
}

namespace {

bool is_zero_at(const IntPoly& p, const Rational& x) { return sign_at(p, x) == 0; }

// One bisection step on an isolating interval.
void bisect(CharacteristicRoot& root, const SturmSequence& sturm) {
    const Rational mid = root.midpoint();
    if (is_zero_at(root.square_free, mid)) {
        if (sturm.count_roots(root.lo, mid) == 1) {
            root.lo = root.hi = mid;
            return;
        }
        root.hi = mid;
        return;
    }
    if (sturm.count_roots(root.lo, mid) >= 1) root.hi = mid;
    else root.lo = mid;
}

void shrink(CharacteristicRoot& root, const SturmSequence& sturm, const Rational& width) {
    while (!root.exact()) {
        if (is_zero_at(root.square_free, root.hi) && sturm.count_roots(root.lo, root.hi) == 1) {
            root.lo = root.hi;
            return;
        }
        if (root.width() <= width && sturm.count_roots(root.lo, root.hi) == 1) return;
        bisect(root, sturm);
    }
}

}  // namespace

CharacteristicRoot smallest_root(const IntPoly& theta, const Rational& precision) {
    if (precision <= 0) throw std::invalid_argument("root precision must be positive");
    CharacteristicRoot root;
    root.polynomial = theta;
    root.square_free = square_free_part(theta);
    if (root.square_free.degree() < 1) {
        root.infinite = true;
        return root;
    }
    const SturmSequence sturm(root.square_free);
    if (sturm.count_roots(Rational(0), Rational(1)) == 0) {
        root.infinite = true;
        return root;
    }
    root.lo = 0;
    root.hi = 1;
    shrink(root, sturm, precision);
    return root;
}

void refine(CharacteristicRoot& root, const Rational& width) {
    if (root.infinite || root.exact()) return;
    shrink(root, SturmSequence(root.square_free), width);
}

CharacteristicRoot characteristic_root(const ConcurrentSystem& sys, const Rational& precision) {
    const auto cls = classify_system(sys);
    if (cls.trivial) throw Error(ErrorKind::TrivialSystem, "no letter is enabled at any state");
    if (!cls.accessible) {
        const auto [a, b] = *cls.unreachable;
        throw Error(ErrorKind::NotAccessible,
                    "state " + sys.state_name(b) + " is unreachable from " + sys.state_name(a));
    }
    CharacteristicRoot root = smallest_root(determinant(mobius_matrix(sys)), precision);
    if (root.infinite)
        throw Error(ErrorKind::NoRootInUnitInterval, "det mu = " + to_string(root.polynomial) + " has no root in (0,1]");
    return root;
}

RootOrder compare_roots(CharacteristicRoot& a, CharacteristicRoot& b) {
    if (a.infinite && b.infinite) return RootOrder::Equal;
    if (a.infinite) return RootOrder::Greater;
    if (b.infinite) return RootOrder::Less;

    const IntPoly g = gcd(a.square_free, b.square_free);
    const bool shared = g.degree() >= 1;
    const std::optional<SturmSequence> gs = shared ? std::optional<SturmSequence>(SturmSequence(g)) : std::nullopt;
    const SturmSequence sa(a.square_free);
    const SturmSequence sb(b.square_free);
    bool distinct = !shared;
    for (;;) {
        if (a.hi < b.lo) return RootOrder::Less;
        if (b.hi < a.lo) return RootOrder::Greater;
        if (!distinct) {
            // Each interval holds exactly one root of its own polynomial, so a common root
            // inside the overlap must be both.
            const Rational lo = std::max(a.lo, b.lo);
            const Rational hi = std::min(a.hi, b.hi);
            if (is_zero_at(g, lo) || gs->count_roots(lo, hi) > 0) return RootOrder::Equal;
            distinct = true;
        }
        if (!a.exact()) bisect(a, sa);
        if (!b.exact()) bisect(b, sb);
    }
}

namespace {

RationalMatrix invert_exact(RationalMatrix m, const Rational& t) {
    const std::size_t n = m.size();
    RationalMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) throw Error(ErrorKind::SingularAtT, "mu(t) is singular at t = " + t.str());
        std::swap(m[k], m[p]);
        std::swap(inv[k], inv[p]);
        const Rational pivot = m[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            m[k][j] /= pivot;
            inv[k][j] /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            const Rational f = m[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

}  // namespace

RationalMatrix growth_eval(const ConcurrentSystem& sys, const CharacteristicRoot& root, const Rational& t) {
    if (t < 0) throw Error(ErrorKind::SingularAtT, "t must be non-negative");
    if (!root.infinite && !(t < root.lo))
        throw Error(ErrorKind::SingularAtT, "t = " + t.str() + " is not below the root interval");
    const PolynomialMatrix mu = mobius_matrix(sys);
    RationalMatrix m(mu.size(), std::vector<Rational>(mu.size()));
    for (std::size_t a = 0; a < mu.size(); ++a)
        for (std::size_t b = 0; b < mu.size(); ++b) m[a][b] = eval_exact(mu[a][b], t);
    return invert_exact(std::move(m), t);
}

RationalMatrix growth_eval(const ConcurrentSystem& sys, const Rational& t) {
    return growth_eval(sys, smallest_root(determinant(mobius_matrix(sys))), t);
}

namespace {

// mu_k as an integer matrix.
std::vector<IntMatrix> coefficient_matrices(const PolynomialMatrix& mu) {
    const std::size_t n = mu.size();
    int degree = 0;
    for (const auto& row : mu)
        for (const auto& p : row) degree = std::max(degree, p.degree());
    std::vector<IntMatrix> out(static_cast<std::size_t>(degree) + 1, IntMatrix(n, std::vector<BigInt>(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t k = 0; k < out.size(); ++k) out[k][a][b] = mu[a][b][k];
    return out;
}

void multiply_add(const IntMatrix& x, const IntMatrix& y, IntMatrix& acc) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (x[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) acc[i][j] += x[i][k] * y[k][j];
        }
}

}  // namespace

std::vector<IntMatrix> series_inverse(const PolynomialMatrix& mu, std::size_t order) {
    const std::size_t n = mu.size();
    const auto coeffs = coefficient_matrices(mu);
    std::vector<IntMatrix> g(order + 1, IntMatrix(n, std::vector<BigInt>(n)));
    for (std::size_t i = 0; i < n; ++i) g[0][i][i] = 1;
    for (std::size_t m = 1; m <= order; ++m) {
        IntMatrix acc(n, std::vector<BigInt>(n));
        for (std::size_t k = 1; k < coeffs.size() && k <= m; ++k) multiply_add(coeffs[k], g[m - k], acc);
        for (auto& row : acc)
            for (auto& x : row) x = -x;
        g[m] = std::move(acc);
    }
    return g;
}

InversionReport verify_inversion(const ConcurrentSystem& sys, std::size_t order) {
    InversionReport report;
    report.order = order;
    const std::size_t n = sys.state_count();
    report.counts = count_table(sys, build_adsc(sys), order);
    const auto coeffs = coefficient_matrices(mobius_matrix(sys));
    report.pass = true;
    for (std::size_t m = 0; m <= order; ++m) {
        IntMatrix left(n, std::vector<BigInt>(n)), right(n, std::vector<BigInt>(n));
        for (std::size_t k = 0; k < coeffs.size() && k <= m; ++k) {
            multiply_add(coeffs[k], report.counts[m - k], left);
            multiply_add(report.counts[m - k], coeffs[k], right);
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const BigInt want = (m == 0 && i == j) ? 1 : 0;
                if (left[i][j] != want || right[i][j] != want) {
                    ok = false;
                    break;
                }
            }
        report.coefficient_ok.push_back(ok);
        report.pass = report.pass && ok;
    }
    return report;
}

double perron_root(const Digraph& g, const PowerIterationOptions& opt) {
    if (g.size() == 0) return 0;
    std::vector<double> v(g.size(), 1.0), y;
    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        if (opt.serial) kernels::shifted_matvec_serial(g, v, y);
        else kernels::shifted_matvec(g, v, y);
        // Collatz-Wielandt bounds: min and max of (Av)_i / v_i bracket the Perron root.
        double lo = std::numeric_limits<double>::infinity(), hi = 0, top = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double q = y[i] / v[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            top = std::max(top, y[i]);
        }
        if (hi - lo <= opt.tolerance) return 0.5 * (hi + lo) - 1.0;
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = y[i] / top;
    }
    throw Error(ErrorKind::NonConvergence,
                "power iteration did not converge in " + std::to_string(opt.max_iterations) + " iterations");
}

namespace {

std::vector<double> radii_of(const Digraph& g, const Condensation& cond, const PowerIterationOptions& opt) {
    std::vector<double> out(cond.count(), 0.0);
    for (std::size_t c = 0; c < cond.count(); ++c) {
        if (!cond.cyclic[c]) continue;
        std::vector<bool> keep(g.size(), false);
        for (const std::size_t u : cond.members[c]) keep[u] = true;
        out[c] = perron_root(induced_subgraph(g, keep), opt);
    }
    return out;
}

}  // namespace

double spectral_radius(const Digraph& g, const PowerIterationOptions& opt) {
    const auto radii = radii_of(g, scc_condensation(g), opt);
    return radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
}

std::size_t ComponentRadii::basic_count() const {
    return static_cast<std::size_t>(std::count(basic.begin(), basic.end(), true));
}

ComponentRadii component_radii(const Digraph& g, const Condensation& cond, const PowerIterationOptions& opt) {
    ComponentRadii out;
    out.radius = radii_of(g, cond, opt);
    out.global = out.radius.empty() ? 0.0 : *std::max_element(out.radius.begin(), out.radius.end());
    out.basic.assign(out.radius.size(), false);
    if (out.global <= 0) return out;
    for (std::size_t c = 0; c < out.radius.size(); ++c) {
        const double rel = std::abs(out.radius[c] - out.global) / out.global;
        if (rel <= kBasicTolerance) out.basic[c] = true;
        else if (rel <= kBasicAmbiguity)
            throw Error(ErrorKind::AmbiguousBasic, "component " + std::to_string(c) + " has relative gap " +
                                                       std::to_string(rel) + " to the spectral radius");
    }
    return out;
}

SpectralPropertyReport spectral_property_report(const ConcurrentSystem& sys, const Rational& precision) {
    SpectralPropertyReport report;
    report.r = characteristic_root(sys, precision);
    report.verdict = true;
    for (std::size_t a = 0; a < sys.letter_count(); ++a) {
        LetterRoot lr;
        lr.letter = static_cast<Letter>(a);
        const ConcurrentSystem sub = restrict(sys, lr.letter);
        lr.root = smallest_root(determinant(mobius_matrix(sub)), precision);
        lr.versus_r = compare_roots(lr.root, report.r);
        const double rho = spectral_radius(build_adsc(sub).graph);
        lr.numeric = rho > 0 ? 1.0 / rho : std::numeric_limits<double>::infinity();
        if (lr.versus_r != RootOrder::Greater && report.verdict) {
            report.verdict = false;
            report.witness = lr.letter;
        }
        report.letters.push_back(std::move(lr));
    }
    return report;
}

}  // namespace uniconc
