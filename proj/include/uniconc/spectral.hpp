#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uniconc/graphs.hpp"
#include "uniconc/polynomial.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

/// Square matrix of integer polynomials, indexed by states.
using PolynomialMatrix = std::vector<std::vector<IntPoly>>;
using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// mu[a][b](z) = sum of (-1)^|c| z^|c| over cliques c with a.c = b (the empty clique included).
PolynomialMatrix mobius_matrix(const ConcurrentSystem& sys);

/// Fraction-free (Bareiss) determinant over Z[z].
IntPoly determinant(const PolynomialMatrix& m);

inline const Rational& default_precision() {
    static const Rational p(1, 1000000000000LL);
    return p;
}

/// Smallest root of theta in (0,1], held as an isolating interval.
/// Either lo == hi (the root is that rational) or lo < r < hi and r is the only root of the
/// square-free part in [lo, hi].
struct CharacteristicRoot {
    IntPoly polynomial;
    IntPoly square_free;
    /// theta has no root in (0,1].
    bool infinite = false;
    Rational lo = 0;
    Rational hi = 1;

    bool exact() const { return !infinite && lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    double approx() const;
};

/// Root isolation by Sturm counting and exact rational bisection. No hypotheses checked.
CharacteristicRoot smallest_root(const IntPoly& theta, const Rational& precision = default_precision());

/// Halves the interval until its width is at most `width`.
void refine(CharacteristicRoot& root, const Rational& width);

/// Checks non-triviality and accessibility first.
/// Throws TrivialSystem, NotAccessible, NoRootInUnitInterval.
CharacteristicRoot characteristic_root(const ConcurrentSystem& sys, const Rational& precision = default_precision());

enum class RootOrder { Less, Equal, Greater };

/// Exact comparison: equality is decided by a common root of the square-free parts inside the
/// overlap of both intervals; otherwise the intervals are refined until they separate.
/// An infinite root compares above every finite one. The arguments may be refined in place.
RootOrder compare_roots(CharacteristicRoot& a, CharacteristicRoot& b);

/// G(t) = mu(t)^-1 by exact Gauss-Jordan. Throws SingularAtT when t is not in [0, r).
RationalMatrix growth_eval(const ConcurrentSystem& sys, const Rational& t);
RationalMatrix growth_eval(const ConcurrentSystem& sys, const CharacteristicRoot& root, const Rational& t);

/// Coefficients of mu(z)^-1 up to z^order, from G[0] = Id and G[n] = -sum_k mu_k G[n-k].
std::vector<IntMatrix> series_inverse(const PolynomialMatrix& mu, std::size_t order);

struct InversionReport {
    std::size_t order = 0;
    /// coefficient_ok[n]: both mu*G and G*mu vanish (or equal Id at n = 0) at z^n.
    std::vector<bool> coefficient_ok;
    bool pass = false;
    CountTable counts;
};

/// Convolves mu with the path counts of the ADSC and checks the result is Id up to `order`.
InversionReport verify_inversion(const ConcurrentSystem& sys, std::size_t order);

struct PowerIterationOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 100000;
    /// Use the serial matvec instead of the OpenMP one.
    bool serial = false;
};

/// Perron root of one strongly connected digraph, by power iteration on F + Id.
double perron_root(const Digraph& g, const PowerIterationOptions& opt = {});

/// Largest Perron root over the cyclic components; 0 for an acyclic graph.
double spectral_radius(const Digraph& g, const PowerIterationOptions& opt = {});

struct ComponentRadii {
    double global = 0;
    std::vector<double> radius;
    std::vector<bool> basic;
    std::size_t basic_count() const;
};

inline constexpr double kBasicTolerance = 1e-8;
/// Relative differences between kBasicTolerance and this are reported as ambiguous.
inline constexpr double kBasicAmbiguity = 1e-6;

/// Per-component radii of a condensed graph. Throws AmbiguousBasic.
ComponentRadii component_radii(const Digraph& g, const Condensation& cond, const PowerIterationOptions& opt = {});

struct LetterRoot {
    Letter letter = 0;
    CharacteristicRoot root;
    RootOrder versus_r = RootOrder::Greater;
    /// 1/rho of the restricted ADSC, or +inf when it is acyclic. Informational only.
    double numeric = 0;
};

struct SpectralPropertyReport {
    CharacteristicRoot r;
    std::vector<LetterRoot> letters;
    bool verdict = false;
    std::optional<Letter> witness;
};

SpectralPropertyReport spectral_property_report(const ConcurrentSystem& sys,
                                                const Rational& precision = default_precision());

}  // namespace uniconc
