#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace uniconc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
template <typename Coeff>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }
    explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial constant(Coeff c) { return Polynomial(std::vector<Coeff>{std::move(c)}); }
    static Polynomial monomial(Coeff c, std::size_t degree) {
        std::vector<Coeff> v(degree + 1);
        v[degree] = std::move(c);
        return Polynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Coeff>& coefficients() const { return coeffs_; }

    /// Coefficient of z^k; zero past the degree.
    Coeff operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Coeff(0); }
    const Coeff& leading() const { return coeffs_.back(); }

    Polynomial operator-() const {
        Polynomial out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(out));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Coeff& s, const Polynomial& p) {
        Polynomial out = p;
        for (auto& c : out.coeffs_) c *= s;
        out.trim();
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Coeff> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * Coeff(static_cast<long>(i));
        return Polynomial(std::move(out));
    }

    /// Horner evaluation in any ring the coefficients convert into.
    template <typename T>
    T eval(const T& x) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
    }

    std::vector<Coeff> coeffs_;
};

using IntPoly = Polynomial<BigInt>;
using RatPoly = Polynomial<Rational>;

RatPoly to_rational(const IntPoly& p);

/// Scales p by a positive rational so the coefficients become coprime integers.
/// Signs are preserved.
IntPoly primitive_part(const RatPoly& p);

double eval_double(const IntPoly& p, double x);
Rational eval_exact(const IntPoly& p, const Rational& x);
int sign_at(const IntPoly& p, const Rational& x);

/// Exact division in Z[z]; throws std::domain_error when the remainder is non-zero.
IntPoly exact_divide(const IntPoly& num, const IntPoly& den);

/// Euclidean division over Q.
void divmod(const RatPoly& num, const RatPoly& den, RatPoly& quotient, RatPoly& remainder);

/// Monic gcd over Q, returned as a primitive integer polynomial.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// p / gcd(p, p'): same real roots as p, all simple.
IntPoly square_free_part(const IntPoly& p);

/// Sturm chain of a square-free polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const IntPoly& p);

    /// Number of distinct real roots in the half-open interval (lo, hi].
    int count_roots(const Rational& lo, const Rational& hi) const;

    const IntPoly& polynomial() const { return base_; }

private:
    int sign_changes(const Rational& x) const;

    IntPoly base_;
    std::vector<RatPoly> chain_;
};

/// Renders "1 - 3z + z^2" style text.
std::string to_string(const IntPoly& p, char var = 'z');

/// Parses a decimal or scientific-notation literal ("1e-12", "0.25") into an exact rational.
Rational parse_rational(const std::string& text);

double to_double(const Rational& q);

}  // namespace uniconc
