#include "uniconc/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace uniconc {

RatPoly to_rational(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coefficients().size());
    for (const auto& x : p.coefficients()) c.emplace_back(x);
    return RatPoly(std::move(c));
}

IntPoly primitive_part(const RatPoly& p) {
    if (p.is_zero()) return {};
    BigInt den = 1;
    for (const auto& c : p.coefficients()) {
        const BigInt d = boost::multiprecision::denominator(c);
        den = den / boost::multiprecision::gcd(den, d) * d;
    }
    std::vector<BigInt> ints;
    BigInt content = 0;
    for (const auto& c : p.coefficients()) {
        BigInt v = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
        content = boost::multiprecision::gcd(content, v);
        ints.push_back(std::move(v));
    }
    if (content < 0) content = -content;
    for (auto& v : ints) v /= content;
    return IntPoly(std::move(ints));
}

double eval_double(const IntPoly& p, double x) {
    double acc = 0.0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<double>(*it);
    return acc;
}

Rational eval_exact(const IntPoly& p, const Rational& x) {
    Rational acc = 0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

int sign_at(const IntPoly& p, const Rational& x) {
    const Rational v = eval_exact(p, x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

IntPoly exact_divide(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    if (num.is_zero()) return {};
    std::vector<BigInt> rem = num.coefficients();
    const int dn = den.degree();
    const int nn = num.degree();
    if (nn < dn) throw std::domain_error("inexact polynomial division");
    std::vector<BigInt> q(nn - dn + 1);
    for (int k = nn - dn; k >= 0; --k) {
        const BigInt& top = rem[k + dn];
        if (top % den.leading() != 0) throw std::domain_error("inexact polynomial division");
        q[k] = top / den.leading();
        for (int j = 0; j <= dn; ++j) rem[k + j] -= q[k] * den[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("inexact polynomial division");
    return IntPoly(std::move(q));
}

void divmod(const RatPoly& num, const RatPoly& den, RatPoly& quotient, RatPoly& remainder) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = num.coefficients();
    const int dn = den.degree();
    const int nn = num.degree();
    if (nn < dn) {
        quotient = {};
        remainder = num;
        return;
    }
    std::vector<Rational> q(nn - dn + 1);
    for (int k = nn - dn; k >= 0; --k) {
        q[k] = rem[k + dn] / den.leading();
        for (int j = 0; j <= dn; ++j) rem[k + j] -= q[k] * den[j];
    }
    rem.resize(dn);
    quotient = RatPoly(std::move(q));
    remainder = RatPoly(std::move(rem));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly x = to_rational(a);
    RatPoly y = to_rational(b);
    while (!y.is_zero()) {
        RatPoly q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    IntPoly g = primitive_part(x);
    if (!g.is_zero() && g.leading() < 0) g = -g;
    return g;
}

IntPoly square_free_part(const IntPoly& p) {
    if (p.degree() <= 0) return p;
    const IntPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    RatPoly q, r;
    divmod(to_rational(p), to_rational(g), q, r);
    IntPoly out = primitive_part(q);
    // g is normalized with a positive leading coefficient, so restore the sign of p.
    if ((out.leading() < 0) != (p.leading() < 0)) out = -out;
    return out;
}

SturmSequence::SturmSequence(const IntPoly& p) : base_(p) {
    if (p.is_zero()) return;
    chain_.push_back(to_rational(p));
    chain_.push_back(to_rational(p.derivative()));
    while (!chain_.back().is_zero()) {
        RatPoly q, r;
        divmod(chain_[chain_.size() - 2], chain_.back(), q, r);
        chain_.push_back(-r);
    }
    chain_.pop_back();
}

int SturmSequence::sign_changes(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& poly : chain_) {
        const Rational v = poly.eval(x);
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
    if (chain_.empty() || !(lo < hi)) return 0;
    return sign_changes(lo) - sign_changes(hi);
}

std::string to_string(const IntPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
        BigInt c = p[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        if (k == 0 || c != 1) os << c;
        if (k >= 1) os << var;
        if (k >= 2) os << '^' << k;
        first = false;
    }
    return os.str();
}

Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    BigInt mantissa = 0;
    long scale = 0;
    bool digits = false;
    bool dot = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mantissa = mantissa * 10 + (ch - '0');
            if (dot) --scale;
            digits = true;
        } else if (ch == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw std::invalid_argument("not a number: " + text);
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw std::invalid_argument("not a number: " + text);
        const std::string exponent = text.substr(i + 1);
        std::size_t used = 0;
        const long e = std::stol(exponent, &used);
        if (used != exponent.size()) throw std::invalid_argument("not a number: " + text);
        scale += e;
    }
    Rational out(mantissa);
    BigInt ten = 1;
    for (long k = 0; k < (scale < 0 ? -scale : scale); ++k) ten *= 10;
    if (scale < 0) out /= Rational(ten);
    else out *= Rational(ten);
    return negative ? Rational(-out) : out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace uniconc
