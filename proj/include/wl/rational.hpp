#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wl {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::string rat_to_string(const Rat& r);

/// Element of the field Q(i): exact Gaussian rational.
struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long r) : re(r) {}
    GaussRat(long r, long i) : re(r), im(i) {}

    static GaussRat unit_i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.norm2();
        if (n == 0) throw std::domain_error("GaussRat: division by zero");
        GaussRat t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat inv() const { return GaussRat(1) / *this; }

    std::string str() const;
};

/// Exact square root in Q(i) if one exists.
std::optional<GaussRat> exact_sqrt(const GaussRat& z);

/// Dense univariate polynomial over Q(i), coefficients lowest degree first.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(GaussRat c) { if (!c.is_zero()) c_ = {std::move(c)}; }
    explicit Poly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<GaussRat>{GaussRat(0), GaussRat(1)}); }
    static Poly constant(GaussRat c) { return Poly(std::move(c)); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<GaussRat>& coeffs() const { return c_; }
    GaussRat coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : GaussRat(0);
    }
    const GaussRat& leading() const;

    Poly monic() const;
    Poly derivative() const;
    GaussRat eval(const GaussRat& x) const;
    std::complex<double> eval(std::complex<double> x) const;

    /// P(x + a), exact Taylor shift.
    Poly shift(const GaussRat& a) const;
    /// Coefficients reversed: x^n P(1/x) for n = degree.
    Poly reversed() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const GaussRat& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Exact division with remainder; throws on zero divisor.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    /// Monic gcd.
    static Poly gcd(Poly a, Poly b);
    /// g = s*a + t*b with g = gcd(a,b) monic.
    static Poly ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& t);
    /// Squarefree factorization (Yun): returns F_i with P = lc * prod F_i^i, F_i monic squarefree.
    static std::vector<Poly> squarefree_factors(const Poly& p);

private:
    std::vector<GaussRat> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

struct PoleProximity : std::runtime_error {
    std::complex<double> point;
    double den_abs;
    PoleProximity(std::complex<double> p, double d);
};

/// Rational function num/den in canonical form: den monic, gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly(GaussRat(1))) {}
    RatFunc(Poly num, Poly den);
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly(GaussRat(1))) {}
    explicit RatFunc(GaussRat c) : num_(Poly(std::move(c))), den_(Poly(GaussRat(1))) {}

    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc derivative() const;
    GaussRat eval_exact(const GaussRat& x) const;

    /// Float evaluation with compensated Horner; throws PoleProximity when
    /// |den(x)| < eps_pole.
    std::complex<double> eval(std::complex<double> x, double eps_pole = 1e-9) const;

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    Poly num_, den_;
};

/// Meromorphic 1-form coeff * dxi in the affine chart; the chart at infinity
/// is reached by xi = 1/w, dxi = -dw/w^2.
struct OneForm {
    RatFunc coeff;
};

struct SyntaxError : std::runtime_error {
    std::size_t offset;
    SyntaxError(std::size_t off, const std::string& what);
};

/// Parse an expression in the variable z over Q(i) literals.
/// Grammar: + - * / ^ and parentheses; integer literals; "i"; juxtaposition
/// of a literal with i, z or ( binds as multiplication ("3/2 i", "2z").
RatFunc parse_rational(const std::string& text);

std::string to_string(const Poly& p);
std::string to_string(const RatFunc& f);

struct NonzeroResidue : std::runtime_error {
    std::complex<double> point;
    std::complex<double> value;
    bool exact_point;
    NonzeroResidue(std::complex<double> p, std::complex<double> v, bool exact);
};

RatFunc differentiate(const RatFunc& f);

/// Exact residue of the form at a finite Gaussian-rational point.
GaussRat residue_at(const OneForm& w, const GaussRat& rho);
/// Exact residue at infinity (in the w = 1/xi chart).
GaussRat residue_at_infinity(const OneForm& w);

/// Pull the form back to the chart at infinity: coefficient of dw.
RatFunc infinity_chart_coeff(const OneForm& w);

struct HermiteResult {
    RatFunc integral;            // g with dg = w - remainder
    RatFunc remainder;           // simple-pole part left over; zero iff w exact
};

/// Hermite reduction: w = d(integral) + remainder dxi with squarefree-denominator
/// remainder. The form is exact (all residues vanish) iff remainder == 0.
HermiteResult hermite_reduce(const OneForm& w);

/// Antiderivative g with dg = w, normalized to vanish at the first non-pole of
/// 0, 1, 2, ...; throws NonzeroResidue when a log term would be required.
RatFunc antiderivative(const OneForm& w);

std::complex<double> evaluate(const RatFunc& f, std::complex<double> x,
                              double eps_pole = 1e-9);

/// Double-coefficient snapshots for evaluation-heavy paths (quadrature,
/// sampling); one conversion from exact coefficients, compensated Horner per
/// call.
struct FastPoly {
    std::vector<std::complex<double>> c;  // lowest degree first
    static FastPoly from(const Poly& p);
    std::complex<double> eval(std::complex<double> x) const;
};

struct FastRat {
    FastPoly num, den;
    static FastRat from(const RatFunc& f);
    std::complex<double> eval(std::complex<double> x, double eps_pole = 1e-9) const;
};

}  // namespace wl
