#include "wl/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace wl {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

std::string GaussRat::str() const {
    if (im == 0) return rat_to_string(re);
    std::string ims = rat_to_string(im < 0 ? Rat(-im) : im) + " i";
    if (re == 0) return (im < 0 ? "-" : "") + ims;
    return rat_to_string(re) + (im < 0 ? " - " : " + ") + ims;
}

namespace {

std::optional<Rat> rat_sqrt(const Rat& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::sqrt;
    if (r < 0) return std::nullopt;
    BigInt n = numerator(r), d = denominator(r);
    BigInt sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rat(sn, sd);
}

}  // namespace

std::optional<GaussRat> exact_sqrt(const GaussRat& z) {
    if (z.im == 0) {
        if (z.re >= 0) {
            auto u = rat_sqrt(z.re);
            if (!u) return std::nullopt;
            return GaussRat(*u);
        }
        auto v = rat_sqrt(-z.re);
        if (!v) return std::nullopt;
        return GaussRat(Rat(0), *v);
    }
    auto n = rat_sqrt(z.norm2());
    if (!n) return std::nullopt;
    auto u2 = Rat((z.re + *n) / 2);
    auto u = rat_sqrt(u2);
    if (!u || *u == 0) return std::nullopt;
    Rat v = z.im / (2 * (*u));
    GaussRat w(*u, v);
    if (w * w == z) return w;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Poly

const GaussRat& Poly::leading() const {
    if (c_.empty()) throw std::logic_error("Poly: leading of zero polynomial");
    return c_.back();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    GaussRat lc = c_.back();
    for (auto& c : r.c_) c = c / lc;
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<GaussRat> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussRat(long(k)) * c_[k];
    return Poly(std::move(d));
}

GaussRat Poly::eval(const GaussRat& x) const {
    GaussRat r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::shift(const GaussRat& a) const {
    // Horner form: P(x+a) built from the top coefficient down.
    Poly r;
    Poly lin(std::vector<GaussRat>{a, GaussRat(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Poly(*it);
    return r;
}

Poly Poly::reversed() const {
    std::vector<GaussRat> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] += a.c_[k];
        if (k < b.c_.size()) c[k] += b.c_[k];
    }
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator-(const Poly& a) {
    std::vector<GaussRat> c(a.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a.c_[k];
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<GaussRat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly operator*(const GaussRat& s, const Poly& a) {
    std::vector<GaussRat> c(a.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = s * a.c_[k];
    return Poly(std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<GaussRat> rem = a.c_;
    std::vector<GaussRat> quo(a.degree() - b.degree() + 1);
    const GaussRat lc = b.leading();
    for (int k = a.degree(); k >= b.degree(); --k) {
        GaussRat q = rem[k] / lc;
        quo[k - b.degree()] = q;
        if (q.is_zero()) continue;
        for (int j = 0; j <= b.degree(); ++j) rem[k - b.degree() + j] -= q * b.c_[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? Poly() : r.monic();
    }
    return a;
}

Poly Poly::ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
    Poly r0 = a, r1 = b;
    Poly s0(GaussRat(1)), s1, t0, t1(GaussRat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) { s = Poly(); t = Poly(); return Poly(); }
    GaussRat lc = r0.leading();
    s = GaussRat(1) / lc * s0;
    t = GaussRat(1) / lc * t0;
    return r0.monic();
}

std::vector<Poly> Poly::squarefree_factors(const Poly& p) {
    std::vector<Poly> out;
    if (p.degree() <= 0) return out;
    Poly a = p.monic();
    Poly g = gcd(a, a.derivative());
    if (g.degree() == 0) { out.push_back(a); return out; }
    // Yun's algorithm
    Poly c = divmod(a, g).first;
    Poly d = divmod(a.derivative(), g).first - c.derivative();
    while (true) {
        Poly f = gcd(c, d);
        out.push_back(f);
        Poly c2 = divmod(c, f).first;
        if (c2.degree() == 0) break;
        d = divmod(d, f).first - c2.derivative();
        c = std::move(c2);
    }
    return out;
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    Poly g = Poly::gcd(num, den);
    if (g.degree() > 0) {
        num = Poly::divmod(num, g).first;
        den = Poly::divmod(den, g).first;
    }
    GaussRat lc = den.leading();
    num_ = GaussRat(1) / lc * num;
    den_ = GaussRat(1) / lc * den;
}

RatFunc RatFunc::derivative() const {
    // (n/d)' = (n'd - nd')/d^2, reduced
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc differentiate(const RatFunc& f) { return f.derivative(); }

GaussRat RatFunc::eval_exact(const GaussRat& x) const {
    GaussRat d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("RatFunc: exact evaluation at a pole");
    return num_.eval(x) / d;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------------------
// Compensated complex Horner (error-free transformations, Graillat-style).

namespace {

struct Split { double hi, lo; };

inline Split two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Split two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

struct CSum { std::complex<double> hi, lo; };

inline CSum cadd(const std::complex<double>& a, const std::complex<double>& b) {
    Split re = two_sum(a.real(), b.real());
    Split im = two_sum(a.imag(), b.imag());
    return {{re.hi, im.hi}, {re.lo, im.lo}};
}

inline CSum cmul(const std::complex<double>& a, const std::complex<double>& b) {
    Split p1 = two_prod(a.real(), b.real());
    Split p2 = two_prod(a.imag(), b.imag());
    Split p3 = two_prod(a.real(), b.imag());
    Split p4 = two_prod(a.imag(), b.real());
    Split re = two_sum(p1.hi, -p2.hi);
    Split im = two_sum(p3.hi, p4.hi);
    return {{re.hi, im.hi},
            {p1.lo - p2.lo + re.lo, p3.lo + p4.lo + im.lo}};
}

std::complex<double> horner_compensated(const std::vector<GaussRat>& c,
                                        std::complex<double> x) {
    if (c.empty()) return {0.0, 0.0};
    std::complex<double> s = c.back().to_complex();
    std::complex<double> e{0.0, 0.0};
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
        CSum p = cmul(s, x);
        CSum q = cadd(p.hi, it->to_complex());
        s = q.hi;
        e = e * x + (p.lo + q.lo);
    }
    return s + e;
}

}  // namespace

std::complex<double> Poly::eval(std::complex<double> x) const {
    return horner_compensated(c_, x);
}

PoleProximity::PoleProximity(std::complex<double> p, double d)
    : std::runtime_error("evaluation within pole guard, |den| = " + std::to_string(d)),
      point(p), den_abs(d) {}

std::complex<double> RatFunc::eval(std::complex<double> x, double eps_pole) const {
    std::complex<double> d = den_.eval(x);
    if (std::abs(d) < eps_pole) throw PoleProximity(x, std::abs(d));
    return num_.eval(x) / d;
}

std::complex<double> evaluate(const RatFunc& f, std::complex<double> x, double eps_pole) {
    return f.eval(x, eps_pole);
}

FastPoly FastPoly::from(const Poly& p) {
    FastPoly f;
    f.c.reserve(p.coeffs().size());
    for (const auto& g : p.coeffs()) f.c.push_back(g.to_complex());
    return f;
}

std::complex<double> FastPoly::eval(std::complex<double> x) const {
    if (c.empty()) return {0.0, 0.0};
    std::complex<double> s = c.back();
    std::complex<double> e{0.0, 0.0};
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
        CSum p = cmul(s, x);
        CSum q = cadd(p.hi, *it);
        s = q.hi;
        e = e * x + (p.lo + q.lo);
    }
    return s + e;
}

FastRat FastRat::from(const RatFunc& f) {
    return {FastPoly::from(f.num()), FastPoly::from(f.den())};
}

std::complex<double> FastRat::eval(std::complex<double> x, double eps_pole) const {
    std::complex<double> d = den.eval(x);
    if (std::abs(d) < eps_pole) throw PoleProximity(x, std::abs(d));
    return num.eval(x) / d;
}

// ---------------------------------------------------------------------------
// Parser

SyntaxError::SyntaxError(std::size_t off, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos != s.size()) throw SyntaxError(pos, "unexpected trailing input");
        return r;
    }

    RatFunc expr() {
        RatFunc r = peek() == '-' ? (++pos, -term()) : (peek() == '+' ? (++pos, term()) : term());
        while (true) {
            char c = peek();
            if (c == '+') { ++pos; r = r + term(); }
            else if (c == '-') { ++pos; r = r - term(); }
            else break;
        }
        return r;
    }

    RatFunc term() {
        RatFunc r = power();
        while (true) {
            char c = peek();
            if (c == '*') { ++pos; r = r * power(); }
            else if (c == '/') { ++pos; r = r / power(); }
            else if (c == 'i' || c == 'z' || c == '(' ||
                     std::isdigit(static_cast<unsigned char>(c))) {
                r = r * power();  // juxtaposition, e.g. "3/2 i" or "2z"
            } else break;
        }
        return r;
    }

    RatFunc power() {
        RatFunc b = primary();
        if (peek() == '^') {
            ++pos;
            skip_ws();
            std::size_t at = pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw SyntaxError(at, "expected nonnegative integer exponent");
            long e = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                e = e * 10 + (s[pos] - '0');
                if (e > 4096) throw SyntaxError(at, "exponent too large");
                ++pos;
            }
            RatFunc r(GaussRat(1));
            RatFunc base = b;
            while (e > 0) {
                if (e & 1) r = r * base;
                e >>= 1;
                if (e) base = base * base;
            }
            return r;
        }
        return b;
    }

    RatFunc primary() {
        char c = peek();
        if (c == '(') {
            ++pos;
            RatFunc r = expr();
            if (peek() != ')') throw SyntaxError(pos, "expected ')'");
            ++pos;
            return r;
        }
        if (c == 'z') { ++pos; return RatFunc::x(); }
        if (c == 'i') { ++pos; return RatFunc(GaussRat::unit_i()); }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt n = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                n = n * 10 + (s[pos] - '0');
                ++pos;
            }
            return RatFunc(GaussRat(Rat(n)));
        }
        throw SyntaxError(pos, pos >= s.size() ? "unexpected end of input"
                                               : std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

RatFunc parse_rational(const std::string& text) {
    Parser p(text);
    return p.parse();
}

// ---------------------------------------------------------------------------
// Printer (canonical, round-trips through parse_rational)

namespace {

std::string coeff_str(const GaussRat& c, bool lead_sign_out, bool& negative) {
    // Renders |c| when the sign can be pulled out (pure real or pure imaginary);
    // mixed coefficients are parenthesized and never pulled apart.
    negative = false;
    if (c.im == 0) {
        negative = lead_sign_out && c.re < 0;
        Rat v = negative ? Rat(-c.re) : c.re;
        return rat_to_string(v);
    }
    if (c.re == 0) {
        negative = lead_sign_out && c.im < 0;
        Rat v = negative ? Rat(-c.im) : c.im;
        if (v == 1) return "i";
        return rat_to_string(v) + " i";
    }
    std::string im_part = rat_to_string(c.im < 0 ? Rat(-c.im) : c.im);
    return "(" + rat_to_string(c.re) + (c.im < 0 ? " - " : " + ") + im_part + " i)";
}

}  // namespace

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        GaussRat c = p.coeff(k);
        if (c.is_zero()) continue;
        bool neg = false;
        std::string cs = coeff_str(c, true, neg);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (k == 0) {
            out += cs;
        } else {
            bool is_one = (cs == "1");
            if (!is_one) out += cs + "*";
            out += "z";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

std::string to_string(const RatFunc& f) {
    if (f.is_polynomial()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

// ---------------------------------------------------------------------------
// Residues

namespace {

// Coefficient of s^(m-1) in N(rho+s) * (D(rho+s)/s^m)^(-1), all exact.
GaussRat laurent_residue(const Poly& num, const Poly& den, const GaussRat& rho) {
    Poly ds = den.shift(rho);
    int m = 0;
    while (ds.coeff(m).is_zero()) ++m;
    if (m == 0) return GaussRat(0);  // not a pole
    // E(s) = D(rho+s)/s^m; invert as a power series mod s^m.
    std::vector<GaussRat> E(m);
    for (int k = 0; k < m; ++k) E[k] = ds.coeff(m + k);
    std::vector<GaussRat> inv(m);
    inv[0] = GaussRat(1) / E[0];
    for (int k = 1; k < m; ++k) {
        GaussRat acc(0);
        for (int j = 1; j <= k; ++j) acc += E[j] * inv[k - j];
        inv[k] = -inv[0] * acc;
    }
    Poly ns = num.shift(rho);
    GaussRat res(0);
    for (int j = 0; j < m; ++j) res += ns.coeff(j) * inv[m - 1 - j];
    return res;
}

}  // namespace

GaussRat residue_at(const OneForm& w, const GaussRat& rho) {
    return laurent_residue(w.coeff.num(), w.coeff.den(), rho);
}

RatFunc infinity_chart_coeff(const OneForm& w) {
    // xi = 1/u:  R(xi) dxi = -R(1/u)/u^2 du.
    const Poly& N = w.coeff.num();
    const Poly& D = w.coeff.den();
    if (N.is_zero()) return RatFunc();
    int n = N.degree(), d = D.degree();
    Poly nr = N.reversed(), dr = D.reversed();
    // R(1/u) = u^(d-n) * nr(u)/dr(u)
    Poly num = -nr;
    Poly den = dr;
    int shift = d - n - 2;
    std::vector<GaussRat> mono(std::abs(shift) + 1);
    mono.back() = GaussRat(1);
    Poly u_pow(std::move(mono));
    if (shift >= 0) num = num * u_pow;
    else den = den * u_pow;
    return RatFunc(num, den);
}

GaussRat residue_at_infinity(const OneForm& w) {
    RatFunc c = infinity_chart_coeff(w);
    return laurent_residue(c.num(), c.den(), GaussRat(0));
}

// ---------------------------------------------------------------------------
// Hermite reduction

NonzeroResidue::NonzeroResidue(std::complex<double> p, std::complex<double> v, bool exact)
    : std::runtime_error("nonzero residue " + std::to_string(v.real()) + "+" +
                         std::to_string(v.imag()) + "i at pole (" + std::to_string(p.real()) +
                         "," + std::to_string(p.imag()) + ")"),
      point(p), value(v), exact_point(exact) {}

namespace {

// Integrate the polynomial part exactly.
Poly poly_integral(const Poly& p) {
    const auto& pc = p.coeffs();
    std::vector<GaussRat> ic(pc.size() + 1);
    for (std::size_t k = 0; k < pc.size(); ++k) ic[k + 1] = pc[k] / GaussRat(long(k + 1));
    return Poly(std::move(ic));
}

// Integrate A/F^j (F monic squarefree, j >= 1) by the Hermite recursion.
// Accumulates the rational part into `rat` and the simple-pole remainder into
// `simple`.
void hermite_power(Poly A, const Poly& F, int j, RatFunc& rat, RatFunc& simple) {
    Poly s, t;
    Poly::ext_gcd(F, F.derivative(), s, t);  // s F + t F' = 1 since F squarefree
    while (j > 1) {
        // A/F^j = -(A t)/((j-1) F^(j-1)) + [A s + (A t)'/(j-1)] / F^(j-1)
        Poly At = A * t;
        GaussRat inv = GaussRat(1) / GaussRat(long(j - 1));
        Poly Fpow(GaussRat(1));
        for (int k = 0; k < j - 1; ++k) Fpow = Fpow * F;
        rat = rat + RatFunc(-(inv * At), Fpow);
        A = A * s + inv * At.derivative();
        --j;
    }
    auto [q, r] = Poly::divmod(A, F);
    if (!q.is_zero()) rat = rat + RatFunc(poly_integral(q));
    simple = simple + RatFunc(r, F);
}

}  // namespace

HermiteResult hermite_reduce(const OneForm& w) {
    HermiteResult out;
    if (w.coeff.is_zero()) return out;
    auto [polypart, rem] = Poly::divmod(w.coeff.num(), w.coeff.den());
    if (!polypart.is_zero()) out.integral = out.integral + RatFunc(poly_integral(polypart));
    if (rem.is_zero()) return out;

    // Partial fractions over the squarefree factorization of the denominator:
    // peel one coprime block F_i^i at a time via sigma G + tau H = 1.
    Poly A = rem;
    Poly D = w.coeff.den().monic();
    auto factors = Poly::squarefree_factors(D);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Poly& F = factors[i];
        int j = static_cast<int>(i) + 1;
        if (F.degree() == 0) continue;
        Poly G(GaussRat(1));
        for (int k = 0; k < j; ++k) G = G * F;
        Poly H = Poly::divmod(D, G).first;
        if (H.degree() == 0) {
            hermite_power(A, F, j, out.integral, out.remainder);
            break;
        }
        Poly sigma, tau;
        Poly::ext_gcd(G, H, sigma, tau);  // sigma G + tau H = 1
        // A/(G H) = (A tau)/G + (A sigma)/H; fold the quotient of (A tau)/G into
        // the H side so both numerators stay reduced.
        auto [carry, AG] = Poly::divmod(A * tau, G);
        hermite_power(AG, F, j, out.integral, out.remainder);
        A = Poly::divmod(A * sigma + carry * H, H).second;
        D = H;
    }
    return out;
}

namespace {

// First non-pole of 0, 1, 2, ... used to pin the antiderivative constant.
GaussRat normalization_base(const RatFunc& g) {
    for (long k = 0;; ++k) {
        GaussRat x{Rat(k)};
        if (!g.den().eval(x).is_zero()) return x;
    }
}

}  // namespace

RatFunc antiderivative(const OneForm& w) {
    HermiteResult hr = hermite_reduce(w);
    if (!hr.remainder.is_zero()) {
        // Locate one offending pole for the report.
        const Poly& F = hr.remainder.den();
        const Poly& N = hr.remainder.num();
        if (F.degree() == 1) {
            GaussRat rho = -F.coeff(0) / F.coeff(1);
            GaussRat val = N.eval(rho) / F.derivative().eval(rho);
            throw NonzeroResidue(rho.to_complex(), val.to_complex(), true);
        }
        // Exact quadratic split when possible, otherwise a float root.
        if (F.degree() == 2) {
            GaussRat b = F.coeff(1), c = F.coeff(0);
            auto disc = exact_sqrt(b * b - GaussRat(4) * c);
            if (disc) {
                GaussRat rho = (-b + *disc) / GaussRat(2);
                GaussRat val = N.eval(rho) / F.derivative().eval(rho);
                throw NonzeroResidue(rho.to_complex(), val.to_complex(), true);
            }
        }
        // Fall back to a numeric root of F via Newton from a circle of starts.
        std::complex<double> z{0.7, 0.3};
        for (int it = 0; it < 200; ++it) {
            std::complex<double> f = F.eval(z), fp = F.derivative().eval(z);
            if (std::abs(fp) < 1e-300) { z += 0.5; continue; }
            std::complex<double> step = f / fp;
            z -= step;
            if (std::abs(step) < 1e-14) break;
        }
        std::complex<double> val = N.eval(z) / F.derivative().eval(z);
        throw NonzeroResidue(z, val, false);
    }
    RatFunc g = hr.integral;
    GaussRat base = normalization_base(g);
    return g - RatFunc(g.eval_exact(base));
}

}  // namespace wl
