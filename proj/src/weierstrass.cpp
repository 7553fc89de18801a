#include "wl/weierstrass.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace wl {

namespace {

std::vector<Cplx> float_roots(const Poly& p) {
    int n = p.degree();
    if (n <= 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    Cplx lc = p.leading().to_complex();
    for (int k = 0; k < n; ++k) {
        companion(k, n - 1) = -p.coeff(k).to_complex() / lc;
        if (k + 1 < n) companion(k + 1, k) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Cplx> roots;
    Poly dp = p.derivative();
    for (int k = 0; k < n; ++k) {
        Cplx z = solver.eigenvalues()(k);
        for (int it = 0; it < 4; ++it) {  // Newton polish
            Cplx fp = dp.eval(z);
            if (std::abs(fp) < 1e-280) break;
            z -= p.eval(z) / fp;
        }
        roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end(), [](Cplx a, Cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

// Exact roots of a monic squarefree factor when they live in Q(i):
// linear always, quadratic when the discriminant is a square in Q(i).
std::vector<GaussRat> exact_roots(const Poly& f) {
    if (f.degree() == 1) return {-f.coeff(0) / f.coeff(1)};
    if (f.degree() == 2) {
        GaussRat a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        auto d = exact_sqrt(b * b - GaussRat(4) * a * c);
        if (d) {
            GaussRat two_a = GaussRat(2) * a;
            return {(-b + *d) / two_a, (-b - *d) / two_a};
        }
    }
    return {};
}

void add_pole(std::vector<PolePoint>& poles, const PolePoint& p) {
    for (auto& q : poles) {
        if (p.at_infinity && q.at_infinity) {
            q.order = std::max(q.order, p.order);
            return;
        }
        if (!p.at_infinity && !q.at_infinity) {
            bool same = (p.exact && q.exact) ? (*p.exact == *q.exact)
                                             : std::abs(p.approx - q.approx) < 1e-9;
            if (same) {
                q.order = std::max(q.order, p.order);
                if (p.exact && !q.exact) q.exact = p.exact;
                return;
            }
        }
    }
    poles.push_back(p);
}

void collect_poles(std::vector<PolePoint>& out, const RatFunc& f) {
    auto factors = Poly::squarefree_factors(f.den());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Poly& F = factors[i];
        if (F.degree() <= 0) continue;
        int order = static_cast<int>(i) + 1;
        auto ex = exact_roots(F);
        if (!ex.empty()) {
            for (const auto& r : ex) {
                PolePoint p;
                p.exact = r;
                p.approx = r.to_complex();
                p.order = order;
                add_pole(out, p);
            }
        } else {
            for (const auto& r : float_roots(F)) {
                PolePoint p;
                p.approx = r;
                p.order = order;
                add_pole(out, p);
            }
        }
    }
    int inf_order = f.num().degree() - f.den().degree();
    if (inf_order > 0) {
        PolePoint p;
        p.at_infinity = true;
        p.order = inf_order;
        add_pole(out, p);
    }
}

}  // namespace

RatFunc invert_argument(const RatFunc& f) {
    const Poly& N = f.num();
    const Poly& D = f.den();
    if (N.is_zero()) return RatFunc();
    int n = N.degree(), d = D.degree();
    Poly num = N.reversed(), den = D.reversed();
    int shift = d - n;
    std::vector<GaussRat> mono(std::abs(shift) + 1);
    mono.back() = GaussRat(1);
    Poly w_pow(std::move(mono));
    if (shift >= 0) num = num * w_pow;
    else den = den * w_pow;
    return RatFunc(num, den);
}

RatFunc compose_affine(const RatFunc& f, const GaussRat& a, const GaussRat& b) {
    Poly lin(std::vector<GaussRat>{b, a});
    auto subst = [&](const Poly& p) {
        Poly r;
        const auto& c = p.coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * lin + Poly(*it);
        return r;
    };
    return RatFunc(subst(f.num()), subst(f.den()));
}

MeroCurve MeroCurve::make(RatFunc f1, RatFunc f2) {
    MeroCurve c;
    c.f1 = std::move(f1);
    c.f2 = std::move(f2);
    collect_poles(c.poles, c.f1);
    collect_poles(c.poles, c.f2);
    return c;
}

OneForm MeroCurve::liouville_form() const {
    return OneForm{f1 * f2.derivative() - f2 * f1.derivative()};
}

MeroCurve MeroCurve::at_infinity_chart() const {
    return MeroCurve::make(invert_argument(f1), invert_argument(f2));
}

std::array<Cplx, 2> MeroCurve::eval(Cplx xi, double eps_pole) const {
    return {f1.eval(xi, eps_pole), f2.eval(xi, eps_pole)};
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Numeric residue by a small contour integral; diagnostic fallback for poles
// without an exact location.
Cplx contour_residue(const OneForm& w, Cplx pole) {
    const int n = 256;
    const double r = 1e-4;
    Cplx acc = 0;
    for (int k = 0; k < n; ++k) {
        double th = 2 * M_PI * k / n;
        Cplx e(std::cos(th), std::sin(th));
        Cplx xi = pole + r * e;
        acc += w.coeff.eval(xi, 0.0) * (r * e);
    }
    return acc / double(n);
}

bool immersion_check(const MeroCurve& curve, std::optional<Cplx>& witness) {
    RatFunc d1 = curve.f1.derivative(), d2 = curve.f2.derivative();
    // Finite non-pole common zeros of (f1', f2'): roots of gcd of the
    // numerators that are not poles of either component.
    Poly g = Poly::gcd(d1.num(), d2.num());
    if (d1.is_zero()) g = d2.num();
    if (d2.is_zero()) g = d1.num();
    if (d1.is_zero() && d2.is_zero()) {
        witness = Cplx(0, 0);
        return false;
    }
    for (const Poly& strip : {curve.f1.den(), curve.f2.den()}) {
        Poly h = Poly::gcd(g, strip);
        while (h.degree() > 0) {
            g = Poly::divmod(g, h).first;
            h = Poly::gcd(g, h);
        }
    }
    if (g.degree() > 0) {
        auto roots = float_roots(g);
        witness = roots.empty() ? Cplx(0, 0) : roots.front();
        return false;
    }
    // Point at infinity: if it is a pole, a simple pole is automatically
    // immersed (handled by the pole checks); otherwise require a nonzero
    // derivative of the curve in the 1/w chart.
    bool inf_is_pole = false;
    for (const auto& p : curve.poles) inf_is_pole |= p.at_infinity;
    if (!inf_is_pole) {
        MeroCurve inf = curve.at_infinity_chart();
        Cplx g1 = inf.f1.derivative().eval(Cplx(0, 0), 0.0);
        Cplx g2 = inf.f2.derivative().eval(Cplx(0, 0), 0.0);
        if (std::abs(g1) + std::abs(g2) < 1e-12) {
            witness = Cplx(std::numeric_limits<double>::infinity(), 0);
            return false;
        }
    }
    return true;
}

}  // namespace

ValidationReport validate_data(const MeroCurve& curve) {
    ValidationReport rep;
    OneForm w = curve.liouville_form();
    HermiteResult hr = hermite_reduce(w);
    rep.all_residues_zero = hr.remainder.is_zero();

    rep.all_poles_simple = true;
    for (const auto& pole : curve.poles) {
        ResidueInfo info;
        info.pole = pole;
        info.simple = (pole.order == 1);
        rep.all_poles_simple = rep.all_poles_simple && info.simple;
        if (pole.at_infinity) {
            GaussRat r = residue_at_infinity(w);
            info.residue = r.to_complex();
            info.residue_exact = true;
            info.residue_zero = r.is_zero();
        } else if (pole.exact) {
            GaussRat r = residue_at(w, *pole.exact);
            info.residue = r.to_complex();
            info.residue_exact = true;
            info.residue_zero = r.is_zero();
        } else {
            info.residue = contour_residue(w, pole.approx);
            info.residue_exact = false;
            // the exact global statement comes from the Hermite remainder
            info.residue_zero = rep.all_residues_zero;
        }
        rep.poles.push_back(info);
    }
    rep.immersion_ok = immersion_check(curve, rep.immersion_witness);
    rep.is_valid = rep.all_poles_simple && rep.all_residues_zero && rep.immersion_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// Lift

HeisPoint Lift::at(Cplx xi, double eps_pole) const {
    HeisPoint p;
    p.t = cg.eval(xi, eps_pole).real();
    p.z = lagrangian_chart({cf1.eval(xi, eps_pole), cf2.eval(xi, eps_pole)});
    return p;
}

HeisTangent Lift::tangent_u(Cplx xi) const {
    HeisTangent v;
    v.tdot = cgp.eval(xi).real();
    v.zdot = lagrangian_chart({cf1p.eval(xi), cf2p.eval(xi)});
    return v;
}

HeisTangent Lift::tangent_v(Cplx xi) const {
    HeisTangent v;
    const Cplx I(0, 1);
    v.tdot = (I * cgp.eval(xi)).real();
    v.zdot = lagrangian_chart({I * cf1p.eval(xi), I * cf2p.eval(xi)});
    return v;
}

Lift legendrian_lift(const MeroCurve& curve, const StereoChart& chart) {
    Lift l{curve, antiderivative(curve.liouville_form()), chart, {}, {}, {}, {}, {}, {}};
    l.cf1 = FastRat::from(curve.f1);
    l.cf2 = FastRat::from(curve.f2);
    l.cg = FastRat::from(l.primitive);
    l.cf1p = FastRat::from(curve.f1.derivative());
    l.cf2p = FastRat::from(curve.f2.derivative());
    l.cgp = FastRat::from(l.primitive.derivative());
    return l;
}

DiagnosticLift diagnostic_lift(const MeroCurve& curve, const StereoChart& chart) {
    DiagnosticLift d{curve, RatFunc(), {}, chart, {}, {}, {}};
    HermiteResult hr = hermite_reduce(curve.liouville_form());
    d.rational_part = hr.integral;
    if (!hr.remainder.is_zero()) {
        const Poly& F = hr.remainder.den();
        const Poly& N = hr.remainder.num();
        Poly Fp = F.derivative();
        for (const auto& rho : float_roots(F))
            d.log_terms.emplace_back(rho, N.eval(rho) / Fp.eval(rho));
    }
    d.cf1 = FastRat::from(curve.f1);
    d.cf2 = FastRat::from(curve.f2);
    d.cg = FastRat::from(d.rational_part);
    return d;
}

HeisPoint DiagnosticLift::at(Cplx xi, double eps_pole) const {
    HeisPoint p;
    double t = cg.eval(xi, eps_pole).real();
    for (const auto& [pole, res] : log_terms) t += (res * std::log(xi - pole)).real();
    p.t = t;
    p.z = lagrangian_chart({cf1.eval(xi, eps_pole), cf2.eval(xi, eps_pole)});
    return p;
}

// ---------------------------------------------------------------------------
// End closure

namespace {

double heis_dist(const HeisPoint& a, const HeisPoint& b) {
    return std::sqrt(std::pow(a.t - b.t, 2) + std::norm(a.z[0] - b.z[0]) +
                     std::norm(a.z[1] - b.z[1]));
}

}  // namespace

ClosureReport end_closure_report(const DiagnosticLift& lift, Cplx pole,
                                 const std::vector<double>& radii) {
    const int nth = 64;
    ClosureReport rep;
    rep.radii = radii;

    std::vector<std::vector<HeisPoint>> images(radii.size());
    std::vector<double> mean_t(radii.size(), 0.0);
    OneForm w = lift.curve.liouville_form();
    for (std::size_t k = 0; k < radii.size(); ++k) {
        images[k].resize(nth);
        Cplx circulation = 0;
        for (int j = 0; j < nth; ++j) {
            double th = 2 * M_PI * (j + 0.5) / nth;
            Cplx e(std::cos(th), std::sin(th));
            Cplx xi = pole + radii[k] * e;
            HeisPoint s = lift.at(xi, 0.0);
            mean_t[k] += s.t / nth;
            images[k][j] = involution(s);
            circulation += w.coeff.eval(xi, 0.0) * (radii[k] * e);
        }
        // dt = Re(w) integrates to -2 pi Im(res) around the pole; nonzero
        // circulation means t is not even single-valued there.
        circulation *= Cplx(0, 2 * M_PI / nth);
        rep.t_branch_jump = std::max(rep.t_branch_jump, std::abs(circulation.real()));
    }

    // Limit estimated from the innermost circle; for a closing end of a valid
    // curve this sits at the involution image of p_infinity, i.e. the origin.
    HeisPoint limit{};
    for (const auto& q : images.back()) {
        limit.t += q.t / nth;
        limit.z[0] += q.z[0] / double(nth);
        limit.z[1] += q.z[1] / double(nth);
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double sup = 0;
        for (const auto& q : images[k]) sup = std::max(sup, heis_dist(q, limit));
        rep.sup_dist.push_back(sup);
    }

    // First divided differences across consecutive radii at fixed angle; their
    // variation measures C^1 convergence of the image family.
    std::vector<std::vector<double>> dd(radii.size() > 1 ? radii.size() - 1 : 0);
    for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
        double dr = radii[k] - radii[k + 1];
        dd[k].resize(nth);
        for (int j = 0; j < nth; ++j)
            dd[k][j] = heis_dist(images[k][j], images[k + 1][j]) / dr;
    }
    for (std::size_t k = 0; k + 1 < dd.size(); ++k) {
        double defect = 0;
        for (int j = 0; j < nth; ++j) defect = std::max(defect, std::abs(dd[k][j] - dd[k + 1][j]));
        rep.c1_defect.push_back(defect);
    }

    // Slope of the circle-mean of t against log r between the two innermost
    // circles: equals the real part of the residue of the Liouville form,
    // exactly zero for a closing end.
    if (radii.size() >= 2) {
        std::size_t k1 = radii.size() - 2, k2 = radii.size() - 1;
        rep.t_log_slope =
            (mean_t[k2] - mean_t[k1]) / (std::log(radii[k2]) - std::log(radii[k1]));
    }

    bool sup_decreasing = true;
    for (std::size_t k = 0; k + 1 < rep.sup_dist.size(); ++k)
        sup_decreasing = sup_decreasing && rep.sup_dist[k + 1] < 0.75 * rep.sup_dist[k] + 1e-14;
    bool c1_ok = rep.c1_defect.empty() ||
                 rep.c1_defect.back() <= 0.9 * rep.c1_defect.front() + 1e-10;
    bool no_log = std::abs(rep.t_log_slope) < 0.05 && rep.t_branch_jump < 0.05;
    rep.converged = sup_decreasing && c1_ok && no_log;
    return rep;
}

ClosureReport end_closure_check(const DiagnosticLift& lift, Cplx pole,
                                const std::vector<double>& radii) {
    ClosureReport rep = end_closure_report(lift, pole, radii);
    if (!rep.converged) throw DivergentEnd(rep.t_log_slope);
    return rep;
}

// ---------------------------------------------------------------------------
// Curvature and energy

int gauss_map_degree(const MeroCurve& curve) {
    RatFunc d1 = curve.f1.derivative(), d2 = curve.f2.derivative();
    Poly A = d1.num() * d2.den();
    Poly B = d2.num() * d1.den();
    if (A.is_zero() && B.is_zero()) throw DegenerateGaussMap();
    Poly G = Poly::gcd(A, B);
    int da = A.is_zero() ? -1 : A.degree() - G.degree();
    int db = B.is_zero() ? -1 : B.degree() - G.degree();
    int deg = std::max(da, db);
    if (deg <= 0) throw DegenerateGaussMap();
    return deg;
}

double curvature_at(const MeroCurve& curve, Cplx xi, double eps_pole) {
    RatFunc d1 = curve.f1.derivative(), d2 = curve.f2.derivative();
    Cplx f1p = d1.eval(xi, eps_pole), f2p = d2.eval(xi, eps_pole);
    Cplx f1pp = d1.derivative().eval(xi, eps_pole), f2pp = d2.derivative().eval(xi, eps_pole);
    double lam2 = std::norm(f1p) + std::norm(f2p);
    if (lam2 < 1e-30) throw std::domain_error("curvature_at: not an immersion point");
    double W2 = std::norm(f1p * f2pp - f2p * f1pp);
    return -2.0 * W2 / (lam2 * lam2 * lam2);
}

namespace {

// Precompiled total-curvature integrand of one chart.
struct DensityEval {
    FastRat d1, d2, d1p, d2p;

    explicit DensityEval(const MeroCurve& curve) {
        RatFunc f1d = curve.f1.derivative(), f2d = curve.f2.derivative();
        d1 = FastRat::from(f1d);
        d2 = FastRat::from(f2d);
        d1p = FastRat::from(f1d.derivative());
        d2p = FastRat::from(f2d.derivative());
    }

    double operator()(Cplx xi) const {
        Cplx f1p, f2p, f1pp, f2pp;
        try {
            f1p = d1.eval(xi, 1e-13);
            f2p = d2.eval(xi, 1e-13);
            f1pp = d1p.eval(xi, 1e-13);
            f2pp = d2p.eval(xi, 1e-13);
        } catch (const PoleProximity&) {
            return 0.0;  // the density extends by zero into the poles
        }
        double lam2 = std::norm(f1p) + std::norm(f2p);
        if (lam2 < 1e-280) return 0.0;
        double W2 = std::norm(f1p * f2pp - f2p * f1pp);
        return 2.0 * W2 / (lam2 * lam2);
    }
};

}  // namespace

double curvature_density(const MeroCurve& curve, Cplx xi) {
    return DensityEval(curve)(xi);
}

EnergyReport willmore_energy(const MeroCurve& curve, const QuadConfig& cfg) {
    EnergyReport rep;
    ValidationReport val = validate_data(curve);
    rep.formula_applicable = val.is_valid;
    if (val.is_valid) rep.formula_value = 4.0 * M_PI * (double(curve.poles.size()) - 1.0);

    try {
        rep.gauss_degree = gauss_map_degree(curve);
        rep.degree_value = 2.0 * M_PI * rep.gauss_degree;
    } catch (const DegenerateGaussMap&) {
        rep.gauss_degree = 0;
        rep.degree_value = 0.0;
    }

    MeroCurve inf = curve.at_infinity_chart();
    std::vector<Cplx> poles_xi, poles_w;
    for (const auto& p : curve.poles) {
        if (p.at_infinity) {
            poles_w.push_back(Cplx(0, 0));
        } else {
            poles_xi.push_back(p.approx);
            if (std::abs(p.approx) > 1e-12) poles_w.push_back(1.0 / p.approx);
        }
    }

    DensityEval density_xi(curve), density_w(inf);
    auto run = [&](double excision) {
        QuadConfig c = cfg;
        c.excision = excision;
        QuadResult a = integrate_disk([&](Cplx xi) { return density_xi(xi); }, Cplx(0, 0),
                                      1.0, poles_xi, c);
        QuadResult b = integrate_disk([&](Cplx w) { return density_w(w); }, Cplx(0, 0),
                                      1.0, poles_w, c);
        QuadResult r;
        r.value = a.value + b.value;
        r.error_estimate = a.error_estimate + b.error_estimate;
        r.converged = a.converged && b.converged;
        r.panels = a.panels + b.panels;
        return r;
    };

    QuadResult main = run(cfg.excision);
    rep.quadrature_value = main.value;
    rep.quadrature_error = main.error_estimate;
    rep.quadrature_converged = main.converged;

    double lo = main.value, hi = main.value;
    for (double eps : {1e-2, 1e-4}) {
        double v = run(eps).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.excision_drift = hi - lo;
    return rep;
}

// ---------------------------------------------------------------------------
// Fixture solver

namespace {

GaussRat random_small_rat(std::mt19937_64& rng, bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-8, 8), den(1, 3);
    for (;;) {
        GaussRat g(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
        if (allow_zero || !g.is_zero()) return g;
    }
}

RatFunc pole_term(const GaussRat& coeff, const GaussRat& pole) {
    // coeff / (xi - pole)
    return RatFunc(Poly(coeff), Poly(std::vector<GaussRat>{-pole, GaussRat(1)}));
}

}  // namespace

MeroCurve sample_valid_curve_22(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0xabcdef12345ull);
    for (int attempt = 0; attempt < 512; ++attempt) {
        GaussRat rho1 = random_small_rat(rng), rho2 = random_small_rat(rng);
        GaussRat sig1 = random_small_rat(rng);
        GaussRat e = rho1 + rho2, f = rho1 * rho2;
        GaussRat denom = e - GaussRat(2) * sig1;
        if (denom.is_zero()) continue;
        // The residue equations admit a nonzero solution exactly on the slice
        // (rho1 + rho2)(sig1 + sig2) = 2 (rho1 rho2 + sig1 sig2).
        GaussRat sig2 = (GaussRat(2) * f - sig1 * e) / denom;

        std::vector<GaussRat> ps{rho1, rho2, sig1, sig2};
        bool ok = true;
        for (std::size_t a = 0; a < 4 && ok; ++a)
            for (std::size_t b = a + 1; b < 4 && ok; ++b)
                if (ps[a] == ps[b]) ok = false;
        for (const auto& p : ps) {
            double m = std::abs(p.to_complex());
            if (m < 0.05 || (m > 0.8 && m < 1.25) || m > 8.0) ok = false;
        }
        if (!ok) continue;

        GaussRat d1 = sig1 - rho1, d2 = sig1 - rho2;
        GaussRat r1 = random_small_rat(rng, false);
        GaussRat r2 = -r1 * (d2 * d2) / (d1 * d1);
        GaussRat e1 = rho1 - sig1, e2 = rho1 - sig2;
        GaussRat s1 = random_small_rat(rng, false);
        GaussRat s2 = -s1 * (e2 * e2) / (e1 * e1);
        GaussRat a0 = random_small_rat(rng), b0 = random_small_rat(rng);

        RatFunc f1 = RatFunc(Poly(a0)) + pole_term(r1, rho1) + pole_term(r2, rho2);
        RatFunc f2 = RatFunc(Poly(b0)) + pole_term(s1, sig1) + pole_term(s2, sig2);
        MeroCurve curve = MeroCurve::make(f1, f2);
        if (curve.poles.size() != 4) continue;
        ValidationReport rep = validate_data(curve);
        if (!rep.is_valid) continue;
        try {
            if (gauss_map_degree(curve) != 6) continue;
        } catch (const DegenerateGaussMap&) {
            continue;
        }
        return curve;
    }
    throw std::runtime_error("sample_valid_curve_22: rejection exhausted");
}

}  // namespace wl
