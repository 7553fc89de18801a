#include "wl/pcmodel.hpp"

#include <cmath>

namespace wl {

double CVec4::norm() const {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

Cplx herm_product(const CVec4& a, const CVec4& b) {
    const Cplx I(0.0, 1.0);
    return a.v[1] * std::conj(b.v[1]) + a.v[2] * std::conj(b.v[2]) +
           I * (a.v[0] * std::conj(b.v[3]) - a.v[3] * std::conj(b.v[0]));
}

StereoChart::StereoChart(const CVec4& w0, const CVec4& w3, double eps_null)
    : w0_(w0), w3_(w3) {
    double s0 = w0.norm(), s3 = w3.norm();
    if (std::abs(herm_product(w0, w0)) > eps_null * s0 * s0 ||
        std::abs(herm_product(w3, w3)) > eps_null * s3 * s3)
        throw std::invalid_argument("StereoChart: w0, w3 must be null");
    if (std::abs(herm_product(w0, w3) - Cplx(0, 1)) > eps_null * s0 * s3)
        throw std::invalid_argument("StereoChart: <w0, conj w3> must equal i");

    // Unitary basis of E = {v : <v, conj w0> = <v, conj w3> = 0}: project the
    // standard basis into E and Gram-Schmidt under the (positive definite
    // there) Hermitian form.
    auto project = [&](const CVec4& v) {
        Cplx a = Cplx(0, -1) * herm_product(v, w3_);
        Cplx b = Cplx(0, 1) * herm_product(v, w0_);
        return v - a * w0_ - b * w3_;
    };
    std::array<CVec4, 2> basis;
    int found = 0;
    for (int k = 0; k < 4 && found < 2; ++k) {
        CVec4 cand = project(CVec4::basis(k));
        for (int j = 0; j < found; ++j)
            cand = cand - herm_product(cand, basis[j]) * basis[j];
        double n2 = herm_product(cand, cand).real();
        if (n2 > 1e-8) {
            basis[found] = (Cplx(1.0 / std::sqrt(n2), 0.0)) * cand;
            ++found;
        }
    }
    if (found < 2) throw std::invalid_argument("StereoChart: degenerate E basis");
    e1_ = basis[0];
    e2_ = basis[1];
}

StereoChart StereoChart::standard() {
    return StereoChart(CVec4::basis(0), CVec4::basis(3));
}

CVec4 stereo_unproject(const StereoChart& chart, const HeisPoint& p) {
    double z2 = std::norm(p.z[0]) + std::norm(p.z[1]);
    Cplx mu(p.t, -0.5 * z2);
    return p.z[0] * chart.e1() + p.z[1] * chart.e2() + chart.w0() + mu * chart.w3();
}

HeisPoint stereo_project(const StereoChart& chart, const CVec4& w) {
    Cplx s = herm_product(w, chart.w3());
    if (std::abs(s) < 1e-12 * w.norm()) throw AtInfinity();
    CVec4 wn = (Cplx(0, 1) / s) * w;  // now <wn, conj w3> = i
    Cplx c = herm_product(wn, chart.w0());
    HeisPoint p;
    p.t = -c.imag();  // (i/2)(c - conj c)
    CVec4 P = wn - chart.w0() - (Cplx(0, 1) * c) * chart.w3();
    p.z[0] = herm_product(P, chart.e1());
    p.z[1] = herm_product(P, chart.e2());
    return p;
}

HeisPoint involution(const HeisPoint& p) {
    double z2 = std::norm(p.z[0]) + std::norm(p.z[1]);
    Cplx mu(p.t, -0.5 * z2);
    if (std::abs(mu) < 1e-300) throw OriginSingular();
    Cplx lambda = 1.0 / mu;
    HeisPoint q;
    q.t = -lambda.real();
    Cplx f = Cplx(0, -1) * lambda;
    q.z[0] = f * p.z[0];
    q.z[1] = f * p.z[1];
    return q;
}

double contact_form_eval(const HeisPoint& p, const HeisTangent& v) {
    Cplx c = v.zdot[0] * std::conj(p.z[0]) + v.zdot[1] * std::conj(p.z[1]);
    return v.tdot - c.imag();
}

std::array<Cplx, 2> lagrangian_chart(const std::array<Cplx, 2>& z) {
    return {Cplx(z[0].real(), z[1].real()), Cplx(z[1].imag(), z[0].imag())};
}

}  // namespace wl
