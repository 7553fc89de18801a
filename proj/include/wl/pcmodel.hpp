#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace wl {

using Cplx = std::complex<double>;

/// Vector in C^{3,1}, components (z0, z1, z2, z3).
struct CVec4 {
    std::array<Cplx, 4> v{};

    Cplx& operator[](int k) { return v[k]; }
    const Cplx& operator[](int k) const { return v[k]; }

    friend CVec4 operator+(const CVec4& a, const CVec4& b) {
        CVec4 r;
        for (int k = 0; k < 4; ++k) r.v[k] = a.v[k] + b.v[k];
        return r;
    }
    friend CVec4 operator-(const CVec4& a, const CVec4& b) {
        CVec4 r;
        for (int k = 0; k < 4; ++k) r.v[k] = a.v[k] - b.v[k];
        return r;
    }
    friend CVec4 operator*(Cplx s, const CVec4& a) {
        CVec4 r;
        for (int k = 0; k < 4; ++k) r.v[k] = s * a.v[k];
        return r;
    }
    double norm() const;

    static CVec4 basis(int k) {
        CVec4 r;
        r.v[k] = 1.0;
        return r;
    }
};

/// Hermitian form of signature (3,1):
/// <a, conj b> = a1 conj(b1) + a2 conj(b2) + i (a0 conj(b3) - a3 conj(b0)).
Cplx herm_product(const CVec4& a, const CVec4& b);

struct HeisPoint {
    double t = 0.0;
    std::array<Cplx, 2> z{};
};

struct HeisTangent {
    double tdot = 0.0;
    std::array<Cplx, 2> zdot{};
};

struct AtInfinity : std::runtime_error {
    AtInfinity() : std::runtime_error("point represents p_infinity in this chart") {}
};

struct OriginSingular : std::runtime_error {
    OriginSingular() : std::runtime_error("involution is singular at the origin") {}
};

/// Stereographic chart data: null pair with <w0, conj w3> = i, plus a unitary
/// basis (e1, e2) of E = span{w0, w3}^perp computed at construction.
class StereoChart {
public:
    StereoChart(const CVec4& w0, const CVec4& w3, double eps_null = 1e-10);

    /// w0 = e0, w3 = e3 in the standard basis.
    static StereoChart standard();

    const CVec4& w0() const { return w0_; }
    const CVec4& w3() const { return w3_; }
    const CVec4& e1() const { return e1_; }
    const CVec4& e2() const { return e2_; }

private:
    CVec4 w0_, w3_, e1_, e2_;
};

/// Qhat(t, z) = z + w0 + (t - (i/2)|z|^2) w3; null with <., conj w3> = i.
CVec4 stereo_unproject(const StereoChart& chart, const HeisPoint& p);

/// Inverse of Qhat on null lines: rescales the input to <w, conj w3> = i and
/// reads off (t, z); throws AtInfinity when <w, conj w3> ~ 0.
HeisPoint stereo_project(const StereoChart& chart, const CVec4& w);

/// Pseudoconformal inversion swapping the chart origin with p_infinity:
/// (t, z) -> (-Re lambda, -i lambda z), lambda = 1/(t - (i/2)<z, conj z>).
/// Fixed locus {t = 0, |z|^2 = 2}; an involution.
HeisPoint involution(const HeisPoint& p);

/// Contact form dt + (i/2)(<dz, conj z> - <z, conj dz>) evaluated on a tangent.
double contact_form_eval(const HeisPoint& p, const HeisTangent& v);

/// Real-linear orthogonal map T(z1, z2) = (Re z1 + i Re z2, Im z2 + i Im z1).
/// Pulls the standard symplectic form back to Re(dz1 ^ dz2), so T o f is
/// Lagrangian for holomorphic f.
std::array<Cplx, 2> lagrangian_chart(const std::array<Cplx, 2>& z);

}  // namespace wl
