#include "wl/frames.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wl {

namespace {
const Cplx I(0.0, 1.0);
}

AdaptedFrame AdaptedFrame::standard() {
    AdaptedFrame f;
    f.Z0 = CVec4::basis(0);
    f.Zp = CVec4::basis(1) + I * CVec4::basis(2);
    f.Zm = CVec4::basis(1) - I * CVec4::basis(2);
    f.Z3 = CVec4::basis(3);
    return f;
}

double frame_gram_residual(const AdaptedFrame& f) {
    const CVec4* Z[4] = {&f.Z0, &f.Zp, &f.Zm, &f.Z3};
    const Cplx model[4][4] = {
        {0, 0, 0, I},
        {0, 2, 0, 0},
        {0, 0, 2, 0},
        {-I, 0, 0, 0},
    };
    double r = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            r = std::max(r, std::abs(herm_product(*Z[a], *Z[b]) - model[a][b]));
    return r;
}

namespace {

struct FrameRng {
    std::mt19937_64 eng;
    explicit FrameRng(std::uint64_t seed) : eng(seed) {}
    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(eng);
    }
    Cplx unit_phase() {
        double th = uniform(0, 2 * M_PI);
        return {std::cos(th), std::sin(th)};
    }
    Cplx box(double m = 1.0) { return {uniform(-m, m), uniform(-m, m)}; }
};

// Z0 -> a Z0, Z3 -> (1/conj a) Z3.
void apply_scaling(AdaptedFrame& f, const Cplx& a) {
    f.Z0 = a * f.Z0;
    f.Z3 = (1.0 / std::conj(a)) * f.Z3;
}

// Unitary mix of (Z1, Z2); rebuilds Z+-.
void apply_u2(AdaptedFrame& f, const std::array<Cplx, 4>& u) {
    CVec4 Z1 = 0.5 * (f.Zp + f.Zm);
    CVec4 Z2 = Cplx(0, -0.5) * (f.Zp - f.Zm);
    CVec4 Z1n = u[0] * Z1 + u[2] * Z2;
    CVec4 Z2n = u[1] * Z1 + u[3] * Z2;
    f.Zp = Z1n + I * Z2n;
    f.Zm = Z1n - I * Z2n;
}

// Null translation with parameters v in C^2 and real gamma:
// Zj -> Zj + i conj(v_j) Z0, Z3 -> Z3 + v1 Z1 + v2 Z2 + c Z0,
// c = gamma + (i/2)|v|^2 so that the Gram matrix is preserved.
void apply_translation(AdaptedFrame& f, const std::array<Cplx, 2>& v, double gamma) {
    CVec4 Z1 = 0.5 * (f.Zp + f.Zm);
    CVec4 Z2 = Cplx(0, -0.5) * (f.Zp - f.Zm);
    Cplx c(gamma, 0.5 * (std::norm(v[0]) + std::norm(v[1])));
    CVec4 Z1n = Z1 + (I * std::conj(v[0])) * f.Z0;
    CVec4 Z2n = Z2 + (I * std::conj(v[1])) * f.Z0;
    CVec4 Z3n = f.Z3 + v[0] * Z1 + v[1] * Z2 + c * f.Z0;
    f.Zp = Z1n + I * Z2n;
    f.Zm = Z1n - I * Z2n;
    f.Z3 = Z3n;
}

std::array<Cplx, 4> random_u2(FrameRng& rng) {
    // Gram-Schmidt two random vectors in C^2.
    Cplx a = rng.box(), b = rng.box();
    double na = std::sqrt(std::norm(a) + std::norm(b));
    while (na < 0.1) {
        a = rng.box();
        b = rng.box();
        na = std::sqrt(std::norm(a) + std::norm(b));
    }
    a /= na;
    b /= na;
    // second column orthogonal to (a, b): (-conj b, conj a) times a phase
    Cplx ph = rng.unit_phase();
    return {a, b, -std::conj(b) * ph, std::conj(a) * ph};
}

}  // namespace

AdaptedFrame make_frame(FrameKind kind, std::uint64_t seed) {
    AdaptedFrame f = AdaptedFrame::standard();
    if (kind == FrameKind::standard) return f;
    FrameRng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int step = 0; step < 8; ++step) {
        switch (step % 3) {
            case 0: {
                double m = std::exp(rng.uniform(-0.4, 0.4));
                apply_scaling(f, m * rng.unit_phase());
                break;
            }
            case 1:
                apply_u2(f, random_u2(rng));
                break;
            case 2:
                apply_translation(f, {rng.box(0.7), rng.box(0.7)}, rng.uniform(-0.7, 0.7));
                break;
        }
    }
    return f;
}

FrameCoeffs sample_coefficients(CoeffClass cls, std::uint64_t seed,
                                ConstraintSet constraints) {
    FrameRng rng(seed * 0x2545f4914f6cdd1dull + 1);
    for (int attempt = 0; attempt < 256; ++attempt) {
        FrameCoeffs c;
        c.r = 0.0;
        switch (cls) {
            case CoeffClass::C: {
                c.h = rng.box();
                c.z = rng.box();
                c.p = c.q = c.y = c.x = 0.0;
                if (std::abs(c.h) < 0.1) continue;
                return c;
            }
            case CoeffClass::unconstrained: {
                c.h = rng.box();
                c.p = rng.box();
                c.q = rng.box();
                c.z = rng.box();
                c.y = rng.box();
                c.x = rng.box();
                return c;
            }
            case CoeffClass::B: {
                c.h = rng.box();
                c.p = rng.box();
                c.z = rng.box();
                if (std::abs(c.h) < 0.1 || std::abs(c.p) < 0.1) continue;
                c.q = c.p * c.p / (2.0 * c.h);
                if (constraints == ConstraintSet::derived) {
                    c.y = rng.box();
                    c.x = (c.p * c.y - c.q * c.z) / c.h;
                } else {
                    c.y = c.z * (c.h + c.q) / c.p;
                    c.x = rng.box();
                }
                Cplx psi = c.z * c.x - 0.5 * c.y * c.y;
                Cplx pzhy = c.p * c.z - c.h * c.y;
                if (std::abs(psi) < 1e-4 || std::abs(pzhy) < 1e-4) continue;
                return c;
            }
        }
    }
    throw RejectionExhausted();
}

std::pair<Cplx, Cplx> phi_psi(const FrameCoeffs& c) {
    return {c.h * c.q - 0.5 * c.p * c.p, c.z * c.x - 0.5 * c.y * c.y};
}

DualTriple dual_map(const AdaptedFrame& f, const FrameCoeffs& c) {
    if (std::abs(c.h) == 0.0 && std::abs(c.p) == 0.0) throw ZeroDual();
    const Cplx hb = std::conj(c.h), pb = std::conj(c.p), qb = std::conj(c.q);
    const Cplx zb = std::conj(c.z), yb = std::conj(c.y);
    DualTriple d;
    d.Y = (0.5 * I * std::norm(c.p)) * f.Z0 + (0.5 * I * c.h * pb) * f.Zp +
          (0.5 * I * hb * c.p) * f.Zm + Cplx(std::norm(c.h), 0) * f.Z3;
    d.Yp = (I * (c.p * yb - c.q * pb)) * f.Z0 + (I * (c.h * yb - 0.5 * c.p * pb)) * f.Zp +
           (I * (c.p * zb - c.q * hb)) * f.Zm + (2.0 * c.h * zb - c.p * hb) * f.Z3;
    d.Ym = (I * (c.y * pb - c.p * qb)) * f.Z0 + (I * (c.z * pb - c.h * qb)) * f.Zp +
           (I * (c.y * hb - 0.5 * c.p * pb)) * f.Zm + (2.0 * c.z * hb - c.h * pb) * f.Z3;
    return d;
}

double DualityResiduals::max_normalized() const {
    double m = std::max({yy, yyp, yym, ypym, ypyp, ymym});
    return m / scale;
}

DualityResiduals duality_residuals(const DualTriple& d, const FrameCoeffs& c) {
    DualityResiduals r;
    double target = 2.0 * std::norm(c.p * c.z - c.h * c.y);
    r.yy = std::abs(herm_product(d.Y, d.Y));
    r.yyp = std::abs(herm_product(d.Y, d.Yp));
    r.yym = std::abs(herm_product(d.Y, d.Ym));
    r.ypym = std::abs(herm_product(d.Yp, d.Ym));
    r.ypyp = std::abs(herm_product(d.Yp, d.Yp) - target);
    r.ymym = std::abs(herm_product(d.Ym, d.Ym) - target);
    double np = d.Yp.norm(), nm = d.Ym.norm(), ny = d.Y.norm();
    r.scale = std::max({np * np, nm * nm, ny * ny, np * nm, ny * np, target, 1.0});
    return r;
}

Cplx consequence_identity(const FrameCoeffs& c) {
    Cplx a = (c.p * c.z - c.h * c.y) * (c.q * c.y - c.p * c.x);
    Cplx b = c.h * c.x - c.q * c.z;
    return a - 0.5 * b * b;
}

}  // namespace wl
