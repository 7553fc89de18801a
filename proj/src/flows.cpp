#include "wl/flows.hpp"

#include "wl/quadrature.hpp"

#include <cmath>
#include <random>

namespace wl {

namespace {

using RJ2 = Jet2<2, double>;
using CJ2 = Jet2<2, Cplx>;

std::array<RJ2, 6> to_state6(const std::array<CJ2, 3>& x) {
    return {jet_re(x[0]), jet_im(x[0]), jet_re(x[1]),
            jet_im(x[1]), jet_re(x[2]), jet_im(x[2])};
}

std::array<CJ2, 3> from_state6(const std::array<RJ2, 6>& w) {
    return {jet_complexify(w[0], w[1]), jet_complexify(w[2], w[3]),
            jet_complexify(w[4], w[5])};
}

}  // namespace

std::array<CJet4, 3> FlowedSurface::jets(double u, double v) const {
    using RJ4 = Jet2<4, double>;
    auto x = base_->jets(u, v);
    std::array<RJ4, 6> w = {jet_re(x[0]), jet_im(x[0]), jet_re(x[1]),
                            jet_im(x[1]), jet_re(x[2]), jet_im(x[2])};
    if (eps_ != 0.0) {
        auto field = [this](const std::array<RJ4, 6>& s) {
            return s5_contact_field(bump_, s);
        };
        w = rk4_flow(field, w, eps_, steps_);
    }
    return {jet_complexify(w[0], w[1]), jet_complexify(w[2], w[3]),
            jet_complexify(w[4], w[5])};
}

namespace {

double s5_energy_at(const SurfaceJet& base, const Bump<6>& bump, double eps,
                    int rk_steps, int nu, int nv) {
    SurfaceDomain d = base.domain();
    double du = (d.u1 - d.u0) / nu, dv = (d.v1 - d.v0) / nv;
    std::vector<double> cell(static_cast<std::size_t>(nu) * nv);
    parallel_for_indexed(static_cast<long>(cell.size()), [&](long k) {
        int i = static_cast<int>(k) / nv, j = static_cast<int>(k) % nv;
        double u = d.u0 + du * (i + 0.5);
        double v = d.v0 + dv * (j + 0.5);
        auto x4 = base.jets(u, v);
        std::array<CJ2, 3> x2 = {jet_truncate<2>(x4[0]), jet_truncate<2>(x4[1]),
                                 jet_truncate<2>(x4[2])};
        if (eps != 0.0) {
            auto field = [&bump](const std::array<RJ2, 6>& s) {
                return s5_contact_field(bump, s);
            };
            x2 = from_state6(rk4_flow(field, to_state6(x2), eps, rk_steps));
        }
        cell[k] = energy_density_from_2jets(x2);
    });
    double sum = 0;
    for (double c : cell) sum += c;
    return sum * du * dv;
}

}  // namespace

VariationEstimate first_variation_s5(const SurfaceJet& base, const Bump<6>& bump,
                                     double eps, int grid_nu, int grid_nv,
                                     int rk_steps) {
    auto energy = [&](double e) {
        return s5_energy_at(base, bump, e, rk_steps, grid_nu, grid_nv);
    };
    VariationEstimate out;
    out.eps = eps;
    out.base_energy = energy(0.0);
    double d_coarse = (energy(eps) - energy(-eps)) / (2 * eps);
    double d_fine = (energy(eps / 2) - energy(-eps / 2)) / eps;
    out.derivative = (4 * d_fine - d_coarse) / 3;
    out.error_bar = std::abs(d_fine - d_coarse) / 3;
    return out;
}

Bump<6> make_surface_bump_at(const SurfaceJet& s, double u0, double v0, double radius,
                             double amplitude) {
    auto x = s.position(u0, v0);
    Bump<6> b;
    b.center = {x[0].real(), x[0].imag(), x[1].real(),
                x[1].imag(), x[2].real(), x[2].imag()};
    b.rho = radius;
    b.amplitude = amplitude;
    return b;
}

std::array<double, 2> surface_bump_param(const SurfaceJet& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5bf0a8b1451full);
    SurfaceDomain d = s.domain();
    std::uniform_real_distribution<double> fu(0.15, 0.85), fv(0.25, 0.75);
    double u = d.u0 + (d.u1 - d.u0) * fu(rng);
    double v = d.v0 + (d.v1 - d.v0) * fv(rng);
    return {u, v};
}

Bump<6> make_surface_bump(const SurfaceJet& s, std::uint64_t seed, double radius,
                          double amplitude) {
    auto uv = surface_bump_param(s, seed);
    return make_surface_bump_at(s, uv[0], uv[1], radius, amplitude);
}

// ---------------------------------------------------------------------------
// Lift variation

double half_b0_density_r4(const std::array<Jet2<2, double>, 4>& z) {
    double zu[4], zv[4], zdd[2][2][4];
    for (int k = 0; k < 4; ++k) {
        zu[k] = z[k].deriv(1, 0);
        zv[k] = z[k].deriv(0, 1);
        zdd[0][0][k] = z[k].deriv(2, 0);
        zdd[0][1][k] = zdd[1][0][k] = z[k].deriv(1, 1);
        zdd[1][1][k] = z[k].deriv(0, 2);
    }
    auto dot4 = [](const double* a, const double* b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    };
    double g[2][2] = {{dot4(zu, zu), dot4(zu, zv)}, {dot4(zu, zv), dot4(zv, zv)}};
    double det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
    if (det <= 1e-16) throw DegenerateMetric();
    double gi[2][2] = {{g[1][1] / det, -g[0][1] / det}, {-g[0][1] / det, g[0][0] / det}};
    const double* tang[2] = {zu, zv};
    double II[2][2][4];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double c[2];
            for (int d = 0; d < 2; ++d)
                c[d] = gi[d][0] * dot4(zdd[a][b], tang[0]) +
                       gi[d][1] * dot4(zdd[a][b], tang[1]);
            for (int k = 0; k < 4; ++k)
                II[a][b][k] = zdd[a][b][k] - c[0] * zu[k] - c[1] * zv[k];
        }
    double H[4];
    for (int k = 0; k < 4; ++k)
        H[k] = 0.5 * (gi[0][0] * II[0][0][k] + 2 * gi[0][1] * II[0][1][k] +
                      gi[1][1] * II[1][1][k]);
    double B0[2][2][4];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 4; ++k) B0[a][b][k] = II[a][b][k] - g[a][b] * H[k];
    double norm2 = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    norm2 += gi[a][c] * gi[b][d] * dot4(B0[a][b], B0[c][d]);
    return 0.5 * norm2 * std::sqrt(det);
}

namespace {

CJ2 eval_on_jet(const FastPoly& p, const CJ2& x) {
    CJ2 r;
    if (p.c.empty()) return r;
    r = CJ2(p.c.back());
    for (auto it = p.c.rbegin() + 1; it != p.c.rend(); ++it) r = r * x + CJ2(*it);
    return r;
}

CJ2 eval_on_jet(const FastRat& f, const CJ2& x) {
    return eval_on_jet(f.num, x) / eval_on_jet(f.den, x);
}

// Heisenberg 5-state jet of the lift at xi: (t, X1, Y1, X2, Y2).
std::array<RJ2, 5> lift_state_jet(const Lift& lift, Cplx xi) {
    CJ2 xj = jet_complexify(RJ2::var_u(xi.real()), RJ2::var_v(xi.imag()));
    CJ2 f1 = eval_on_jet(lift.cf1, xj);
    CJ2 f2 = eval_on_jet(lift.cf2, xj);
    CJ2 g = eval_on_jet(lift.cg, xj);
    // T(z1, z2) = (Re z1 + i Re z2, Im z2 + i Im z1)
    return {jet_re(g), jet_re(f1), jet_re(f2), jet_im(f2), jet_im(f1)};
}

}  // namespace

VariationEstimate first_variation_lift(const Lift& lift, const LiftVariationConfig& cfg,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x6a09e667f3bcc909ull + 11);
    std::uniform_real_distribution<double> box(-0.6, 0.6);

    // Bump centered on the lift image of a random interior point of the patch.
    Cplx xi0 = cfg.patch_center +
               cfg.patch_radius * Cplx(box(rng), box(rng));
    HeisPoint c0 = lift.at(xi0);
    Bump<5> bump;
    bump.center = {c0.t, c0.z[0].real(), c0.z[0].imag(), c0.z[1].real(), c0.z[1].imag()};

    // Radius: a fraction of the minimal distance from the center to the lift
    // image of the square patch boundary, so the support stays inside the patch.
    double min_bd = std::numeric_limits<double>::infinity();
    const int nb = 128;
    for (int k = 0; k < nb; ++k) {
        double s = -1.0 + 2.0 * k / (nb - 1);
        for (Cplx edge : {Cplx(s, -1), Cplx(s, 1), Cplx(-1, s), Cplx(1, s)}) {
            Cplx xi = cfg.patch_center + cfg.patch_radius * edge;
            HeisPoint q = lift.at(xi);
            double dist = std::sqrt(std::pow(q.t - c0.t, 2) + std::norm(q.z[0] - c0.z[0]) +
                                    std::norm(q.z[1] - c0.z[1]));
            min_bd = std::min(min_bd, dist);
        }
    }
    bump.rho = cfg.bump_radius_frac * min_bd;
    bump.amplitude = cfg.bump_amplitude * bump.rho * bump.rho;

    std::vector<double> nodes, weights;
    gauss_legendre(cfg.gauss_order, nodes, weights);

    auto energy = [&](double eps) {
        std::vector<double> cell(static_cast<std::size_t>(cfg.gauss_order) *
                                 cfg.gauss_order);
        parallel_for_indexed(static_cast<long>(cell.size()), [&](long k) {
            int i = static_cast<int>(k) / cfg.gauss_order;
            int j = static_cast<int>(k) % cfg.gauss_order;
            Cplx xi = cfg.patch_center + cfg.patch_radius * Cplx(nodes[i], nodes[j]);
            std::array<RJ2, 5> w = lift_state_jet(lift, xi);
            if (eps != 0.0) {
                auto field = [&bump](const std::array<RJ2, 5>& s) {
                    return heis_contact_field(bump, s);
                };
                w = rk4_flow(field, w, eps, cfg.rk_steps);
            }
            std::array<RJ2, 4> z{w[1], w[2], w[3], w[4]};
            cell[k] = weights[i] * weights[j] * half_b0_density_r4(z);
        });
        double sum = 0;
        for (double c : cell) sum += c;
        return sum * cfg.patch_radius * cfg.patch_radius;
    };

    VariationEstimate out;
    out.eps = cfg.eps;
    out.base_energy = energy(0.0);
    double d_coarse = (energy(cfg.eps) - energy(-cfg.eps)) / (2 * cfg.eps);
    double d_fine = (energy(cfg.eps / 2) - energy(-cfg.eps / 2)) / cfg.eps;
    out.derivative = (4 * d_fine - d_coarse) / 3;
    out.error_bar = std::abs(d_fine - d_coarse) / 3;
    return out;
}

}  // namespace wl
