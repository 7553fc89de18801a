#pragma once

#include "wl/invariants.hpp"
#include "wl/surfaces.hpp"
#include "wl/weierstrass.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace wl {

struct FlowStepUnstable : std::runtime_error {
    FlowStepUnstable() : std::runtime_error("contact flow step produced a non-finite state") {}
};

namespace detail {

template <typename S>
double scalar_of(const S& s) {
    if constexpr (std::is_arithmetic_v<S>) return s;
    else return s.value();
}

template <typename S>
S recip_of(const S& s) {
    if constexpr (std::is_arithmetic_v<S>) return S(1) / s;
    else return reciprocal(s);
}

template <typename S>
S exp_of(const S& s) {
    if constexpr (std::is_arithmetic_v<S>) return std::exp(s);
    else return jet_exp(s);
}

}  // namespace detail

/// Compactly supported mollifier A * exp(1 - 1/(1 - |w - c|^2 / rho^2)) on R^M,
/// identically zero where |w - c| >= rho. Works over doubles and real jets.
template <std::size_t M>
struct Bump {
    std::array<double, M> center{};
    double rho = 1.0;
    double amplitude = 1.0;

    template <typename S>
    S value(const std::array<S, M>& w) const {
        S s{};
        for (std::size_t k = 0; k < M; ++k) {
            S d = w[k] - S(center[k]);
            s += d * d;
        }
        s = S(1.0 / (rho * rho)) * s;
        if (detail::scalar_of(s) >= 0.995) return S{};
        S one_minus = -s + S(1);
        return S(amplitude) * detail::exp_of(S(1) - detail::recip_of(one_minus));
    }

    template <typename S>
    std::array<S, M> gradient(const std::array<S, M>& w) const {
        std::array<S, M> g{};
        S s{};
        for (std::size_t k = 0; k < M; ++k) {
            S d = w[k] - S(center[k]);
            s += d * d;
        }
        s = S(1.0 / (rho * rho)) * s;
        if (detail::scalar_of(s) >= 0.995) return g;
        S one_minus = -s + S(1);
        S inv = detail::recip_of(one_minus);
        // chi'(s) = -chi(s) / (1-s)^2
        S chi = S(amplitude) * detail::exp_of(S(1) - inv);
        S chip = -(chi * inv * inv);
        for (std::size_t k = 0; k < M; ++k)
            g[k] = S(2.0 / (rho * rho)) * chip * (w[k] - S(center[k]));
        return g;
    }
};

/// Contact Hamiltonian vector field on the Heisenberg model V = R x C^2 with
/// contact form dt - sum(x dy - y dx); state layout (t, x1, y1, x2, y2).
template <typename S>
std::array<S, 5> heis_contact_field(const Bump<5>& H, const std::array<S, 5>& w) {
    S h = H.value(w);
    auto g = H.gradient(w);
    std::array<S, 5> dot{};
    // x_k' = (H_t x_k + H_{y_k})/2, y_k' = (H_t y_k - H_{x_k})/2
    dot[1] = S(0.5) * (g[0] * w[1] + g[2]);
    dot[2] = S(0.5) * (g[0] * w[2] - g[1]);
    dot[3] = S(0.5) * (g[0] * w[3] + g[4]);
    dot[4] = S(0.5) * (g[0] * w[4] - g[3]);
    // t' = H - (x H_x + y H_y)/2
    dot[0] = h - S(0.5) * (w[1] * g[1] + w[2] * g[2] + w[3] * g[3] + w[4] * g[4]);
    return dot;
}

/// Contact Hamiltonian vector field on S^5 subset R^6, contact form
/// alpha(v) = <v, J w>; state layout (a1, b1, a2, b2, a3, b3), x_k = a_k + i b_k.
/// X_H = H J w + (1/2)(dH(Jw)) w + (1/2) J grad~ H.
template <typename S>
std::array<S, 6> s5_contact_field(const Bump<6>& H, const std::array<S, 6>& w) {
    S h = H.value(w);
    auto g = H.gradient(w);
    auto J = [](const std::array<S, 6>& v) {
        return std::array<S, 6>{-v[1], v[0], -v[3], v[2], -v[5], v[4]};
    };
    auto dotp = [](const std::array<S, 6>& a, const std::array<S, 6>& b) {
        S s{};
        for (int k = 0; k < 6; ++k) s += a[k] * b[k];
        return s;
    };
    std::array<S, 6> Jw = J(w);
    S gn = dotp(g, w);          // normal component of grad H
    S rh = dotp(g, Jw);         // Reeb derivative dH(Jw)
    std::array<S, 6> gt;
    for (int k = 0; k < 6; ++k) gt[k] = g[k] - gn * w[k];
    std::array<S, 6> Jgt = J(gt);
    std::array<S, 6> dot;
    for (int k = 0; k < 6; ++k)
        dot[k] = h * Jw[k] + S(0.5) * rh * w[k] + S(0.5) * Jgt[k];
    return dot;
}

/// Classical fixed-step RK4; throws FlowStepUnstable on non-finite states.
template <typename State, typename Field>
State rk4_flow(const Field& field, State w, double time, int steps) {
    double h = time / steps;
    for (int s = 0; s < steps; ++s) {
        State k1 = field(w);
        State w2 = w;
        for (std::size_t j = 0; j < w.size(); ++j) w2[j] = w[j] + (h / 2) * k1[j];
        State k2 = field(w2);
        for (std::size_t j = 0; j < w.size(); ++j) w2[j] = w[j] + (h / 2) * k2[j];
        State k3 = field(w2);
        for (std::size_t j = 0; j < w.size(); ++j) w2[j] = w[j] + h * k3[j];
        State k4 = field(w2);
        for (std::size_t j = 0; j < w.size(); ++j)
            w[j] = w[j] + (h / 6) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        for (std::size_t j = 0; j < w.size(); ++j)
            if (!std::isfinite(detail::scalar_of(w[j]))) throw FlowStepUnstable();
    }
    return w;
}

/// Surface moved by the contact Hamiltonian flow on S^5 for time eps;
/// derivatives ride along as order-4 jets through the variational equation.
class FlowedSurface final : public SurfaceJet {
public:
    FlowedSurface(std::shared_ptr<const SurfaceJet> base, Bump<6> bump, double eps,
                  int rk_steps = 32)
        : base_(std::move(base)), bump_(bump), eps_(eps), steps_(rk_steps) {}

    std::array<CJet4, 3> jets(double u, double v) const override;
    SurfaceDomain domain() const override { return base_->domain(); }

private:
    std::shared_ptr<const SurfaceJet> base_;
    Bump<6> bump_;
    double eps_;
    int steps_;
};

struct VariationEstimate {
    double derivative = 0;   // d W / d eps at eps = 0 (central, Richardson)
    double error_bar = 0;    // |refined - coarse| step-halving estimate
    double base_energy = 0;  // localized energy at eps = 0
    double eps = 0;
};

/// First variation of the S^5 Willmore energy under the contact Hamiltonian
/// flow of the bump, by central differences at +-eps, +-eps/2 over the full
/// fundamental domain.
VariationEstimate first_variation_s5(const SurfaceJet& base, const Bump<6>& bump,
                                     double eps, int grid_nu, int grid_nv,
                                     int rk_steps = 32);

/// Bump centered at the surface point x(u0, v0); radius in ambient units.
Bump<6> make_surface_bump_at(const SurfaceJet& s, double u0, double v0,
                             double radius = 0.35, double amplitude = 0.1);

/// Seeded variant: the center parameter is drawn from the domain interior.
Bump<6> make_surface_bump(const SurfaceJet& s, std::uint64_t seed, double radius = 0.35,
                          double amplitude = 0.1);

/// The (u, v) parameter the seeded variant picks (for tests and reports).
std::array<double, 2> surface_bump_param(const SurfaceJet& s, std::uint64_t seed);

/// First variation of the Willmore energy of a type-C lift under a compactly
/// supported contact Hamiltonian in the Heisenberg model. The energy is the
/// localized integral of (1/2)|B_0|^2 dA of the Lagrangian projection over a
/// parameter patch containing the bump support.
struct LiftVariationConfig {
    Cplx patch_center{0.0, 0.0};
    double patch_radius = 0.6;   // half side of the parameter square
    int gauss_order = 20;        // tensor Gauss-Legendre points per axis
    double eps = 5e-3;           // variation parameter
    int rk_steps = 24;
    double bump_radius_frac = 0.4;   // of the lift image spread over the patch
    double bump_amplitude = 0.05;
};

VariationEstimate first_variation_lift(const Lift& lift, const LiftVariationConfig& cfg,
                                       std::uint64_t seed);

/// Energy density (1/2)|B_0|^2 sqrt(det g) of a surface patch in R^4 given an
/// order-2 jet of the immersion.
double half_b0_density_r4(const std::array<Jet2<2, double>, 4>& z);

}  // namespace wl
