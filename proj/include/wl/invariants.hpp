#pragma once

#include "wl/surfaces.hpp"

#include <stdexcept>

namespace wl {

struct DegenerateMetric : std::runtime_error {
    DegenerateMetric() : std::runtime_error("induced metric is degenerate") {}
};

struct JetOrderInsufficient : std::runtime_error {
    JetOrderInsufficient() : std::runtime_error("order-4 jets required") {}
};

/// Pointwise metric-level invariants of a Legendrian surface in S^5, expressed
/// in the positively oriented orthonormal coframe built from (x_u, x_v).
struct PointInvariants {
    double g11, g12, g22, det_g;
    double K;                       // Gauss curvature of the induced metric (Brioschi)
    double b111, b112, b122, b222;  // cubic beta in the orthonormal coframe
    double h1, h2;                  // trace-free coefficients
    double delta1, delta2;          // mean-curvature one-form eta = d1 w1 + d2 w2
    double d11, d12, d22;           // covariant derivatives of delta_i
    double reeb_component;          // max |<II, J x>| (zero for Legendrian input)
    double beta_symmetry_defect;    // worst asymmetry of beta over index swaps
    double trace_beta0;             // trace of the split-off beta_0 (zero by construction)
    double legendrian_residual;     // max |Im <dx, conj x>| at the point
    double unit_defect;             // | |x|^2 - 1 |
};

PointInvariants fundamental_forms(const SurfaceJet& s, double u, double v);

/// sup over an nu x nv midpoint grid of |Im<x_u, conj x>| + |Im<x_v, conj x>|.
double legendrian_check(const SurfaceJet& s, int nu, int nv);

/// |K - (1 - 2(h1^2+h2^2) + 2(delta1^2+delta2^2))| at a point.
double gauss_equation_residual(const PointInvariants& inv);

/// Quadrature of 2(h1^2+h2^2) dA over the fundamental domain (midpoint rule,
/// spectral for periodic directions).
double willmore_energy_s5(const SurfaceJet& s, int nu, int nv);

struct WillmoreResidual {
    double residual;            // |*d*(1/2 lap eta + eta) + 2 grad_{eta#}|eta|^2 + coupling|
    double coupling_invariant;  // (2/3) <eta# . beta0, grad eta> via coordinate tensors
    double coupling_expanded;   // 2[(d11-d22)(d1 h1 + d2 h2) + 2 d12 (d1 h2 - d2 h1)]
    double route_mismatch;      // |coupling_invariant - coupling_expanded|
};

/// Euler-Lagrange residual of the S^5 Willmore equation at a point. The
/// codifferential convention is *d* alpha = div(alpha#); order-4 jets feed the
/// pointwise terms, the outer divergence uses a central-difference stencil of
/// width fd_step.
WillmoreResidual willmore_residual(const SurfaceJet& s, double u, double v,
                                   double fd_step = 1e-4);

/// 2(h1^2 + h2^2) sqrt(det g) from an order-2 jet of x; enough for the energy
/// integrand of flowed surfaces.
double energy_density_from_2jets(const std::array<Jet2<2, Cplx>, 3>& x);

}  // namespace wl
