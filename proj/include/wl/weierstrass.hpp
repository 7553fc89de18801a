#pragma once

#include "wl/pcmodel.hpp"
#include "wl/quadrature.hpp"
#include "wl/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace wl {

/// One point of the pole divisor.
struct PolePoint {
    std::optional<GaussRat> exact;  // set when the location is known in Q(i)
    Cplx approx{};                  // float location (valid unless at_infinity)
    bool at_infinity = false;
    int order = 0;                  // max pole order over the two components
};

/// Weierstrass datum: a pair of rational functions with its pole divisor.
struct MeroCurve {
    RatFunc f1, f2;
    std::vector<PolePoint> poles;

    static MeroCurve make(RatFunc f1, RatFunc f2);

    /// f1 df2 - f2 df1 as a one-form in the affine chart.
    OneForm liouville_form() const;

    /// The curve read in the chart at infinity: (f1(1/w), f2(1/w)).
    MeroCurve at_infinity_chart() const;

    std::array<Cplx, 2> eval(Cplx xi, double eps_pole = 1e-9) const;
};

/// Exact substitution f(1/w) as a rational function of w.
RatFunc invert_argument(const RatFunc& f);
/// Exact substitution f(a w + b).
RatFunc compose_affine(const RatFunc& f, const GaussRat& a, const GaussRat& b);

struct ResidueInfo {
    PolePoint pole;
    bool simple = false;
    Cplx residue{};       // residue of f1 df2 - f2 df1 at the pole
    bool residue_exact = false;
    bool residue_zero = false;
};

struct ValidationReport {
    std::vector<ResidueInfo> poles;
    bool all_poles_simple = false;
    bool all_residues_zero = false;  // exact statement, via Hermite reduction
    bool immersion_ok = false;
    std::optional<Cplx> immersion_witness;  // a point where both derivatives vanish
    bool is_valid = false;
};

/// Checks the three conditions on the Weierstrass datum: simple poles,
/// exactly vanishing residues of f1 df2 - f2 df1, immersion (including the
/// point at infinity in the CP^2 completion).
ValidationReport validate_data(const MeroCurve& curve);

/// Legendrian lift (t, z) = (Re g, T(f)) with dg = f1 df2 - f2 df1 exactly.
struct Lift {
    MeroCurve curve;
    RatFunc primitive;
    StereoChart chart;
    // evaluation snapshots
    FastRat cf1, cf2, cg, cf1p, cf2p, cgp;

    HeisPoint at(Cplx xi, double eps_pole = 1e-9) const;
    HeisTangent tangent_u(Cplx xi) const;  // d/d(Re xi) of the lift
    HeisTangent tangent_v(Cplx xi) const;  // d/d(Im xi)
};

Lift legendrian_lift(const MeroCurve& curve, const StereoChart& chart);

/// Lift sampler that tolerates log terms: t picks up sum Re(res * Log(xi-p)).
/// Only for end-closure diagnostics of invalid data.
struct DiagnosticLift {
    MeroCurve curve;
    RatFunc rational_part;
    std::vector<std::pair<Cplx, Cplx>> log_terms;  // (pole, residue)
    StereoChart chart;
    FastRat cf1, cf2, cg;

    HeisPoint at(Cplx xi, double eps_pole = 1e-9) const;
};

DiagnosticLift diagnostic_lift(const MeroCurve& curve, const StereoChart& chart);

struct DivergentEnd : std::runtime_error {
    double log_slope;
    DivergentEnd(double slope)
        : std::runtime_error("end does not close: lift t drifts like " +
                             std::to_string(slope) + " * log r"),
          log_slope(slope) {}
};

struct ClosureReport {
    std::vector<double> radii;
    std::vector<double> sup_dist;       // involution-image distance to the origin limit
    std::vector<double> c1_defect;      // variation of radial divided differences
    double t_log_slope = 0;             // circle-mean of lift t against log r
    double t_branch_jump = 0;           // jump of t around the circle (multivaluedness)
    bool converged = false;
};

/// Applies the involution to lift samples on circles around the pole and
/// measures C^1 convergence of the images together with the log-growth of the
/// lift's t coordinate. `check` throws DivergentEnd, `report` never throws.
ClosureReport end_closure_report(const DiagnosticLift& lift, Cplx pole,
                                 const std::vector<double>& radii);
ClosureReport end_closure_check(const DiagnosticLift& lift, Cplx pole,
                                const std::vector<double>& radii);

struct DegenerateGaussMap : std::runtime_error {
    DegenerateGaussMap() : std::runtime_error("Gauss map is constant: curve lies in a line") {}
};

/// Degree of the reduced rational map [f1' : f2'] on CP^1.
int gauss_map_degree(const MeroCurve& curve);

/// Gauss curvature of the induced metric at a regular point:
/// K = -2|W|^2 / lambda^6, W = f1' f2'' - f2' f1'', lambda^2 = |f1'|^2 + |f2'|^2.
double curvature_at(const MeroCurve& curve, Cplx xi, double eps_pole = 1e-9);

/// Total-curvature integrand 2|W|^2/lambda^4 of the given chart.
double curvature_density(const MeroCurve& curve, Cplx xi);

struct EnergyReport {
    double formula_value = 0;     // 4 pi (|D| - 1), genus 0
    bool formula_applicable = false;
    int gauss_degree = 0;
    double degree_value = 0;      // 2 pi deg
    double quadrature_value = 0;  // integral of -K dA over both charts
    double quadrature_error = 0;
    double excision_drift = 0;    // spread over the excision sweep
    bool quadrature_converged = true;
};

EnergyReport willmore_energy(const MeroCurve& curve, const QuadConfig& cfg = {});

/// Seeded exact solver for valid (k,l) = (2,2) instances: four Gaussian-rational
/// simple poles, exactly vanishing residues, Gauss degree 6.
MeroCurve sample_valid_curve_22(std::uint64_t seed);

}  // namespace wl
