#pragma once

#include "wl/pcmodel.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace wl {

/// Frame (Z0, Z+, Z-, Z3) of C^{3,1} with the model Gram matrix
/// <Z0,conj Z3> = i, <Z+,conj Z+> = <Z-,conj Z-> = 2, all other products zero.
struct AdaptedFrame {
    CVec4 Z0, Zp, Zm, Z3;

    static AdaptedFrame standard();
};

/// Max absolute deviation of the frame's Gram matrix from the model one.
double frame_gram_residual(const AdaptedFrame& f);

enum class FrameKind { standard, random_transported };

/// standard: basis frame. random_transported: standard frame moved by a
/// seeded product of elementary form-preserving transformations (scalings,
/// U(2) rotations, null translations), composition length 8.
AdaptedFrame make_frame(FrameKind kind, std::uint64_t seed = 0);

/// Structure scalars in the gauge rho = phi = 0, omega = dxi. r is real and
/// zero for Willmore fixtures.
struct FrameCoeffs {
    Cplx h, p, q, z, y, x;
    double r = 0.0;
};

enum class CoeffClass { B, C, unconstrained };

/// Which first-order relation closes the type-B constraint set:
/// derived = hx - py + qz = 0 (differentiating hq - p^2/2 = 0 along omega),
/// as_printed = hz - py + qz = 0 (relation as printed in the source).
enum class ConstraintSet { derived, as_printed };

struct RejectionExhausted : std::runtime_error {
    RejectionExhausted() : std::runtime_error("coefficient sampling rejection exhausted") {}
};

FrameCoeffs sample_coefficients(CoeffClass cls, std::uint64_t seed,
                                ConstraintSet constraints = ConstraintSet::derived);

/// Coefficients of the quartic and sextic differentials:
/// (hq - p^2/2, zx - y^2/2).
std::pair<Cplx, Cplx> phi_psi(const FrameCoeffs& c);

struct DualTriple {
    CVec4 Y, Yp, Ym;
};

struct ZeroDual : std::runtime_error {
    ZeroDual() : std::runtime_error("dual map vanishes: h = p = 0") {}
};

/// Y = (i/2)(|p|^2 Z0 + h conj(p) Z+ + conj(h) p Z-) + |h|^2 Z3, and the
/// derivative directions Y+, Y- with coefficients as in the structure theory.
DualTriple dual_map(const AdaptedFrame& f, const FrameCoeffs& c);

struct DualityResiduals {
    double yy;      // |<Y, conj Y>|
    double yyp;     // |<Y, conj Y+>|
    double yym;     // |<Y, conj Y->|
    double ypym;    // |<Y+, conj Y->|
    double ypyp;    // |<Y+, conj Y+> - 2|pz - hy|^2|
    double ymym;    // |<Y-, conj Y-> - 2|pz - hy|^2|
    double scale;   // homogeneous magnitude of the identities

    double max_normalized() const;
};

DualityResiduals duality_residuals(const DualTriple& d, const FrameCoeffs& c);

/// (pz - hy)(qy - px) - (hx - qz)^2 / 2; vanishes under the derived type-B
/// constraints, equals -h^2 (x - z)^2 / 2 under the as-printed set.
Cplx consequence_identity(const FrameCoeffs& c);

}  // namespace wl
