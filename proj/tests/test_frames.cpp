#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wl/frames.hpp"

#include <cmath>

using namespace wl;

TEST_CASE("standard frame matches the model Gram matrix exactly") {
    CHECK(frame_gram_residual(AdaptedFrame::standard()) == 0.0);
}

TEST_CASE("random transported frames preserve the Gram matrix") {
    double worst = 0;
    for (std::uint64_t s = 0; s < 1000; ++s)
        worst = std::max(worst, frame_gram_residual(make_frame(FrameKind::random_transported, s)));
    CHECK(worst < 1e-10);
}

TEST_CASE("class C samples kill both differentials") {
    for (std::uint64_t s = 0; s < 64; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::C, s);
        auto [phi, psi] = phi_psi(c);
        CHECK(phi == Cplx(0, 0));
        CHECK(psi == Cplx(0, 0));
        CHECK(c.r == 0.0);
    }
}

TEST_CASE("class B samples: quartic zero, sextic nonzero, derived relations") {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::B, s);
        auto [phi, psi] = phi_psi(c);
        CHECK(std::abs(phi) < 1e-14);
        CHECK(std::abs(psi) > 1e-5);
        CHECK(std::abs(c.p * c.z - c.h * c.y) > 1e-5);
        CHECK(std::abs(c.h * c.x - c.p * c.y + c.q * c.z) < 1e-12);
        CHECK(std::abs(consequence_identity(c)) < 1e-12);
    }
}

TEST_CASE("as-printed constraint set fails the consequence identity as -h^2(x-z)^2/2") {
    int nonzero = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::B, s, ConstraintSet::as_printed);
        Cplx expect = -0.5 * c.h * c.h * (c.x - c.z) * (c.x - c.z);
        CHECK(std::abs(consequence_identity(c) - expect) < 1e-12);
        if (std::abs(expect) > 1e-6) ++nonzero;
    }
    CHECK(nonzero > 150);
}

TEST_CASE("phi_psi direct arithmetic") {
    FrameCoeffs c;
    c.h = 1;
    c.q = 1;
    auto [phi, psi] = phi_psi(c);
    CHECK(phi == Cplx(1, 0));
    CHECK(psi == Cplx(0, 0));
}

TEST_CASE("<Y, conj Y> = 0 without any constraints") {
    AdaptedFrame f = AdaptedFrame::standard();
    for (std::uint64_t s = 0; s < 500; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::unconstrained, s);
        if (std::abs(c.h) + std::abs(c.p) < 1e-12) continue;
        DualTriple d = dual_map(f, c);
        CHECK(std::abs(herm_product(d.Y, d.Y)) < 1e-13 * (1 + d.Y.norm() * d.Y.norm()));
    }
}

TEST_CASE("duality residuals vanish on class B over standard and random frames") {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::B, s);
        AdaptedFrame f = (s % 2) ? make_frame(FrameKind::random_transported, s)
                                 : AdaptedFrame::standard();
        DualityResiduals r = duality_residuals(dual_map(f, c), c);
        CHECK(r.max_normalized() < 1e-10);
    }
}

TEST_CASE("duality identities on class B under the as-printed relation") {
    // The six scalar-product identities depend only on the quartic constraint
    // hq = p^2/2, so they hold under both closures of the constraint set.
    for (std::uint64_t s = 0; s < 200; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::B, s, ConstraintSet::as_printed);
        DualityResiduals r = duality_residuals(dual_map(AdaptedFrame::standard(), c), c);
        CHECK(r.max_normalized() < 1e-10);
    }
}

TEST_CASE("class C duals are multiples of Z3") {
    AdaptedFrame f = AdaptedFrame::standard();
    for (std::uint64_t s = 0; s < 64; ++s) {
        FrameCoeffs c = sample_coefficients(CoeffClass::C, s);
        DualTriple d = dual_map(f, c);
        double h2 = std::norm(c.h);
        CHECK(std::abs(d.Y[3] - h2) < 1e-14);
        CHECK(std::abs(d.Y[0]) + std::abs(d.Y[1]) + std::abs(d.Y[2]) < 1e-14);
        // p = q = y = 0 makes Y+- parallel to the null Z3, so every identity
        // degenerates to 0 = 0
        DualityResiduals r = duality_residuals(d, c);
        CHECK(r.max_normalized() < 1e-10);
    }
}

TEST_CASE("zero dual raises") {
    FrameCoeffs c;
    c.z = 1;
    CHECK_THROWS_AS(dual_map(AdaptedFrame::standard(), c), ZeroDual);
}

TEST_CASE("homogeneity: scaling coefficients scales residuals consistently") {
    FrameCoeffs c = sample_coefficients(CoeffClass::B, 42);
    AdaptedFrame f = AdaptedFrame::standard();
    DualityResiduals r1 = duality_residuals(dual_map(f, c), c);
    FrameCoeffs ct = c;
    double t = 2.5;
    ct.h *= t;
    ct.p *= t;
    ct.q *= t;
    ct.z *= t;
    ct.y *= t;
    ct.x *= t;
    DualityResiduals r2 = duality_residuals(dual_map(f, ct), ct);
    CHECK(r2.max_normalized() < 1e-10);
    CHECK(r1.max_normalized() < 1e-10);
    // the target quantity scales like t^4
    CHECK(std::norm(ct.p * ct.z - ct.h * ct.y) ==
          doctest::Approx(std::pow(t, 4) * std::norm(c.p * c.z - c.h * c.y)));
}
