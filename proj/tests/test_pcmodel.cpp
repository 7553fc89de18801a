#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wl/frames.hpp"
#include "wl/pcmodel.hpp"

#include <cmath>
#include <random>

using namespace wl;

namespace {

std::mt19937_64 rng(777);

double uni(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

HeisPoint random_point(double m = 3.0) {
    HeisPoint p;
    p.t = uni(-m, m);
    p.z = {Cplx(uni(-m, m), uni(-m, m)), Cplx(uni(-m, m), uni(-m, m))};
    return p;
}

double dist(const HeisPoint& a, const HeisPoint& b) {
    return std::sqrt(std::pow(a.t - b.t, 2) + std::norm(a.z[0] - b.z[0]) +
                     std::norm(a.z[1] - b.z[1]));
}

StereoChart random_chart(std::uint64_t seed) {
    AdaptedFrame f = make_frame(FrameKind::random_transported, seed);
    return StereoChart(f.Z0, f.Z3, 1e-8);
}

}  // namespace

TEST_CASE("hermitian form on basis vectors") {
    CVec4 e0 = CVec4::basis(0), e1 = CVec4::basis(1), e3 = CVec4::basis(3);
    CHECK(herm_product(e1, e1) == Cplx(1, 0));
    CHECK(herm_product(e0, e3) == Cplx(0, 1));
    CHECK(herm_product(e3, e0) == Cplx(0, -1));
    CVec4 n = e0 + e3;
    CHECK(herm_product(n, n) == Cplx(0, 0));
    // sesquilinearity and reality of the square
    CVec4 a, b;
    for (int k = 0; k < 4; ++k) {
        a[k] = Cplx(uni(-1, 1), uni(-1, 1));
        b[k] = Cplx(uni(-1, 1), uni(-1, 1));
    }
    Cplx s(0.7, -0.3);
    CHECK(std::abs(herm_product(s * a, b) - s * herm_product(a, b)) < 1e-14);
    CHECK(std::abs(herm_product(a, s * b) - std::conj(s) * herm_product(a, b)) < 1e-14);
    CHECK(std::abs(herm_product(a, a).imag()) < 1e-14);
}

TEST_CASE("unproject hits the null slice") {
    StereoChart chart = StereoChart::standard();
    CHECK(stereo_unproject(chart, HeisPoint{}).v == CVec4::basis(0).v);
    for (int k = 0; k < 1000; ++k) {
        HeisPoint p = random_point();
        CVec4 w = stereo_unproject(chart, p);
        CHECK(std::abs(herm_product(w, w)) < 1e-12 * w.norm() * w.norm());
        CHECK(std::abs(herm_product(w, chart.w3()) - Cplx(0, 1)) < 1e-12);
    }
    // (t, 0) -> w0 + t w3
    HeisPoint p;
    p.t = 2.25;
    CVec4 w = stereo_unproject(chart, p);
    CHECK(std::abs(w[0] - 1.0) < 1e-15);
    CHECK(std::abs(w[3] - 2.25) < 1e-15);
}

TEST_CASE("projection round-trip, standard and random charts") {
    StereoChart charts[] = {StereoChart::standard(), random_chart(3), random_chart(9)};
    for (const auto& chart : charts) {
        for (int k = 0; k < 2000; ++k) {
            HeisPoint p = random_point();
            HeisPoint q = stereo_project(chart, stereo_unproject(chart, p));
            CHECK(dist(p, q) < 1e-11);
        }
        // paper example: Qhat(1.5, (1+2i, 3)) projects back
        HeisPoint p;
        p.t = 1.5;
        p.z = {Cplx(1, 2), Cplx(3, 0)};
        CHECK(dist(stereo_project(chart, stereo_unproject(chart, p)), p) < 1e-12);
        CHECK_THROWS_AS(stereo_project(chart, chart.w3()), AtInfinity);
        // scale invariance of the projective input
        CVec4 w = stereo_unproject(chart, p);
        HeisPoint q = stereo_project(chart, Cplx(0.3, -1.7) * w);
        CHECK(dist(p, q) < 1e-11);
    }
}

TEST_CASE("metric preservation under the quadratic chart map") {
    StereoChart chart = StereoChart::standard();
    for (int k = 0; k < 200; ++k) {
        HeisPoint p = random_point(1.5);
        HeisTangent v;
        v.tdot = uni(-1, 1);
        v.zdot = {Cplx(uni(-1, 1), uni(-1, 1)), Cplx(uni(-1, 1), uni(-1, 1))};
        double h = 1e-5;
        HeisPoint pp = p, pm = p;
        pp.t += h * v.tdot;
        pm.t -= h * v.tdot;
        for (int j = 0; j < 2; ++j) {
            pp.z[j] += h * v.zdot[j];
            pm.z[j] -= h * v.zdot[j];
        }
        CVec4 push = (Cplx(1 / (2 * h), 0)) *
                     (stereo_unproject(chart, pp) - stereo_unproject(chart, pm));
        double expect = std::norm(v.zdot[0]) + std::norm(v.zdot[1]);
        CHECK(std::abs(herm_product(push, push).real() - expect) < 1e-10 * (1 + expect));
        // the pushforward stays tangent to the slice
        CHECK(std::abs(herm_product(push, chart.w3())) < 1e-10);
    }
}

TEST_CASE("involution: paper-pinned values and the involution property") {
    HeisPoint p;
    p.t = 1.0;
    HeisPoint q = involution(p);
    CHECK(q.t == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(q.z[0]) + std::abs(q.z[1]) < 1e-15);

    // fixed locus {t = 0, |z|^2 = 2}
    HeisPoint s;
    s.z = {Cplx(1, 0), Cplx(0, -1)};
    HeisPoint si = involution(s);
    CHECK(dist(s, si) < 1e-15);

    for (int k = 0; k < 10000; ++k) {
        HeisPoint a = random_point();
        double z2 = std::norm(a.z[0]) + std::norm(a.z[1]);
        if (std::abs(Cplx(a.t, -z2 / 2)) < 1e-3) continue;
        HeisPoint b = involution(involution(a));
        CHECK(dist(a, b) < 1e-11 * (1 + dist(a, HeisPoint{})));
    }
    CHECK_THROWS_AS(involution(HeisPoint{}), OriginSingular);
}

TEST_CASE("involution swaps origin and infinity neighborhoods") {
    // large points map near the origin, small ones far away
    HeisPoint far;
    far.t = 1e8;
    HeisPoint nf = involution(far);
    CHECK(std::abs(nf.t) < 1e-7);
    HeisPoint tiny;
    tiny.t = 1e-8;
    CHECK(std::abs(involution(tiny).t) > 1e7);
}

TEST_CASE("contact form values") {
    HeisPoint o;
    HeisTangent v;
    v.tdot = 1;
    CHECK(contact_form_eval(o, v) == 1.0);

    HeisPoint p;
    p.z = {Cplx(1, 0), 0};
    HeisTangent w;
    w.zdot = {Cplx(0, 1), 0};
    CHECK(contact_form_eval(p, w) == doctest::Approx(-1.0));

    // radial directions are horizontal
    for (int k = 0; k < 100; ++k) {
        HeisPoint a = random_point();
        double s = uni(-2, 2);
        HeisTangent r;
        r.zdot = {s * a.z[0], s * a.z[1]};
        CHECK(std::abs(contact_form_eval(a, r)) < 1e-13);
    }
}

TEST_CASE("ruling direction pushes to the Reeb field") {
    // The fiber w + s w3 of P maps to t-translation: contact value 1, E-part 0.
    StereoChart chart = StereoChart::standard();
    HeisPoint p = random_point(1.0);
    CVec4 w = stereo_unproject(chart, p);
    double h = 1e-6;
    HeisPoint q = stereo_project(chart, w + Cplx(h, 0) * chart.w3());
    CHECK(std::abs((q.t - p.t) / h - 1.0) < 1e-8);
    CHECK(std::abs(q.z[0] - p.z[0]) < 1e-12);
    CHECK(std::abs(q.z[1] - p.z[1]) < 1e-12);
}

TEST_CASE("lagrangian chart is an isometric permutation") {
    CHECK(lagrangian_chart({Cplx(1, 0), Cplx(0, 1)}) ==
          std::array<Cplx, 2>{Cplx(1, 0), Cplx(1, 0)});
    for (int k = 0; k < 200; ++k) {
        std::array<Cplx, 2> z{Cplx(uni(-2, 2), uni(-2, 2)), Cplx(uni(-2, 2), uni(-2, 2))};
        auto w = lagrangian_chart(z);
        double nz = std::norm(z[0]) + std::norm(z[1]);
        double nw = std::norm(w[0]) + std::norm(w[1]);
        CHECK(nz == doctest::Approx(nw).epsilon(1e-14));
    }
}

TEST_CASE("lagrangian chart kills the symplectic form on holomorphic maps") {
    // f(xi) = (xi, xi^2); finite-difference pullback of sum dX^k ^ dY^k
    auto surf = [](Cplx xi) {
        return lagrangian_chart({xi, xi * xi});
    };
    for (int k = 0; k < 10; ++k) {
        Cplx xi(uni(-1, 1), uni(-1, 1));
        double h = 1e-4;
        auto du = [&](Cplx d) {
            auto a = surf(xi + d), b = surf(xi - d);
            return std::array<Cplx, 2>{(a[0] - b[0]) / (2 * h), (a[1] - b[1]) / (2 * h)};
        };
        auto fu = du(Cplx(h, 0)), fv = du(Cplx(0, h));
        // omega(U, V) = sum_k Ux_k Vy_k - Uy_k Vx_k
        double om = 0;
        for (int j = 0; j < 2; ++j)
            om += fu[j].real() * fv[j].imag() - fu[j].imag() * fv[j].real();
        CHECK(std::abs(om) < 1e-8);
    }
}
