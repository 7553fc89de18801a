#pragma once

#include "wl/jets.hpp"
#include "wl/pcmodel.hpp"

#include <array>
#include <memory>
#include <string>

namespace wl {

using CJet4 = Jet2<4, Cplx>;
using RJet4 = Jet2<4, double>;

struct SurfaceDomain {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    bool periodic_u = false, periodic_v = false;
};

/// Parametrized surface x(u, v) in S^5 subset C^3 with order-4 jets.
class SurfaceJet {
public:
    virtual ~SurfaceJet() = default;
    virtual std::array<CJet4, 3> jets(double u, double v) const = 0;
    virtual SurfaceDomain domain() const = 0;
    virtual int jet_order() const { return 4; }

    std::array<Cplx, 3> position(double u, double v) const {
        auto j = jets(u, v);
        return {j[0].value(), j[1].value(), j[2].value()};
    }
};

/// Minimal Legendrian hexagonal torus (e^{iu}, e^{iv}, e^{-i(u+v)})/sqrt(3).
class HexagonalTorus final : public SurfaceJet {
public:
    std::array<CJet4, 3> jets(double u, double v) const override;
    SurfaceDomain domain() const override {
        return {0, 2 * M_PI, 0, 2 * M_PI, true, true};
    }
};

/// Totally geodesic S^2 = S^5 cap R^3: (cos u cos v, sin u cos v, sin v).
class EquatorialSphere final : public SurfaceJet {
public:
    std::array<CJet4, 3> jets(double u, double v) const override;
    SurfaceDomain domain() const override {
        return {0, 2 * M_PI, -M_PI / 2, M_PI / 2, true, false};
    }
};

/// Surface from three expressions in u, v (complex scalars, functions
/// sin/cos/exp/sqrt); the caller is responsible for |x| = 1.
class ExprSurface final : public SurfaceJet {
public:
    ExprSurface(const std::array<std::string, 3>& exprs, const SurfaceDomain& dom);
    ~ExprSurface() override;
    std::array<CJet4, 3> jets(double u, double v) const override;
    SurfaceDomain domain() const override { return dom_; }

    struct Node;

private:
    std::array<std::shared_ptr<const Node>, 3> ast_;
    SurfaceDomain dom_;
};

/// Named builtin lookup ("hexagonal_torus", "equatorial_s2"); null if unknown.
std::unique_ptr<SurfaceJet> make_builtin_surface(const std::string& name);

}  // namespace wl
