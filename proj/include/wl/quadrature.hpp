#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wl {

struct QuadConfig {
    double tol = 1e-8;        // absolute tolerance target for the whole integral
    int max_depth = 13;       // panel bisection depth limit
    double excision = 1e-3;   // radius of the disks cut out around poles
    int order = 8;            // Gauss-Legendre points per panel axis
};

struct QuadratureNonConvergent : std::runtime_error {
    double value, error;
    QuadratureNonConvergent(double v, double e)
        : std::runtime_error("adaptive quadrature stalled above tolerance"),
          value(v), error(e) {}
};

struct QuadResult {
    double value = 0;
    double error_estimate = 0;
    long panels = 0;
    bool converged = true;
};

/// Number of worker threads: WL_THREADS when set, else hardware concurrency
/// capped at 8.
int worker_threads();

/// Deterministic parallel map: evaluates fn(0..n-1) with results stored by
/// index, so any later reduction is order-independent of the thread count.
void parallel_for_indexed(long n, const std::function<void(long)>& fn);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive tensor-Gauss integration of f over the disk |xi - center| <= radius
/// in polar panels, with the integrand forced to zero inside the excision
/// disks around the given points. Deterministic panel ordering; does not throw
/// on non-convergence (check the flag).
QuadResult integrate_disk(const std::function<double(std::complex<double>)>& f,
                          std::complex<double> center, double radius,
                          const std::vector<std::complex<double>>& excised,
                          const QuadConfig& cfg);

}  // namespace wl
