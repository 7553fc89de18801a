#include "wl/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace wl {

int worker_threads() {
    if (const char* env = std::getenv("WL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return std::max(1u, std::min(hc, 8u));
}

void parallel_for_indexed(long n, const std::function<void(long)>& fn) {
    int nt = worker_threads();
    if (nt <= 1 || n < 4) {
        for (long k = 0; k < n; ++k) fn(k);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (long k = next.fetch_add(1); k < n; k = next.fetch_add(1)) fn(k);
        });
    for (auto& th : pool) th.join();
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
    }
}

namespace {

struct Panel {
    double r0, r1, th0, th1;
    int depth;
};

}  // namespace

QuadResult integrate_disk(const std::function<double(std::complex<double>)>& f,
                          std::complex<double> center, double radius,
                          const std::vector<std::complex<double>>& excised,
                          const QuadConfig& cfg) {
    std::vector<double> gx, gw;
    gauss_legendre(cfg.order, gx, gw);

    auto masked = [&](std::complex<double> xi) -> double {
        for (const auto& p : excised)
            if (std::abs(xi - p) < cfg.excision) return 0.0;
        return f(xi);
    };

    auto panel_value = [&](const Panel& p) -> double {
        double s = 0;
        double rm = 0.5 * (p.r0 + p.r1), rh = 0.5 * (p.r1 - p.r0);
        double tm = 0.5 * (p.th0 + p.th1), th = 0.5 * (p.th1 - p.th0);
        for (int i = 0; i < cfg.order; ++i) {
            double r = rm + rh * gx[i];
            for (int j = 0; j < cfg.order; ++j) {
                double t = tm + th * gx[j];
                std::complex<double> xi =
                    center + std::complex<double>(r * std::cos(t), r * std::sin(t));
                s += gw[i] * gw[j] * masked(xi) * r;
            }
        }
        return s * rh * th;
    };

    const double total_area = M_PI * radius * radius;
    QuadResult out;

    // Initial panel grid in (r, theta); refinement compares a panel against its
    // 2x2 split and recurses where the difference is above the local budget.
    std::vector<Panel> wave;
    const int nr0 = 4, nt0 = 8;
    for (int i = 0; i < nr0; ++i)
        for (int j = 0; j < nt0; ++j)
            wave.push_back({radius * i / nr0, radius * (i + 1) / nr0,
                            2 * M_PI * j / nt0, 2 * M_PI * (j + 1) / nt0, 0});

    struct Outcome {
        double accepted = 0;
        double error = 0;
        bool split = false;
        std::array<Panel, 4> children{};
    };

    while (!wave.empty()) {
        std::vector<Outcome> res(wave.size());
        parallel_for_indexed(static_cast<long>(wave.size()), [&](long k) {
            const Panel& p = wave[k];
            double coarse = panel_value(p);
            double rm = 0.5 * (p.r0 + p.r1), tm = 0.5 * (p.th0 + p.th1);
            std::array<Panel, 4> kids = {
                Panel{p.r0, rm, p.th0, tm, p.depth + 1},
                Panel{rm, p.r1, p.th0, tm, p.depth + 1},
                Panel{p.r0, rm, tm, p.th1, p.depth + 1},
                Panel{rm, p.r1, tm, p.th1, p.depth + 1}};
            double fine = 0;
            for (const auto& kid : kids) fine += panel_value(kid);
            double diff = std::abs(fine - coarse);
            double area = 0.5 * (p.r1 * p.r1 - p.r0 * p.r0) * (p.th1 - p.th0);
            double budget = cfg.tol * std::max(area / total_area, 1e-4);
            Outcome& o = res[k];
            if (diff <= budget || p.depth >= cfg.max_depth) {
                o.accepted = fine;
                o.error = diff;
            } else {
                o.split = true;
                o.children = kids;
            }
        });
        std::vector<Panel> next;
        for (std::size_t k = 0; k < res.size(); ++k) {
            if (res[k].split) {
                for (const auto& kid : res[k].children) next.push_back(kid);
            } else {
                out.value += res[k].accepted;
                out.error_estimate += res[k].error;
                ++out.panels;
                if (wave[k].depth >= cfg.max_depth && res[k].error > cfg.tol)
                    out.converged = false;
            }
        }
        wave.swap(next);
    }
    return out;
}

}  // namespace wl
