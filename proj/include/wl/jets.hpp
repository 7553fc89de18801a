#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace wl {

/// Truncated bivariate Taylor expansion of total order <= N at a point:
/// coefficient (a, b) stores d^{a+b} f / (du^a dv^b) / (a! b!).
/// Arithmetic on Jet2 values propagates derivatives exactly; composing with
/// analytic scalar functions goes through `compose`.
template <int N, typename S = double>
struct Jet2 {
    static constexpr int order = N;
    static constexpr int size = (N + 1) * (N + 2) / 2;
    std::array<S, size> c{};

    static constexpr int idx(int a, int b) {
        int d = a + b;
        return d * (d + 1) / 2 + b;
    }

    Jet2() = default;
    Jet2(S v) { c[0] = v; }  // constant jet

    static Jet2 constant(S v) {
        Jet2 j;
        j.c[0] = v;
        return j;
    }
    static Jet2 var_u(S v) {
        Jet2 j;
        j.c[0] = v;
        if constexpr (N >= 1) j.c[idx(1, 0)] = S(1);
        return j;
    }
    static Jet2 var_v(S v) {
        Jet2 j;
        j.c[0] = v;
        if constexpr (N >= 1) j.c[idx(0, 1)] = S(1);
        return j;
    }

    S value() const { return c[0]; }

    /// d^{a+b} f / du^a dv^b (with the factorials multiplied back in).
    S deriv(int a, int b) const {
        double f = 1;
        for (int k = 2; k <= a; ++k) f *= k;
        for (int k = 2; k <= b; ++k) f *= k;
        return c[idx(a, b)] * S(f);
    }

    /// Jet of the partial derivative; coefficients above order N-1 are zeroed,
    /// so consumers must stay within the remaining valid order.
    Jet2 d_u() const {
        Jet2 r;
        for (int d = 0; d < N; ++d)
            for (int b = 0; b <= d; ++b) {
                int a = d - b;
                r.c[idx(a, b)] = S(double(a + 1)) * c[idx(a + 1, b)];
            }
        return r;
    }
    Jet2 d_v() const {
        Jet2 r;
        for (int d = 0; d < N; ++d)
            for (int b = 0; b <= d; ++b) {
                int a = d - b;
                r.c[idx(a, b)] = S(double(b + 1)) * c[idx(a, b + 1)];
            }
        return r;
    }

    friend Jet2 operator+(const Jet2& x, const Jet2& y) {
        Jet2 r;
        for (int k = 0; k < size; ++k) r.c[k] = x.c[k] + y.c[k];
        return r;
    }
    friend Jet2 operator-(const Jet2& x, const Jet2& y) {
        Jet2 r;
        for (int k = 0; k < size; ++k) r.c[k] = x.c[k] - y.c[k];
        return r;
    }
    friend Jet2 operator-(const Jet2& x) {
        Jet2 r;
        for (int k = 0; k < size; ++k) r.c[k] = -x.c[k];
        return r;
    }
    friend Jet2 operator*(const Jet2& x, const Jet2& y) {
        Jet2 r;
        for (int d1 = 0; d1 <= N; ++d1)
            for (int b1 = 0; b1 <= d1; ++b1) {
                int a1 = d1 - b1;
                const S& xc = x.c[idx(a1, b1)];
                if (xc == S(0)) continue;
                for (int d2 = 0; d1 + d2 <= N; ++d2)
                    for (int b2 = 0; b2 <= d2; ++b2) {
                        int a2 = d2 - b2;
                        r.c[idx(a1 + a2, b1 + b2)] += xc * y.c[idx(a2, b2)];
                    }
            }
        return r;
    }
    friend Jet2 operator*(S s, const Jet2& x) {
        Jet2 r;
        for (int k = 0; k < size; ++k) r.c[k] = s * x.c[k];
        return r;
    }
    friend Jet2 operator+(const Jet2& x, S s) {
        Jet2 r = x;
        r.c[0] += s;
        return r;
    }
    friend Jet2 operator-(const Jet2& x, S s) {
        Jet2 r = x;
        r.c[0] -= s;
        return r;
    }
    Jet2& operator+=(const Jet2& y) { return *this = *this + y; }
    Jet2& operator-=(const Jet2& y) { return *this = *this - y; }
    Jet2& operator*=(const Jet2& y) { return *this = *this * y; }

    /// phi(f) for analytic phi given the Taylor coefficients of phi at f.value():
    /// taylor[k] = phi^(k)(f0) / k!. Horner in the nilpotent part of f.
    static Jet2 compose(const std::array<S, N + 1>& taylor, const Jet2& f) {
        Jet2 h = f;
        h.c[0] = S(0);
        Jet2 r = constant(taylor[N]);
        for (int k = N - 1; k >= 0; --k) r = r * h + taylor[k];
        return r;
    }

    friend Jet2 reciprocal(const Jet2& f) {
        S f0 = f.c[0];
        if (f0 == S(0)) throw std::domain_error("Jet2: reciprocal of zero");
        std::array<S, N + 1> t;
        S p = S(1) / f0;
        for (int k = 0; k <= N; ++k) {
            t[k] = p;
            p = -p / f0;
        }
        return compose(t, f);
    }
    friend Jet2 operator/(const Jet2& x, const Jet2& y) { return x * reciprocal(y); }
};

template <int N, typename S>
Jet2<N, S> jet_sqrt(const Jet2<N, S>& f) {
    S f0 = f.value();
    if (std::abs(f0) == 0) throw std::domain_error("Jet2: sqrt at zero");
    std::array<S, N + 1> t;
    // binomial series with exponent 1/2
    S coef = std::sqrt(f0);
    for (int k = 0; k <= N; ++k) {
        t[k] = coef;
        coef = coef * S(0.5 - k) / (S(double(k + 1)) * f0);
    }
    return Jet2<N, S>::compose(t, f);
}

template <int N, typename S>
Jet2<N, S> jet_exp(const Jet2<N, S>& f) {
    std::array<S, N + 1> t;
    S v = std::exp(f.value());
    double fact = 1;
    for (int k = 0; k <= N; ++k) {
        t[k] = v / S(fact);
        fact *= (k + 1);
    }
    return Jet2<N, S>::compose(t, f);
}

template <int N, typename S>
Jet2<N, S> jet_sin(const Jet2<N, S>& f) {
    std::array<S, N + 1> t;
    S s = std::sin(f.value()), co = std::cos(f.value());
    double fact = 1;
    for (int k = 0; k <= N; ++k) {
        S d = (k % 4 == 0) ? s : (k % 4 == 1) ? co : (k % 4 == 2) ? -s : -co;
        t[k] = d / S(fact);
        fact *= (k + 1);
    }
    return Jet2<N, S>::compose(t, f);
}

template <int N, typename S>
Jet2<N, S> jet_cos(const Jet2<N, S>& f) {
    std::array<S, N + 1> t;
    S s = std::sin(f.value()), co = std::cos(f.value());
    double fact = 1;
    for (int k = 0; k <= N; ++k) {
        S d = (k % 4 == 0) ? co : (k % 4 == 1) ? -s : (k % 4 == 2) ? -co : s;
        t[k] = d / S(fact);
        fact *= (k + 1);
    }
    return Jet2<N, S>::compose(t, f);
}

template <int N>
Jet2<N, std::complex<double>> jet_conj(const Jet2<N, std::complex<double>>& f) {
    Jet2<N, std::complex<double>> r;
    for (int k = 0; k < f.size; ++k) r.c[k] = std::conj(f.c[k]);
    return r;
}

template <int N>
Jet2<N, double> jet_re(const Jet2<N, std::complex<double>>& f) {
    Jet2<N, double> r;
    for (int k = 0; k < f.size; ++k) r.c[k] = f.c[k].real();
    return r;
}

template <int N>
Jet2<N, double> jet_im(const Jet2<N, std::complex<double>>& f) {
    Jet2<N, double> r;
    for (int k = 0; k < f.size; ++k) r.c[k] = f.c[k].imag();
    return r;
}

template <int N>
Jet2<N, std::complex<double>> jet_complexify(const Jet2<N, double>& re,
                                             const Jet2<N, double>& im) {
    Jet2<N, std::complex<double>> r;
    for (int k = 0; k < re.size; ++k) r.c[k] = {re.c[k], im.c[k]};
    return r;
}

/// Truncation to a lower total order.
template <int M, int N, typename S>
Jet2<M, S> jet_truncate(const Jet2<N, S>& f) {
    static_assert(M <= N);
    Jet2<M, S> r;
    for (int d = 0; d <= M; ++d)
        for (int b = 0; b <= d; ++b)
            r.c[Jet2<M, S>::idx(d - b, b)] = f.c[Jet2<N, S>::idx(d - b, b)];
    return r;
}

}  // namespace wl
