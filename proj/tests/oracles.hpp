#pragma once

// Brute-force reference evaluations used by the tests. They share no code
// with the library's integrators: everything goes through boost's
// Gauss-Kronrod and the defining integrals are written out directly.

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

inline double gaussian_switch(double t, double center, double T) {
    const double s = (t - center) / T;
    return std::exp(-0.5 * s * s) / std::sqrt(2.0 * pi);
}

template <class F>
cplx gk(F f, double a, double b, int depth = 15, double tol = 1e-13) {
    using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double re = Q::integrate([&](double x) { return f(x).real(); }, a, b, depth, tol);
    const double im = Q::integrate([&](double x) { return f(x).imag(); }, a, b, depth, tol);
    return {re, im};
}

// Time integral of the delta-shell kernel at spatial distance r:
// int dt chi_B(t) e^{i wB t} chi_A(t - r) e^{-i wA (t - r)}, sender centred at delta.
inline cplx shell_time_integral(double r, double delta, double T, double wa, double wb) {
    const double c = 0.5 * (r + delta);
    return gk([&](double t) {
        return gaussian_switch(t, 0.0, T) * gaussian_switch(t - r, delta, T) *
               std::polar(1.0, wb * t - wa * (t - r));
    }, c - 12.0 * T, c + 12.0 * T);
}

// Pointlike kernel by double-time quadrature of the defining integral: the
// t' integral against delta(t - t' - L) is taken first by hand.
inline cplx i_pointlike(double L, double delta, double T, double wa, double wb) {
    return -shell_time_integral(L, delta, T, wa, wb) / (4.0 * pi * L);
}

// Gaussian-smeared kernel in position space. The separation y = x_B - x_A of
// two isotropic Gaussians of width R is Gaussian with width sqrt(2) R about
// the centre offset; integrate the shell kernel against it in spherical
// coordinates (r, cos theta), time integral innermost.
inline cplx i_gaussian(double L, double delta, double R, double T, double wa, double wb) {
    const double s2 = 2.0 * R * R;
    const double norm = std::pow(2.0 * pi * s2, -1.5);
    const double r0 = std::max(0.0, L - 12.0 * std::sqrt(s2)), r1 = L + 12.0 * std::sqrt(s2);
    return gk([&](double r) -> cplx {
        if (r <= 0.0) return 0.0;
        const cplx kernel = -shell_time_integral(r, delta, T, wa, wb) / (4.0 * pi * r);
        const cplx ang = gk([&](double mu) -> cplx {
            const double d2 = r * r + L * L - 2.0 * r * L * mu;
            return norm * std::exp(-0.5 * d2 / s2);
        }, -1.0, 1.0, 10, 1e-12);
        return 2.0 * pi * r * r * ang * kernel;
    }, r0, r1, 12, 1e-11);
}

// Pointer prefactor: int dt dt' chi_B(t) G(t - t') chi_A(t') r cos(wA t' + alpha)
// for static pointlike detectors at distance L.
inline double pointer_prefactor(double L, double delta, double T, double wa, double r, double alpha) {
    const double c = 0.5 * (L + delta);
    const cplx v = gk([&](double t) -> cplx {
        const double tp = t - L;
        return gaussian_switch(t, 0.0, T) * gaussian_switch(tp, delta, T) * r * std::cos(wa * tp + alpha);
    }, c - 12.0 * T, c + 12.0 * T);
    return -v.real() / (4.0 * pi * L);
}

}  // namespace oracle
