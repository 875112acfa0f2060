#include <algorithm>
#include <cmath>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"

namespace udw {

namespace {

// Product of the two switching transforms,
//   h(k0) = chî_B(wB - k0) chî_A(k0 - wA) e^{i k0 Delta},  Delta = t_A - t_B,
// for Gaussian switchings, written as amp e^{-a (k0 - mu)^2} e^{i k0 Delta}.
struct GaussianTimeFactor {
    double amp, a, mu, delta, reach;

    cplx operator()(double k0) const {
        const double d = k0 - mu;
        return amp * std::exp(-a * d * d) * std::polar(1.0, k0 * delta);
    }
    double l1() const { return amp * std::sqrt(pi / a); }
};

GaussianTimeFactor time_factor(const DetectorProfile& A, const DetectorProfile& B, double wa, double wb) {
    const double ta2 = A.T * A.T, tb2 = B.T * B.T, s = ta2 + tb2;
    GaussianTimeFactor h;
    h.a = 0.5 * s;
    h.mu = (ta2 * wa + tb2 * wb) / s;
    h.amp = A.T * B.T * std::exp(-0.5 * ta2 * tb2 * (wb - wa) * (wb - wa) / s);
    h.delta = A.center.t - B.center.t;
    h.reach = std::sqrt(80.0 / h.a);
    return h;
}

void check_profiles(const DetectorProfile& A, const DetectorProfile& B, const FieldSpec& field) {
    A.validate();
    B.validate();
    field.validate();
    for (const DetectorProfile* p : {&A, &B})
        if (p->kind == ProfileKind::CompactBump)
            throw InvalidArgument("i_fourier: only Gaussian or pointlike profiles are supported");
    if (field.spatial_dim != 3) throw InvalidArgument("i_fourier: spatial dimension must be 3");
    if (!((A.center.x - B.center.x).norm() > 0.0))
        throw CoincidenceLimit("i_fourier: detector centres coincide (L = 0)");
}

double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

quad::Options inner_options(const GaussianTimeFactor& h) {
    quad::Options o;
    o.abs_tol = 1e-16 * h.l1();
    o.rel_tol = 1e-13;
    // The inner error is carried into the outer estimate, so a stall at the
    // round-off floor is reported rather than thrown.
    o.throw_on_failure = false;
    return o;
}

// PV int h(k0) / (k0 - c) dk0 as int_0^inf [h(c+s) - h(c-s)] / s ds.
quad::Result principal_value(const GaussianTimeFactor& h, double c) {
    const double d = std::abs(c - h.mu);
    const double lo = std::max(0.0, d - h.reach);
    const double hi = d + h.reach;
    std::vector<double> pts{lo, hi};
    if (d > lo) pts.push_back(d);
    return quad::integrate([&](double s) { return (h(c + s) - h(c - s)) / s; }, pts, inner_options(h));
}

// int dk0 h(k0) / ((k0 + i0)^2 - w^2) via Sokhotski-Plemelj.
Estimate propagator_sp(const GaussianTimeFactor& h, double w) {
    const quad::Result p1 = principal_value(h, w);
    const quad::Result p2 = principal_value(h, -w);
    const cplx v = (p1.value - p2.value - cplx(0.0, pi) * (h(w) - h(-w))) / (2.0 * w);
    return {v, (p1.abs_error + p2.abs_error) / (2.0 * w)};
}

// Same integral with a finite regulator.
Estimate propagator_eps(const GaussianTimeFactor& h, double w, double eps) {
    const double lo = h.mu - h.reach, hi = h.mu + h.reach;
    std::vector<double> pts{lo, hi};
    for (double pole : {-w, w})
        for (double s : {-16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0}) {
            const double x = pole + s * eps;
            if (x > lo && x < hi) pts.push_back(x);
        }
    auto f = [&](double k0) {
        const cplx z(k0, eps);
        return h(k0) / (z * z - w * w);
    };
    const quad::Result r = quad::integrate(f, pts, inner_options(h));
    return {r.value, r.abs_error};
}

// Retarded spatial momentum for the pointlike transform, Im kappa >= 0.
cplx kappa(double k0, double m, double eps) {
    if (eps == 0.0) {
        if (m == 0.0) return k0;
        const double d = k0 * k0 - m * m;
        if (d >= 0.0) return std::copysign(std::sqrt(d), k0);
        return {0.0, std::sqrt(-d)};
    }
    const cplx z(k0, eps);
    cplx k = std::sqrt(z * z - m * m);
    if (k.imag() < 0.0) k = -k;
    return k;
}

// Both pointlike: the spatial integral is done in closed form,
//   int d3k/(2pi)^3 e^{ik.r} / ((k0 + i0)^2 - k^2 - m^2) = -e^{i kappa r} / (4 pi r).
Estimate pointlike_path(const GaussianTimeFactor& h, double L, double m, double eps, const quad::Options& opt) {
    std::vector<double> pts{h.mu - h.reach, h.mu + h.reach};
    for (double b : {-m, m})
        if (b > pts[0] && b < pts[1]) pts.push_back(b);
    auto f = [&](double k0) { return h(k0) * std::exp(cplx(0.0, 1.0) * kappa(k0, m, eps) * L); };
    const quad::Result r = quad::integrate(f, pts, opt);
    const double c = 1.0 / (8.0 * pi * pi * L);
    return {-c * r.value, c * r.abs_error};
}

// Smeared: I = (1/4pi^3) int_0^inf dk k^2 e^{-Rbar^2 k^2} sinc(kL) J(k).
Estimate momentum_path(const GaussianTimeFactor& h, double L, double rbar2, double m, double eps,
                       const quad::Options& opt) {
    const double kmax = std::sqrt(75.0 / rbar2);
    double inner_sup = 0.0;
    auto f = [&](double k) -> cplx {
        const double w = std::sqrt(k * k + m * m);
        const Estimate j = eps == 0.0 ? propagator_sp(h, w) : propagator_eps(h, w, eps);
        inner_sup = std::max(inner_sup, j.abs_error * w);
        return k * k * std::exp(-rbar2 * k * k) * sinc(k * L) * j.value;
    };
    const int pieces = std::clamp(static_cast<int>(std::ceil(kmax * L / (4.0 * pi))), 1, 400);
    std::vector<double> pts;
    for (int i = 0; i <= pieces; ++i) pts.push_back(kmax * i / pieces);
    const quad::Result r = quad::integrate(f, pts, opt);
    // The inner error scales as 1/w, and int k^2/w e^{-Rbar^2 k^2} dk <= 1/(2 Rbar^2).
    const double inner = inner_sup / (2.0 * rbar2);
    const double c = 1.0 / (4.0 * pi * pi * pi);
    return {c * r.value, c * (r.abs_error + inner)};
}

Estimate fourier_at(const DetectorProfile& A, const DetectorProfile& B, const FieldSpec& field, double wa,
                    double wb, double eps, const KernelTolerance& tol) {
    const GaussianTimeFactor h = time_factor(A, B, wa, wb);
    const double L = (A.center.x - B.center.x).norm();
    const double rbar2 = 0.5 * (A.R * A.R + B.R * B.R);
    const cplx phase = std::polar(1.0, wb * B.center.t - wa * A.center.t);

    quad::Options opt;
    opt.abs_tol = tol.abs_tol * kernel_scale(L, std::sqrt(A.T * B.T));
    opt.rel_tol = tol.rel_tol;

    const bool both_pointlike = A.kind == ProfileKind::Pointlike && B.kind == ProfileKind::Pointlike;
    Estimate e;
    if (both_pointlike) {
        e = pointlike_path(h, L, field.mass, eps, opt);
    } else {
        // Scale the outer tolerance to the k-integral's normalisation.
        opt.abs_tol *= 4.0 * pi * pi * pi;
        e = momentum_path(h, L, rbar2, field.mass, eps, opt);
    }
    return {phase * e.value, e.abs_error};
}

}  // namespace

Estimate i_fourier_at_epsilon(const DetectorProfile& a, const DetectorProfile& b, const FieldSpec& field,
                              double omega_a, double omega_b, double eps, const KernelTolerance& tol) {
    check_profiles(a, b, field);
    if (!(eps > 0.0)) throw InvalidArgument("i_fourier_at_epsilon: eps must be positive");
    return fourier_at(a, b, field, omega_a, omega_b, eps, tol);
}

Estimate i_fourier(const DetectorProfile& a, const DetectorProfile& b, const FieldSpec& field, double omega_a,
                   double omega_b, const KernelTolerance& tol) {
    check_profiles(a, b, field);
    if (field.regulator == Regulator::SokhotskiPlemelj) return fourier_at(a, b, field, omega_a, omega_b, 0.0, tol);

    // eps, eps/2, eps/4 with two Richardson steps; the eps -> 0 limit is
    // analytic in eps because the Gaussian time factor is entire.
    const double e0 = field.epsilon / std::sqrt(a.T * b.T);
    const Estimate v1 = fourier_at(a, b, field, omega_a, omega_b, e0, tol);
    const Estimate v2 = fourier_at(a, b, field, omega_a, omega_b, 0.5 * e0, tol);
    const Estimate v3 = fourier_at(a, b, field, omega_a, omega_b, 0.25 * e0, tol);
    const cplx r1 = 2.0 * v3.value - v2.value;
    const cplx r2 = (8.0 * v3.value - 6.0 * v2.value + v1.value) / 3.0;
    const double qerr = (8.0 * v3.abs_error + 6.0 * v2.abs_error + v1.abs_error) / 3.0;
    return {r2, std::abs(r2 - r1) + qerr};
}

}  // namespace udw
