#include <algorithm>
#include <cmath>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"

namespace udw {

double kernel_scale(double L, double T) { return T / (8.0 * std::pow(pi, 1.5) * L); }

cplx i_pointlike(double L, double delta, double T, double omega_a, double omega_b) {
    if (!(L > 0.0)) throw CoincidenceLimit("i_pointlike: detectors coincide (L = 0)");
    if (!(T > 0.0)) throw InvalidArgument("i_pointlike: T must be positive");
    const double dw = omega_b - omega_a;
    const double sw = omega_a + omega_b;
    const double mag = kernel_scale(L, T) * std::exp(-0.25 * T * T * dw * dw - (L + delta) * (L + delta) / (4.0 * T * T));
    return -mag * std::polar(1.0, 0.5 * sw * L + 0.5 * dw * delta);
}

Estimate i_gaussian(double L, double delta, double R, double T, double omega_a, double omega_b,
                    const KernelTolerance& tol) {
    if (!(L > 0.0)) throw CoincidenceLimit("i_gaussian: detector centres coincide (L = 0)");
    if (!(R > 0.0) || !(T > 0.0)) throw InvalidArgument("i_gaussian: R and T must be positive");

    const double dw = omega_b - omega_a;
    const double sw = omega_a + omega_b;
    const cplx pref = -(T / (8.0 * std::pow(pi, 1.5))) / (2.0 * std::sqrt(pi) * L * R) *
                      std::exp(-0.25 * T * T * dw * dw) * std::polar(1.0, 0.5 * dw * delta);

    const double iR2 = 1.0 / (R * R), iT2 = 1.0 / (T * T);
    // Integrand in y = R u. The pair-distance factor
    //   e^{-(y-L)^2/4R^2} - e^{-(y+L)^2/4R^2} = e^{-(y-L)^2/4R^2} (1 - e^{-yL/R^2})
    // is combined with the pointlike Gaussian so nothing overflows.
    auto f = [&](double y) -> cplx {
        const double e = -0.25 * (y - L) * (y - L) * iR2 - 0.25 * (y + delta) * (y + delta) * iT2;
        const double w = std::exp(e) * -std::expm1(-y * L * iR2);
        return w * std::polar(1.0, 0.5 * sw * y);
    };

    const double c1 = (L * iR2 - delta * iT2) / (iR2 + iT2);
    const double c2 = (-L * iR2 - delta * iT2) / (iR2 + iT2);
    const double w = 2.0 / std::sqrt(iR2 + iT2);
    const double lo = std::max(0.0, std::min(c1, c2) - 13.0 * w);
    const double hi = std::max({c1, c2, 0.0}) + 13.0 * w;
    // Breakpoints out to the e^{-81/4} level: a long panel ending at a
    // narrow peak would otherwise sample none of its tail.
    std::vector<double> pts{lo, hi};
    for (double c : {c1, c2})
        for (double s : {-9.0, -6.0, -3.0, 0.0, 3.0, 6.0, 9.0})
            if (c + s * w > lo && c + s * w < hi) pts.push_back(c + s * w);

    const double scale = kernel_scale(L, T) / std::abs(pref);
    quad::Options opt;
    opt.abs_tol = tol.abs_tol * scale;
    opt.rel_tol = tol.rel_tol;
    const quad::Result r = quad::integrate(f, pts, opt);
    return {pref * r.value, std::abs(pref) * r.abs_error};
}

std::pair<DetectorProfile, DetectorProfile> pair_geometry(ProfileKind kind, double L, double delta, double R,
                                                          double T, double omega_a, double omega_b) {
    const SpacetimeVector ca(delta, 0.0, 0.0, L);
    const SpacetimeVector cb(0.0, 0.0, 0.0, 0.0);
    switch (kind) {
        case ProfileKind::Pointlike:
            return {DetectorProfile::pointlike(T, ca, omega_a), DetectorProfile::pointlike(T, cb, omega_b)};
        case ProfileKind::GaussianSmeared:
            return {DetectorProfile::gaussian(R, T, ca, omega_a), DetectorProfile::gaussian(R, T, cb, omega_b)};
        case ProfileKind::CompactBump:
            return {DetectorProfile::bump(R, T, ca, omega_a), DetectorProfile::bump(R, T, cb, omega_b)};
    }
    throw InvalidArgument("pair_geometry: unknown profile kind");
}

IPair ipair_pointlike(double L, double delta, double T, double omega_a, double omega_b) {
    return {i_pointlike(L, delta, T, omega_a, omega_b), i_pointlike(L, delta, T, omega_a, -omega_b),
            EvalPath::ClosedForm, 0.0};
}

IPair ipair_gaussian(double L, double delta, double R, double T, double omega_a, double omega_b,
                     const KernelTolerance& tol) {
    const Estimate pp = i_gaussian(L, delta, R, T, omega_a, omega_b, tol);
    const Estimate pm = i_gaussian(L, delta, R, T, omega_a, -omega_b, tol);
    return {pp.value, pm.value, EvalPath::RadialQuadrature, pp.abs_error + pm.abs_error};
}

IPair ipair_fourier(const DetectorProfile& a, const DetectorProfile& b, const FieldSpec& field,
                    const KernelTolerance& tol) {
    const Estimate pp = i_fourier(a, b, field, a.gap, b.gap, tol);
    const Estimate pm = i_fourier(a, b, field, a.gap, -b.gap, tol);
    return {pp.value, pm.value, EvalPath::FourierQuadrature, pp.abs_error + pm.abs_error};
}

IPair ipair_shell(const DetectorProfile& a, const DetectorProfile& b, const KernelTolerance& tol) {
    const Estimate pp = i_shell(a, b, a.gap, b.gap, tol);
    const Estimate pm = i_shell(a, b, a.gap, -b.gap, tol);
    return {pp.value, pm.value, EvalPath::ShellKernel, pp.abs_error + pm.abs_error};
}

IPair ipair_spectral_shell(const DetectorProfile& a, const DetectorProfile& b, const KernelTolerance& tol) {
    const Estimate pp = i_spectral_shell(a, b, a.gap, b.gap, tol);
    const Estimate pm = i_spectral_shell(a, b, a.gap, -b.gap, tol);
    return {pp.value, pm.value, EvalPath::SpectralShell, pp.abs_error + pm.abs_error};
}

}  // namespace udw
