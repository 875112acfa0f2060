#include <algorithm>
#include <cmath>
#include <memory>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"

namespace udw {

namespace {

// Radial density rho(s) of x_B - x_A about the offset of the two centres
// (the convolution F_B * F_A), carried through
//   M(x) = int_0^x s rho(s) ds,
// so that the angular average over the shell of radius r around an offset
// of length L is (2 pi / (r L)) [M(r + L) - M(|r - L|)].
class PairDensity {
public:
    PairDensity(const DetectorProfile& A, const DetectorProfile& B) : A_(A), B_(B) {
        const bool pa = A.kind == ProfileKind::Pointlike, pb = B.kind == ProfileKind::Pointlike;
        if (pa && pb) {
            mode_ = Mode::Delta;
        } else if (pa || pb) {
            single_ = pa ? &B_ : &A_;
            mode_ = single_->kind == ProfileKind::GaussianSmeared ? Mode::Gaussian : Mode::Single;
            sigma_ = single_->R;
        } else if (A.kind == ProfileKind::GaussianSmeared && B.kind == ProfileKind::GaussianSmeared) {
            mode_ = Mode::Gaussian;
            sigma_ = std::hypot(A.R, B.R);
        } else {
            mode_ = Mode::Numeric;
            const quad::GaussLegendre& gl = quad::gauss_legendre(order);
            const double rb = B.smearing_reach();
            for (int k = 0; k < order; ++k) {
                const double p = 0.5 * rb * (gl.nodes[k] + 1.0);
                const double w = 0.5 * rb * gl.weights[k] * p * B.smearing_radial(p);
                m1_ += w;
                m2_ += w * p;
            }
        }
    }

    bool is_delta() const { return mode_ == Mode::Delta; }

    double reach() const {
        switch (mode_) {
            case Mode::Delta: return 0.0;
            case Mode::Gaussian: return 14.0 * sigma_;
            case Mode::Single: return single_->smearing_reach();
            case Mode::Numeric: return A_.smearing_reach() + B_.smearing_reach();
        }
        return 0.0;
    }

    double M(double x) const {
        if (x <= 0.0) return 0.0;
        switch (mode_) {
            case Mode::Delta: break;
            case Mode::Gaussian: {
                const double s2 = sigma_ * sigma_;
                return std::pow(2.0 * pi * s2, -1.5) * s2 * -std::expm1(-0.5 * x * x / s2);
            }
            case Mode::Single: {
                const double top = std::min(x, single_->smearing_reach());
                return legendre(0.0, top, [&](double s) { return s * single_->smearing_radial(s); });
            }
            case Mode::Numeric: {
                // M(x) = 2 pi int dq q F_A(q) [Q(x+q) - 2 Q(q) - sgn(x-q) Q(|x-q|)]
                auto f = [&](double q) {
                    const double d = x - q;
                    const double sq = d >= 0.0 ? Q(d) : -Q(-d);
                    return q * A_.smearing_radial(q) * (Q(x + q) - 2.0 * Q(q) - sq);
                };
                const double ra = A_.smearing_reach();
                double v = x < ra ? legendre(0.0, x, f) + legendre(x, ra, f) : legendre(0.0, ra, f);
                return 2.0 * pi * v;
            }
        }
        throw ConventionError("PairDensity::M called on a delta density");
    }

    // Shell weight G(r) = M(r + L) - M(|r - L|).
    double G(double r, double L) const { return M(r + L) - M(std::abs(r - L)); }

private:
    enum class Mode { Delta, Gaussian, Single, Numeric };
    static constexpr int order = 48;

    template <class F>
    static double legendre(double a, double b, F&& f) {
        if (b <= a) return 0.0;
        const quad::GaussLegendre& gl = quad::gauss_legendre(order);
        double acc = 0.0;
        for (int k = 0; k < order; ++k) acc += gl.weights[k] * f(0.5 * (b - a) * gl.nodes[k] + 0.5 * (a + b));
        return 0.5 * (b - a) * acc;
    }

    // Q(y) = int_0^y P_B(u) du = int_0^min(y, reach) p (y - p) F_B(p) dp
    double Q(double y) const {
        const double rb = B_.smearing_reach();
        if (y >= rb) return y * m1_ - m2_;
        return legendre(0.0, y, [&](double p) { return p * (y - p) * B_.smearing_radial(p); });
    }

    DetectorProfile A_, B_;
    Mode mode_ = Mode::Delta;
    const DetectorProfile* single_ = nullptr;
    double sigma_ = 0.0;
    double m1_ = 0.0, m2_ = 0.0;
};

void check_radial(const DetectorProfile& A, const DetectorProfile& B) {
    A.validate();
    B.validate();
    if (!((A.center.x - B.center.x).norm() > 0.0))
        throw CoincidenceLimit("shell kernel: detector centres coincide (L = 0)");
}

// T(r) = int dt chi_B(t) e^{i wB t} chi_A(t - r) e^{-i wA (t - r)}
cplx time_overlap(const DetectorProfile& A, const DetectorProfile& B, double wa, double wb, double r,
                  double abs_tol) {
    const double lo = std::max(B.center.t - B.switching_reach(), A.center.t + r - A.switching_reach());
    const double hi = std::min(B.center.t + B.switching_reach(), A.center.t + r + A.switching_reach());
    if (!(lo < hi)) return 0.0;
    auto f = [&](double t) {
        return B.switching(t) * A.switching(t - r) * std::polar(1.0, wb * t - wa * (t - r));
    };
    std::vector<double> pts{lo, hi};
    for (double c : {B.center.t, A.center.t + r})
        if (c > lo && c < hi) pts.push_back(c);
    quad::Options o;
    o.abs_tol = abs_tol;
    o.rel_tol = 1e-12;
    return quad::integrate(f, pts, o).value;
}

}  // namespace

Estimate i_shell(const DetectorProfile& a, const DetectorProfile& b, double omega_a, double omega_b,
                 const KernelTolerance& tol) {
    check_radial(a, b);
    const double L = (a.center.x - b.center.x).norm();
    const double scale = kernel_scale(L, std::sqrt(a.T * b.T));
    const PairDensity rho(a, b);
    const double t_abs = 1e-3 * tol.abs_tol * std::min(a.T, b.T);

    if (rho.is_delta()) {
        const cplx t = time_overlap(a, b, omega_a, omega_b, L, t_abs);
        return {-t / (4.0 * pi * L), 1e-3 * tol.abs_tol * scale};
    }

    // The shell r must reach the spatial support and the time overlap must
    // be non-empty; otherwise the integrand vanishes identically.
    const double dt = b.center.t - a.center.t;
    const double wt = a.switching_reach() + b.switching_reach();
    const double lo = std::max({0.0, L - rho.reach(), dt - wt});
    const double hi = std::min(L + rho.reach(), dt + wt);
    if (!(lo < hi)) return {0.0, 0.0};

    auto f = [&](double r) { return rho.G(r, L) * time_overlap(a, b, omega_a, omega_b, r, t_abs); };
    std::vector<double> pts{lo, hi};
    for (double c : {L, dt})
        if (c > lo && c < hi) pts.push_back(c);
    quad::Options o;
    o.abs_tol = tol.abs_tol * scale * 2.0 * L;
    o.rel_tol = tol.rel_tol;
    const quad::Result r = quad::integrate(f, pts, o);
    return {-r.value / (2.0 * L), r.abs_error / (2.0 * L)};
}

Estimate i_spectral_shell(const DetectorProfile& a, const DetectorProfile& b, double omega_a, double omega_b,
                          const KernelTolerance& tol) {
    check_radial(a, b);
    const double L = (a.center.x - b.center.x).norm();
    const double scale = kernel_scale(L, std::sqrt(a.T * b.T));
    const PairDensity rho(a, b);
    const double delta = a.center.t - b.center.t;

    // Frequency window of h(k0) = chî_B(wB - k0) chî_A(k0 - wA) e^{i k0 Delta}.
    const bool compact = a.kind == ProfileKind::CompactBump || b.kind == ProfileKind::CompactBump;
    const double tmin = std::min(a.T, b.T);
    const double K = compact ? 150.0 / tmin : std::sqrt(160.0) / tmin;
    const double lo = std::min(omega_a, omega_b) - K, hi = std::max(omega_a, omega_b) + K;
    auto h = [&](double k0) {
        return b.switching_transform(omega_b - k0) * a.switching_transform(k0 - omega_a) *
               std::polar(1.0, k0 * delta);
    };

    // Spatial transform of the shell kernel on a fixed Legendre grid in r.
    std::vector<double> rn, rw;
    double phi_max = 1.0 / (4.0 * pi * L);
    if (!rho.is_delta()) {
        const double r0 = std::max(0.0, L - rho.reach()), r1 = L + rho.reach();
        const double kmax = std::max(std::abs(lo), std::abs(hi));
        const int panels = std::max(8, static_cast<int>(std::ceil((r1 - r0) * kmax / 6.0)));
        quad::composite_legendre(r0, r1, panels, 16, rn, rw);
        phi_max = 0.0;
        for (std::size_t j = 0; j < rn.size(); ++j) {
            rw[j] *= -rho.G(rn[j], L) / (2.0 * L);
            phi_max += std::abs(rw[j]);
        }
    }
    auto phi = [&](double k0) -> cplx {
        if (rho.is_delta()) return -std::polar(1.0, k0 * L) / (4.0 * pi * L);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < rn.size(); ++j) acc += rw[j] * std::polar(1.0, k0 * rn[j]);
        return acc;
    };

    quad::Options o;
    o.abs_tol = tol.abs_tol * scale * 2.0 * pi;
    o.rel_tol = tol.rel_tol;
    const int pieces = std::clamp(static_cast<int>(std::ceil((hi - lo) * (L + std::abs(delta) + 1.0) / (4.0 * pi))), 1,
                                  2000);
    std::vector<double> pts;
    for (int i = 0; i <= pieces; ++i) pts.push_back(lo + (hi - lo) * i / pieces);
    o.max_intervals = std::max(o.max_intervals, 4 * pieces);
    const quad::Result r = quad::integrate([&](double k0) { return h(k0) * phi(k0); }, pts, o);
    const double tail = (std::abs(h(lo)) + std::abs(h(hi))) * phi_max * K;
    const cplx phase = std::polar(1.0, omega_b * b.center.t - omega_a * a.center.t);
    return {phase * r.value / (2.0 * pi), (r.abs_error + tail) / (2.0 * pi)};
}

}  // namespace udw
