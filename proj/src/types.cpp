#include "udw/types.hpp"

#include <cmath>

#include "udw/errors.hpp"
#include "udw/quadrature.hpp"

namespace udw {

double minkowski_dot(const SpacetimeVector& a, const SpacetimeVector& b) {
    return -a.t * b.t + a.x.dot(b.x);
}

double euclidean_norm(const SpacetimeVector& a) {
    const SpacetimeVector u(1.0, 0.0, 0.0, 0.0);
    const double ua = minkowski_dot(a, u);
    return std::sqrt(minkowski_dot(a, a) + 2.0 * ua * ua);
}

bool is_timelike(const SpacetimeVector& a) { return minkowski_dot(a, a) < 0.0; }
bool is_spacelike(const SpacetimeVector& a) { return minkowski_dot(a, a) > 0.0; }

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::GaussianSmeared: return "gaussian";
        case ProfileKind::Pointlike: return "pointlike";
        case ProfileKind::CompactBump: return "bump";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "gaussian") return ProfileKind::GaussianSmeared;
    if (s == "pointlike") return ProfileKind::Pointlike;
    if (s == "bump") return ProfileKind::CompactBump;
    throw InvalidArgument("unknown profile kind '" + s + "'");
}

std::string to_string(EvalPath p) {
    switch (p) {
        case EvalPath::ClosedForm: return "closed_form";
        case EvalPath::RadialQuadrature: return "radial";
        case EvalPath::FourierQuadrature: return "fourier";
        case EvalPath::ShellKernel: return "shell";
        case EvalPath::SpectralShell: return "spectral_shell";
    }
    return "unknown";
}

namespace {

double bump_fn(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

// int_0^1 x^2 bump(x) dx
double bump_radial_moment() {
    static const double c = quad::integrate_real([](double x) { return x * x * bump_fn(x); }, 0.0, 1.0,
                                                 {1e-16, 1e-14, 4000, true});
    return c;
}

const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

}  // namespace

DetectorProfile DetectorProfile::gaussian(double R, double T, const SpacetimeVector& c, double gap) {
    DetectorProfile p;
    p.kind = ProfileKind::GaussianSmeared;
    p.R = R;
    p.T = T;
    p.center = c;
    p.gap = gap;
    return p;
}

DetectorProfile DetectorProfile::pointlike(double T, const SpacetimeVector& c, double gap) {
    DetectorProfile p;
    p.kind = ProfileKind::Pointlike;
    p.R = 0.0;
    p.T = T;
    p.center = c;
    p.gap = gap;
    return p;
}

DetectorProfile DetectorProfile::bump(double R, double T, const SpacetimeVector& c, double gap) {
    DetectorProfile p;
    p.kind = ProfileKind::CompactBump;
    p.R = R;
    p.T = T;
    p.center = c;
    p.gap = gap;
    return p;
}

void DetectorProfile::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("profile: T must be positive");
    if (kind != ProfileKind::Pointlike && (!(R > 0.0) || !std::isfinite(R)))
        throw InvalidArgument("profile: R must be positive for smeared profiles");
    if (!(gap >= 0.0)) throw InvalidArgument("profile: gap must be non-negative");
    if (!(velocity.norm() < 1.0)) throw InvalidArgument("profile: |v| must be below 1");
}

double DetectorProfile::switching(double t) const {
    const double s = (t - center.t) / T;
    if (kind == ProfileKind::CompactBump) return inv_sqrt_2pi * std::exp(1.0) * bump_fn(s);
    return inv_sqrt_2pi * std::exp(-0.5 * s * s);
}

double DetectorProfile::smearing_radial(double r) const {
    switch (kind) {
        case ProfileKind::GaussianSmeared: {
            const double n = std::pow(std::sqrt(2.0 * pi) * R, -3);
            return n * std::exp(-0.5 * r * r / (R * R));
        }
        case ProfileKind::CompactBump:
            return bump_fn(r / R) / (4.0 * pi * R * R * R * bump_radial_moment());
        case ProfileKind::Pointlike:
            break;
    }
    throw InvalidArgument("smearing_radial: pointlike profile has no density");
}

double DetectorProfile::smearing(const Eigen::Vector3d& x) const {
    return smearing_radial((x - center.x).norm());
}

double DetectorProfile::switching_reach() const {
    return kind == ProfileKind::CompactBump ? T : 14.0 * T;
}

double DetectorProfile::smearing_reach() const {
    switch (kind) {
        case ProfileKind::GaussianSmeared: return 14.0 * R;
        case ProfileKind::CompactBump: return R;
        case ProfileKind::Pointlike: return 0.0;
    }
    return 0.0;
}

double DetectorProfile::switching_transform(double q) const {
    if (kind != ProfileKind::CompactBump) return T * std::exp(-0.5 * T * T * q * q);
    const double scale = inv_sqrt_2pi * std::exp(1.0) * T;
    // Even profile: 2 int_0^1 bump(s) cos(q T s) ds, in units of T. At large
    // qT the error estimate stalls a hair above 5e-14 on round-off, so the
    // floor is accepted rather than thrown.
    const double v = quad::integrate_real([&](double s) { return bump_fn(s) * std::cos(q * T * s); }, 0.0, 1.0,
                                          {5e-14, 1e-13, 4000, false});
    return 2.0 * scale * v;
}

Mat2 TwoLevelState::density_matrix() const {
    const double x = r * std::cos(alpha), y = r * std::sin(alpha);
    Mat2 rho;
    rho << cplx(0.5 * (1.0 + pz), 0.0), cplx(0.5 * x, -0.5 * y),
           cplx(0.5 * x, 0.5 * y), cplx(0.5 * (1.0 - pz), 0.0);
    return rho;
}

TwoLevelState TwoLevelState::from_density_matrix(const Mat2& rho) {
    const cplx c = rho(1, 0);
    TwoLevelState s;
    s.r = 2.0 * std::abs(c);
    s.alpha = s.r > 0.0 ? std::arg(c) : 0.0;
    if (s.alpha < 0.0) s.alpha += 2.0 * pi;
    s.pz = (rho(0, 0) - rho(1, 1)).real();
    return s;
}

cplx TwoLevelState::sigma_plus() const { return 0.5 * r * std::polar(1.0, alpha); }
cplx TwoLevelState::sigma_minus() const { return std::conj(sigma_plus()); }

bool TwoLevelState::is_valid(double tol) const {
    if (!(r >= 0.0) || !std::isfinite(alpha) || !std::isfinite(pz)) return false;
    Eigen::SelfAdjointEigenSolver<Mat2> es(density_matrix());
    return es.eigenvalues().minCoeff() >= -tol;
}

void TwoLevelState::validate() const {
    if (!is_valid()) throw InvalidArgument("two-level state is not a density matrix (need r^2 + pz^2 <= 1)");
}

namespace pauli {
Mat2 x() { Mat2 m; m << 0, 1, 1, 0; return m; }
Mat2 y() { Mat2 m; m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
Mat2 z() { Mat2 m; m << 1, 0, 0, -1; return m; }
Mat2 plus() { Mat2 m; m << 0, 1, 0, 0; return m; }
Mat2 minus() { Mat2 m; m << 0, 0, 1, 0; return m; }
}  // namespace pauli

void FieldSpec::validate() const {
    if (!(mass >= 0.0)) throw InvalidArgument("field: mass must be non-negative");
    if (spatial_dim < 1) throw InvalidArgument("field: spatial dimension must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgument("field: regulator epsilon must be positive");
}

}  // namespace udw
