#include "udw/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "udw/errors.hpp"

namespace udw {

namespace {

constexpr double norm_slack = 1e-12;

Eigen::Vector4d as_vector(const EtaCovector& eta) { return eta.c; }

double decay_scale(const EtaCovector& eta, const SpacetimeVector& z) {
    const double e = eta.dot(z);
    return e > 0.0 ? euclidean_norm(z) / e : std::numeric_limits<double>::infinity();
}

BoundConstraints check(const EtaCovector& eta, double T, double R) {
    BoundConstraints c;
    c.timelike = eta.square() < 0.0;
    c.future_directed = eta.c(0) > 0.0;
    c.norm_leta = eta.l_norm(T, R) <= 1.0 + norm_slack;
    return c;
}

}  // namespace

double EtaCovector::dot(const SpacetimeVector& z) const {
    return -c(0) * z.t + c.tail<3>().dot(z.x);
}

double EtaCovector::square() const { return -c(0) * c(0) + c.tail<3>().squaredNorm(); }

double EtaCovector::l_norm(double T, double R) const {
    return std::sqrt(T * T * c(0) * c(0) + R * R * c.tail<3>().squaredNorm());
}

double gaussian_profile_norm_sq(int n) { return std::pow(4.0 * pi, -0.5 * (n + 1)); }

NormConstant norm_constant(const EtaCovector& eta, double T, double R, int n) {
    if (!(T > 0.0) || !(R > 0.0)) throw InvalidArgument("norm_constant: T and R must be positive");
    const double ln = eta.l_norm(T, R);
    if (ln > 1.0 + norm_slack) {
        std::ostringstream os;
        os << "norm_constant: ||L eta||_e = " << ln << " exceeds 1";
        throw ConstraintError(os.str());
    }
    return {gaussian_profile_norm_sq(n) * std::exp(ln * ln), eta};
}

BoundReport bound_generic(double T, double R, int n, double m, const EtaCovector& eta, const SpacetimeVector& z) {
    if (!(m >= 0.0)) throw InvalidArgument("bound_generic: mass must be non-negative");
    BoundReport rep;
    rep.constraints = check(eta, T, R);
    if (!rep.constraints.all())
        throw ConstraintError("bound_generic: eta must be future-directed timelike with ||L eta||_e <= 1");
    const double C = norm_constant(eta, T, R, n).value;
    const double e2 = std::abs(eta.square());
    const double common = C * C * T * T * std::exp(-2.0 * eta.dot(z)) / std::pow(R, 2 * n);
    if (e2 > m * m)
        rep.value = 4.0 * common / (e2 * e2);
    else
        rep.value = common / (m * m * e2);
    if (m > 0.0 && std::abs(e2 - m * m) <= 1e-9 * m * m)
        rep.warnings.push_back("massive branch crossover: the two branches differ by a factor 4 at |eta^2| = m^2");
    rep.eta = as_vector(eta);
    rep.decay_scale = decay_scale(eta, z);
    rep.valid = true;
    rep.decaying = eta.dot(z) > 0.0;
    return rep;
}

EtaCovector eta_retro(double T) {
    if (!(T > 0.0)) throw InvalidArgument("eta_retro: T must be positive");
    EtaCovector e;
    e.c(0) = 1.0 / T;
    return e;
}

EtaCovector eta_spacelike(double phi, double T, double R, const SpacetimeVector& z) {
    if (!(T > 0.0) || !(R > 0.0)) throw InvalidArgument("eta_spacelike: T and R must be positive");
    const double zn = z.x.norm();
    if (!(zn > 0.0)) throw InvalidArgument("eta_spacelike: z has no spatial part");
    if (!(std::cos(phi) > 0.0) || !(std::abs(std::tan(phi)) < R / T)) {
        std::ostringstream os;
        os << "eta_spacelike: need |tan(phi)| < R/T; admissible phi in (" << -std::atan(R / T) << ", "
           << std::atan(R / T) << ")";
        throw TimelikeViolation(os.str());
    }
    EtaCovector e;
    e.c(0) = std::cos(phi) / T;
    e.c.tail<3>() = (std::sin(phi) / R) * z.x / zn;
    e.phi = phi;
    return e;
}

std::pair<EtaCovector, BoundReport> optimize_eta(double T, double R, const SpacetimeVector& z, int n, double m) {
    if (is_spacelike(z)) {
        const double L = z.x.norm();
        const double lo = std::max(0.0, std::atan(z.t * R / (L * T)));
        const double hi = std::atan(R / T);
        if (!(lo < hi)) throw EmptyAdmissibleSet("optimize_eta: no admissible phi gives a decaying exponent");
        auto log_bound = [&](double phi) {
            return std::log(bound_generic(T, R, n, m, eta_spacelike(phi, T, R, z), z).value);
        };
        const double pad = 1e-9 * (hi - lo);
        // Brent (golden section with parabolic steps) to about 1e-6 in phi.
        const auto best = boost::math::tools::brent_find_minima(log_bound, lo + pad, hi - pad, 20);
        const EtaCovector eta = eta_spacelike(best.first, T, R, z);
        return {eta, bound_generic(T, R, n, m, eta, z)};
    }
    if (z.t < 0.0) {
        const EtaCovector eta = eta_retro(T);
        return {eta, bound_generic(T, R, n, m, eta, z)};
    }
    throw EmptyAdmissibleSet("optimize_eta: z is future-directed, no eta gives a decaying bound");
}

double pointlike_form_factor_bound() { return std::exp(1.0) / (2.0 * std::sqrt(pi)); }

double pointlike_form_factor(double T, double omega_a, double omega_b) {
    const double d = T * (omega_a - omega_b);
    return std::exp(1.0 - 0.25 * d * d) / (2.0 * std::sqrt(pi));
}

BoundReport bound_pointlike(double T, double t_a, double t_b, double L, double c) {
    if (!(L > 0.0)) throw CoincidenceLimit("bound_pointlike: L = 0");
    if (!(T > 0.0)) throw InvalidArgument("bound_pointlike: T must be positive");
    BoundReport rep;
    rep.value = 4.0 * c * c * T * T * std::exp(2.0 * (t_b - t_a - L) / T) / (8.0 * pi * pi * L * L);
    rep.eta = as_vector(eta_retro(T));
    rep.constraints = {true, true, true, true};
    rep.decay_scale = 0.5 * T;
    rep.valid = true;
    rep.decaying = t_b - t_a < L;
    return rep;
}

double boosted_time_scale(const Eigen::Vector3d& v, double T, double R) {
    const double v2 = v.squaredNorm();
    if (!(v2 < 1.0)) throw InvalidArgument("boosted_time_scale: |v| must be below 1");
    return T * std::sqrt((1.0 + (R / T) * (R / T) * v2) / (1.0 - v2));
}

BoundReport bound_boosted(const Eigen::Vector3d& v, double T, double R, int n, const SpacetimeVector& z) {
    if (!(z.t < 0.0) || !is_timelike(z)) throw InvalidArgument("bound_boosted: z must be past-timelike");
    const double tp = boosted_time_scale(v, T, R);
    const double eta0 = 1.0 / tp;
    const double v2 = v.squaredNorm();
    EtaCovector eta;
    eta.c(0) = eta0;

    BoundReport rep;
    rep.constraints = check(eta, T, R);
    // ||L eta|| in the detector rest frame: the boosted covector is
    // gamma eta0 (1, v), so the norm is gamma eta0 sqrt(T^2 + R^2 v^2).
    const double rest = eta0 * std::sqrt((T * T + R * R * v2) / (1.0 - v2));
    rep.constraints.norm_lleta = rest <= 1.0 + norm_slack;
    if (!rep.constraints.all()) throw ConstraintError("bound_boosted: eta violates the norm constraints");

    const double ln = eta.l_norm(T, R);
    const double C = gaussian_profile_norm_sq(n) * std::exp(0.5 * (ln * ln + rest * rest));
    rep.value = 4.0 * C * C * T * T * std::exp(2.0 * eta0 * z.t) / (std::pow(R, 2 * n) * std::pow(eta0, 4));
    rep.eta = eta.c;
    rep.decay_scale = tp;
    rep.valid = true;
    rep.decaying = true;
    return rep;
}

}  // namespace udw
