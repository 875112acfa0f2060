#include <doctest.h>

#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "udw/bounds.hpp"
#include "udw/errors.hpp"
#include "udw/estimator.hpp"

using namespace udw;

namespace {

// ||Xi e^{s w.y}||_2 for the unit Gaussian profile, one coordinate at a time.
double tilted_norm(const Eigen::VectorXd& w, double s) {
    using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
    double sq = 1.0;
    for (int i = 0; i < w.size(); ++i) {
        const double a = s * w(i);
        sq *= Q::integrate([&](double y) { return std::exp(-y * y + 2 * a * y) / (2 * pi); }, a - 12, a + 12, 15,
                           1e-15);
    }
    return std::sqrt(sq);
}

SpacetimeVector receiver_minus_sender(double L, double delta) { return {-delta, 0, 0, -L}; }

}  // namespace

TEST_CASE("retro covector") {
    CHECK(eta_retro(1.0).c == Eigen::Vector4d(1, 0, 0, 0));
    CHECK(eta_retro(2.0).c == Eigen::Vector4d(0.5, 0, 0, 0));
    for (double T : {0.1, 1.0, 30.0}) CHECK(eta_retro(T).l_norm(T, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("norm constant without tilt") {
    const NormConstant c = norm_constant(EtaCovector{}, 1.0, 1.0, 3);
    CHECK(c.value == doctest::Approx(gaussian_profile_norm_sq(3)).epsilon(1e-15));
    CHECK(c.value == doctest::Approx(1.0 / (16 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("norm constant against direct L2 quadrature") {
    const double T = 1.0, R = 1.0;
    EtaCovector eta;
    eta.c << 1.0, 0.0, 0.0, 1.0;
    eta.c /= eta.l_norm(T, R);
    Eigen::VectorXd w(4);
    w << T * eta.c(0), R * eta.c(1), R * eta.c(2), R * eta.c(3);
    const double ref = tilted_norm(w, -1.0) * tilted_norm(w, 1.0);
    CHECK(norm_constant(eta, T, R, 3).value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(norm_constant(eta, T, R, 3).value == doctest::Approx(gaussian_profile_norm_sq(3) * std::exp(1.0)));
    // each tilted norm gains at most e^{1/2}
    CHECK(tilted_norm(w, 1.0) / tilted_norm(w, 0.0) <= std::exp(0.5) + 1e-12);

    eta.c *= 1.01;
    CHECK_THROWS_AS(norm_constant(eta, T, R, 3), ConstraintError);
}

TEST_CASE("generic bound branches and constraints") {
    const SpacetimeVector z(-3.0, 0, 0, 1.0);
    const BoundReport b = bound_generic(1, 1, 3, 0.0, eta_retro(1), z);
    CHECK(b.valid);
    CHECK(b.decaying);
    const double C = norm_constant(eta_retro(1), 1, 1, 3).value;
    CHECK(b.value == doctest::Approx(4 * C * C * std::exp(-6.0)).epsilon(1e-14));

    // massive branch once |eta^2| <= m^2
    const BoundReport heavy = bound_generic(1, 1, 3, 2.0, eta_retro(1), z);
    CHECK(heavy.value == doctest::Approx(C * C * std::exp(-6.0) / 4.0).epsilon(1e-14));
    const BoundReport cross = bound_generic(1, 1, 3, 1.0, eta_retro(1), z);
    CHECK_FALSE(cross.warnings.empty());

    EtaCovector space;
    space.c << 0.0, 0.0, 0.0, 0.5;
    CHECK_THROWS_AS(bound_generic(1, 1, 3, 0, space, z), ConstraintError);
    EtaCovector past;
    past.c << -1.0, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS(bound_generic(1, 1, 3, 0, past, z), ConstraintError);
}

TEST_CASE("retro bound decays with log-slope -2/T") {
    const double T = 1.3;
    auto lb = [&](double z0) { return std::log(bound_generic(T, 0.6, 3, 0, eta_retro(T), {-z0, 0, 0, 0.5}).value); };
    CHECK((lb(5.0) - lb(4.0)) == doctest::Approx(-2.0 / T).epsilon(1e-10));
    CHECK(lb(8.0) < lb(5.0));
}

TEST_CASE("spacelike covector") {
    const SpacetimeVector z(0, 0, 0, 4);
    CHECK(eta_spacelike(0.0, 1, 1, z).c == eta_retro(1).c);
    CHECK_THROWS_AS(eta_spacelike(pi / 3, 1, 1, z), TimelikeViolation);
    CHECK_THROWS_AS(eta_spacelike(pi / 4 + 1e-9, 1, 1, z), TimelikeViolation);
    CHECK_NOTHROW(eta_spacelike(pi / 4 - 1e-9, 1, 1, z));
    for (double phi : {0.1, 0.4, 0.7}) {
        const EtaCovector e = eta_spacelike(phi, 1, 1, z);
        CHECK(e.l_norm(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(-e.dot(z) == doctest::Approx(-std::sin(phi) * 4.0).epsilon(1e-14));
    }
    // log-slope in |z| is -2 sin(phi) / R
    const double phi = 0.5, R = 1.7;
    auto lb = [&](double d) {
        const SpacetimeVector zz(0, 0, 0, d);
        return std::log(bound_generic(1, R, 3, 0, eta_spacelike(phi, 1, R, zz), zz).value);
    };
    CHECK((lb(6) - lb(5)) == doctest::Approx(-2 * std::sin(phi) / R).epsilon(1e-10));
}

TEST_CASE("optimized eta against a grid scan") {
    const double T = 1, R = 1;
    const SpacetimeVector z(0, 0, 0, 4);
    const auto [eta, rep] = optimize_eta(T, R, z);
    const double hi = std::atan(R / T);
    CHECK(eta.phi > 0.0);
    CHECK(eta.phi < hi);

    double best = std::numeric_limits<double>::infinity(), arg = 0;
    const int n = 10000;
    for (int i = 1; i < n; ++i) {
        const double phi = hi * i / n;
        const double v = bound_generic(T, R, 3, 0, eta_spacelike(phi, T, R, z), z).value;
        if (v < best) best = v, arg = phi;
    }
    CHECK(rep.value <= best * (1 + 1e-9));
    CHECK(eta.phi == doctest::Approx(arg).epsilon(2e-3));
}

TEST_CASE("optimized eta for other causal characters") {
    const auto [retro, rep] = optimize_eta(1, 1, {-5, 0, 0, 1});
    CHECK(retro.c == eta_retro(1).c);
    CHECK(rep.decaying);
    CHECK_THROWS_AS(optimize_eta(1, 1, {5, 0, 0, 1}), EmptyAdmissibleSet);

    // narrow smearing squeezes the admissible interval towards phi = 0
    const auto [thin, thin_rep] = optimize_eta(1, 1e-3, {0, 0, 0, 4});
    CHECK(thin.phi < 1e-3);
    CHECK(thin_rep.value > 1e10);
}

TEST_CASE("pointlike bound") {
    const double c = pointlike_form_factor_bound();
    const BoundReport lightlike = bound_pointlike(1, 0, 2, 2, c);
    CHECK(lightlike.value == doctest::Approx(4 * c * c / (8 * pi * pi * 4)).epsilon(1e-15));
    auto lb = [&](double L) { return std::log(bound_pointlike(1, 0, 0, L, c).value * L * L); };
    CHECK((lb(7) - lb(6)) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(bound_pointlike(1, 0, 0, 5).decay_scale == 0.5);
    CHECK_THROWS_AS(bound_pointlike(1, 0, 0, 0), CoincidenceLimit);
    for (double d : {0.0, 0.5, 2.0, -1.0}) CHECK(pointlike_form_factor(1.0, 1.0, 1.0 + d) <= c);
}

TEST_CASE("pointlike bound dominates pointlike s_max") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double L = 0.2 + 8 * u(rng), delta = -4 + 8 * u(rng);
        const double t_a = delta, t_b = 0;
        if (!(t_b - t_a < L)) continue;
        const double smax = s_max(ipair_pointlike(L, delta, 1, 6 * u(rng), 6 * u(rng)));
        CHECK(bound_pointlike(1, t_a, t_b, L).value >= smax);
    }
}

TEST_CASE("generic bound dominates gaussian s_max") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double L = 1 + 5 * u(rng), delta = -4 + 4 * u(rng), R = 0.2 + 1.5 * u(rng);
        const SpacetimeVector z = receiver_minus_sender(L, delta);
        if (is_timelike(z) && z.t > 0) {
            CHECK_THROWS_AS(optimize_eta(1, R, z), EmptyAdmissibleSet);
            continue;
        }
        const auto [eta, rep] = optimize_eta(1, R, z);
        const double smax = s_max(ipair_gaussian(L, delta, R, 1, 6 * u(rng), 6 * u(rng)));
        CHECK(rep.value >= smax);
    }
}

TEST_CASE("boosted bound limits") {
    const SpacetimeVector z(-6, 0, 0, 1);
    const BoundReport rest = bound_boosted(Eigen::Vector3d::Zero(), 1, 0.8, 3, z);
    const BoundReport gen = bound_generic(1, 0.8, 3, 0, eta_retro(1), z);
    CHECK(rest.value == doctest::Approx(gen.value).epsilon(1e-12));
    CHECK(rest.constraints.norm_lleta);

    const Eigen::Vector3d v(0.6, 0, 0);
    const double gamma = 1.0 / std::sqrt(1 - 0.36);
    CHECK(boosted_time_scale(v, 1.0, 0.1) == doctest::Approx(gamma).epsilon(1e-2));
    CHECK(boosted_time_scale(v, 1.0, 30.0) == doctest::Approx(gamma * 0.6 * 30.0).epsilon(1e-2));
    const BoundReport b = bound_boosted(v, 1, 0.8, 3, z);
    CHECK(b.decay_scale == doctest::Approx(boosted_time_scale(v, 1, 0.8)));
    CHECK(b.value > rest.value);

    CHECK_THROWS_AS(bound_boosted(v, 1, 0.8, 3, {6, 0, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(bound_boosted(Eigen::Vector3d(1.0, 0, 0), 1, 0.8, 3, z), InvalidArgument);
}
