#include <doctest.h>

#include <random>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"
#include "udw/fisher.hpp"

using namespace udw;

namespace {

const cplx I(0.0, 1.0);

Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

Mat2 random_hermitian(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat2 m;
    m << g(rng), cplx(g(rng), g(rng)), 0.0, g(rng);
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

Mat2 random_pure(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::Vector2cd v(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
    v.normalize();
    return v * v.adjoint();
}

Mat2 random_mixed(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double p = u(rng);
    return p * random_pure(rng) + (1 - p) * random_pure(rng);
}

double variance(const Mat2& s, const Mat2& rho) {
    return ((s * s * rho).trace() - std::pow((s * rho).trace().real(), 2)).real();
}

}  // namespace

TEST_CASE("qfi of a vanishing derivative") {
    CHECK(qfi_exact(TwoLevelState::ground().density_matrix(), Mat2::Zero()) == 0.0);
}

TEST_CASE("qfi for a ground-state receiver and a sigma_x generator") {
    const double lam = 0.3, c = 0.7;
    const Mat2 rho = TwoLevelState::ground().density_matrix();
    const Mat2 drho = -I * lam * c * comm(pauli::x(), rho);
    CHECK(qfi_exact(rho, drho) == doctest::Approx(4 * lam * lam * c * c).epsilon(1e-14));
    CHECK(qfi_leading(lam, c * pauli::x(), rho) == doctest::Approx(4 * lam * lam * c * c).epsilon(1e-14));
}

TEST_CASE("maximally mixed receiver carries no information") {
    const Mat2 rho = 0.5 * Mat2::Identity();
    std::mt19937_64 rng(1);
    const Mat2 s = random_hermitian(rng);
    CHECK(qfi_exact(rho, -I * comm(s, rho)) == 0.0);
    CHECK(qfi_leading(1.0, s, rho) == 0.0);
}

TEST_CASE("leading qfi for a diagonal mixed state") {
    Mat2 rho = Mat2::Zero();
    rho(0, 0) = 0.9;
    rho(1, 1) = 0.1;
    const double lam = 0.4;
    CHECK(qfi_leading(lam, pauli::x(), rho) == doctest::Approx(2.56 * lam * lam).epsilon(1e-14));
    CHECK(qfi_leading(lam, pauli::z(), rho) == 0.0);
}

TEST_CASE("qfi is unchanged by eigenvector phases and basis order") {
    std::mt19937_64 rng(2);
    const Mat2 rho = random_mixed(rng);
    const Mat2 drho = -I * comm(random_hermitian(rng), rho);
    Mat2 u = Mat2::Zero();
    u(0, 1) = std::polar(1.0, 0.4);
    u(1, 0) = std::polar(1.0, -1.9);
    CHECK(qfi_exact(u * rho * u.adjoint(), u * drho * u.adjoint()) ==
          doctest::Approx(qfi_exact(rho, drho)).epsilon(1e-12));
}

TEST_CASE("pure states saturate the variance bound") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Mat2 rho = random_pure(rng), s = random_hermitian(rng);
        const double lam = 0.5;
        const QfiReport r = fisher_consistency(lam, s, rho);
        CHECK(std::abs(r.exact - r.variance_bound) <= 1e-10);
        CHECK(std::abs(r.leading - 4 * lam * lam * variance(s, rho)) <= 1e-12);
        CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("mixed states stay under the variance bound") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const Mat2 rho = random_mixed(rng), s = random_hermitian(rng);
        const QfiReport r = fisher_consistency(0.8, s, rho);
        CHECK(r.exact <= r.variance_bound + 1e-10);
        CHECK(r.exact == doctest::Approx(r.leading).epsilon(1e-10));
        CHECK(r.purity >= 0.5 - 1e-12);
        CHECK(r.purity <= 1.0 + 1e-12);
    }
}

TEST_CASE("variance bound ties to the estimator") {
    const IPair ip = ipair_pointlike(1.2, 0.1, 1, 0.5, 0.9);
    const Mat2 s = sigma_two_level(TwoLevelState{0.8, 0.4, 0.1}, ip);
    const TwoLevelState recv{0.3, 2.0, -0.6};
    const double lam = 0.25;
    const QfiReport r = fisher_consistency(lam, s, recv.density_matrix());
    CHECK(r.variance_bound == doctest::Approx(4 * lam * lam * estimator_s(s, recv)).epsilon(1e-12));
}

TEST_CASE("zero coupling") {
    std::mt19937_64 rng(5);
    const QfiReport r = fisher_consistency(0.0, random_hermitian(rng), random_mixed(rng));
    CHECK(r.exact == 0.0);
    CHECK(r.leading == 0.0);
    CHECK(r.variance_bound == 0.0);
}

TEST_CASE("invalid inputs") {
    Mat2 bad = Mat2::Identity();
    CHECK_THROWS_AS(qfi_exact(bad, Mat2::Zero()), InvalidArgument);
}
