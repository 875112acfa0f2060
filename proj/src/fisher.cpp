#include "udw/fisher.hpp"

#include <cmath>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"

namespace udw {

namespace {

void check_state(const Mat2& rho) {
    if ((rho - rho.adjoint()).norm() > 1e-12) throw InvalidArgument("qfi: rho is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-12) throw InvalidArgument("qfi: rho must have unit trace");
}

// Sum over eigenpairs of w(p_l, p_m) |<l|A|m>|^2.
template <class W>
double eigen_sum(const Mat2& rho, const Mat2& a, W&& weight) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
    const Eigen::Vector2d p = es.eigenvalues();
    const Mat2 am = es.eigenvectors().adjoint() * a * es.eigenvectors();
    double acc = 0.0;
    for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) {
            const double pl = p(l) < qfi_rank_threshold ? 0.0 : p(l);
            const double pm = p(m) < qfi_rank_threshold ? 0.0 : p(m);
            if (pl + pm > 0.0) acc += weight(pl, pm) * std::norm(am(l, m));
        }
    return acc;
}

}  // namespace

double qfi_exact(const Mat2& rho, const Mat2& drho) {
    check_state(rho);
    if ((drho - drho.adjoint()).norm() > 1e-12) throw InvalidArgument("qfi_exact: drho is not Hermitian");
    return 2.0 * eigen_sum(rho, drho, [](double pl, double pm) { return 1.0 / (pl + pm); });
}

double qfi_leading(double lambda_b, const Mat2& sigma, const Mat2& rho) {
    check_state(rho);
    const double s = eigen_sum(rho, sigma, [](double pl, double pm) { return (pl - pm) * (pl - pm) / (pl + pm); });
    return 2.0 * lambda_b * lambda_b * s;
}

QfiReport fisher_consistency(double lambda_b, const Mat2& sigma, const Mat2& rho) {
    const cplx i(0.0, 1.0);
    const Mat2 drho = -i * lambda_b * (sigma * rho - rho * sigma);
    QfiReport r;
    r.exact = qfi_exact(rho, drho);
    r.leading = qfi_leading(lambda_b, sigma, rho);
    r.variance_bound = 4.0 * lambda_b * lambda_b * estimator_s(sigma, rho);
    r.purity = (rho * rho).trace().real();
    if (r.exact > r.variance_bound + 1e-9 * std::max(1.0, r.variance_bound))
        throw InequalityViolation("fisher_consistency: exact QFI exceeds 4 lambda^2 Var(Sigma)");
    return r;
}

}  // namespace udw
