#pragma once

#include "udw/types.hpp"

namespace udw {

// Quantum Fisher information of the receiver about the sender's coupling,
// exactly and at leading order, for drho = -i lambda_B [Sigma, rho].
struct QfiReport {
    double exact = 0.0;
    double leading = 0.0;
    double variance_bound = 0.0;  // 4 lambda_B^2 Var(Sigma)
    double purity = 1.0;
};

// Eigenvalues below this are treated as zero.
inline constexpr double qfi_rank_threshold = 1e-14;

// 2 sum_{p_l + p_m > 0} |<l|drho|m>|^2 / (p_l + p_m)
double qfi_exact(const Mat2& rho, const Mat2& drho);

// 2 lambda^2 sum ((p_l - p_m)^2 / (p_l + p_m)) |<l|Sigma|m>|^2
double qfi_leading(double lambda_b, const Mat2& sigma, const Mat2& rho);

// Throws InequalityViolation when exact exceeds the variance bound by more
// than 1e-9 (relative to max(1, bound)).
QfiReport fisher_consistency(double lambda_b, const Mat2& sigma, const Mat2& rho);

}  // namespace udw
