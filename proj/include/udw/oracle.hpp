#pragma once

#include <cstdint>
#include <vector>

#include "udw/green.hpp"
#include "udw/types.hpp"

namespace udw {

// Gaussian switching (2 pi)^{-1/2} e^{-(t - center)^2 / 2 T^2}, cut to zero
// beyond |t - center| > cutoff * T. The cut is applied identically on the
// Dyson side and on the Sigma side.
struct OracleSwitching {
    double center = 0.0;
    double T = 1.0;
    double cutoff = 6.0;

    double operator()(double t) const;
    double lo() const { return center - cutoff * T; }
    double hi() const { return center + cutoff * T; }
};

// Two qubits coupled to a finite set of modes. field_occupation lists the
// initial Fock occupation per mode (empty: vacuum).
struct OracleCase {
    ModeSet modes;
    OracleSwitching chi_a, chi_b;
    double omega_a = 1.0;
    double omega_b = 1.0;
    TwoLevelState state_a;
    TwoLevelState state_b;
    std::vector<int> field_occupation;
};

struct OracleMatrix {
    Mat2 value = Mat2::Zero();
    double abs_error = 0.0;  // entrywise, from panel doubling plus round-off floor
};

struct DysonResult : OracleMatrix {
    bool truncation_checked = false;
    bool truncation_warning = false;
    double truncation_delta = 0.0;
};

// lambda_A lambda_B part of the second-order Dyson term of the joint state,
// traced over A and the field: evaluated at lambda_A = +1 and -1 and
// differenced. The truncation check reruns with n_max + 1 when the joint
// dimension stays small enough.
DysonResult dyson_signal_term(const OracleCase& c);

// Sigma = int dt dt' J_B(t) G(t - t') <J_A(t')> on the same time grid.
OracleMatrix sigma_mode_sum(const OracleCase& c);

// int dt dt' chi_B(t) e^{i wB t} G(t - t') chi_A(t') e^{-i wA t'}
Estimate i_mode_sum(const OracleCase& c, double omega_a, double omega_b);

struct OracleReport {
    DysonResult dyson;
    OracleMatrix sigma;
    Mat2 commutator = Mat2::Zero();  // -i [Sigma, rho_B]
    double mismatch = 0.0;           // max entrywise |dyson - commutator|
    double tolerance = 0.0;          // 10 x combined error estimate
    bool pass = false;
};

OracleReport check_oracle_case(const OracleCase& c);

// Cases evaluated independently; parallel uses an OpenMP loop, serial is the
// reference. Output order follows the input order in both.
std::vector<OracleReport> run_oracle_batch(const std::vector<OracleCase>& cases, bool parallel);

// Reproducible random cases with 1 to 3 modes, n_max = 2, vacuum field.
std::vector<OracleCase> random_oracle_cases(int count, std::uint64_t seed);

}  // namespace udw
