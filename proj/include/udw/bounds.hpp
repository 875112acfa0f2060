#pragma once

#include <utility>

#include "udw/types.hpp"

namespace udw {

// Covector eta with components (eta_0, eta_1, eta_2, eta_3); contractions use
// the (-,+,+,+) metric, eta.z = -eta_0 z^0 + eta_i z^i.
struct EtaCovector {
    Eigen::Vector4d c = Eigen::Vector4d::Zero();
    double phi = 0.0;  // ansatz angle, when built by eta_spacelike

    double dot(const SpacetimeVector& z) const;
    double square() const;
    // ||L eta||_e with L = diag(T, R, R, R)
    double l_norm(double T, double R) const;
};

struct NormConstant {
    double value;
    EtaCovector eta_used;
};

// ||Xi||_2^2 for the Gaussian dimensionless profile in n + 1 dimensions.
double gaussian_profile_norm_sq(int n);

// C = ||Xi e^{-L eta.}||_2 ||Xi e^{L eta.}||_2 = ||Xi||_2^2 e^{||L eta||_e^2}.
// Throws ConstraintError if ||L eta||_e > 1.
NormConstant norm_constant(const EtaCovector& eta, double T, double R, int n = 3);

// z = x_B - x_A (receiver minus sender). Massless-type branch when
// |eta^2| > m^2, massive branch otherwise. Throws ConstraintError if eta is
// not future-directed timelike with ||L eta||_e <= 1.
BoundReport bound_generic(double T, double R, int n, double m, const EtaCovector& eta, const SpacetimeVector& z);

EtaCovector eta_retro(double T);

// (cos(phi)/T, sin(phi)/R zhat), zhat the spatial direction of z. Requires
// |tan(phi)| < R/T (TimelikeViolation otherwise) and cos(phi) > 0.
EtaCovector eta_spacelike(double phi, double T, double R, const SpacetimeVector& z);

// Past-timelike (or past-null) z: eta_retro. Spacelike z: golden-section
// search over the admissible phi interval. Future z: EmptyAdmissibleSet.
std::pair<EtaCovector, BoundReport> optimize_eta(double T, double R, const SpacetimeVector& z, int n = 3,
                                                 double m = 0.0);

// Frequency-independent constant of the Gaussian-switching pointlike bound,
// and its value for a given pair of gaps.
double pointlike_form_factor_bound();
double pointlike_form_factor(double T, double omega_a, double omega_b);

// 4 C^2 T^2 e^{(2/T)(t_B - t_A - L)} / (8 pi^2 L^2)
BoundReport bound_pointlike(double T, double t_a, double t_b, double L, double c = pointlike_form_factor_bound());

// T' = T sqrt((1 + (R/T)^2 v^2) / (1 - v^2))
double boosted_time_scale(const Eigen::Vector3d& v, double T, double R);

// Retro bound for a sender moving with constant velocity v; z past-timelike.
BoundReport bound_boosted(const Eigen::Vector3d& v, double T, double R, int n, const SpacetimeVector& z);

}  // namespace udw
