#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace udw {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double pi = 3.14159265358979323846;

// Event or displacement in the preferred (lab) frame; c = 1.
struct SpacetimeVector {
    double t = 0.0;
    Eigen::Vector3d x = Eigen::Vector3d::Zero();

    SpacetimeVector() = default;
    SpacetimeVector(double t_, const Eigen::Vector3d& x_) : t(t_), x(x_) {}
    SpacetimeVector(double t_, double x0, double x1, double x2) : t(t_), x(x0, x1, x2) {}
};

// Signature (-,+,+,+).
double minkowski_dot(const SpacetimeVector& a, const SpacetimeVector& b);
// sqrt(a.a + 2 (a.u)^2) with u the lab four-velocity, i.e. sqrt(t^2 + |x|^2).
double euclidean_norm(const SpacetimeVector& a);

bool is_timelike(const SpacetimeVector& a);
bool is_spacelike(const SpacetimeVector& a);

enum class ProfileKind { GaussianSmeared, Pointlike, CompactBump };

std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

// Spacetime localisation of one detector. Switching peaks are normalised to
// (2 pi)^{-1/2}; spatial profiles integrate to one.
struct DetectorProfile {
    ProfileKind kind = ProfileKind::GaussianSmeared;
    double R = 1.0;
    double T = 1.0;
    SpacetimeVector center;
    double gap = 0.0;
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();

    static DetectorProfile gaussian(double R, double T, const SpacetimeVector& c, double gap);
    static DetectorProfile pointlike(double T, const SpacetimeVector& c, double gap);
    static DetectorProfile bump(double R, double T, const SpacetimeVector& c, double gap);

    void validate() const;

    // chi(t - t_c) at absolute lab time t.
    double switching(double t) const;
    // Spatial density at distance r from the centre (not defined for Pointlike).
    double smearing_radial(double r) const;
    double smearing(const Eigen::Vector3d& x) const;

    // Half-widths beyond which the profile is zero (CompactBump) or below
    // ~1e-40 of its peak (Gaussian).
    double switching_reach() const;
    double smearing_reach() const;

    // Fourier transform of the centred switching, int chi(t) e^{i q t} dt.
    double switching_transform(double q) const;
};

// Two-level state in Bloch form,
//   rho = 1/2 (1 + r cos(alpha) sx + r sin(alpha) sy + pz sz),
// basis order (|e>, |g>), sigma^+ = |e><g|.
struct TwoLevelState {
    double r = 0.0;
    double alpha = 0.0;
    double pz = 0.0;

    static TwoLevelState ground() { return {0.0, 0.0, -1.0}; }
    static TwoLevelState excited() { return {0.0, 0.0, 1.0}; }
    static TwoLevelState from_density_matrix(const Mat2& rho);

    Mat2 density_matrix() const;
    cplx sigma_plus() const;   // tr(rho sigma^+) = (r/2) e^{i alpha}
    cplx sigma_minus() const;  // conjugate of sigma_plus
    bool is_valid(double tol = 1e-12) const;
    void validate() const;
};

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
Mat2 plus();   // |e><g|
Mat2 minus();  // |g><e|
}  // namespace pauli

enum class Regulator { SokhotskiPlemelj, FiniteEpsilon };

struct FieldSpec {
    double mass = 0.0;
    int spatial_dim = 3;
    Regulator regulator = Regulator::SokhotskiPlemelj;
    // Smallest epsilon of the FiniteEpsilon ladder (eps, eps/2, eps/4 are
    // Richardson-extrapolated), in units of the inverse switching width.
    double epsilon = 0.02;

    void validate() const;
};

enum class EvalPath { ClosedForm, RadialQuadrature, FourierQuadrature, ShellKernel, SpectralShell };
std::string to_string(EvalPath p);

// Complex value with an absolute error estimate.
struct Estimate {
    cplx value;
    double abs_error = 0.0;
};

// I(Omega_A, +Omega_B) and I(Omega_A, -Omega_B) for one geometry.
struct IPair {
    cplx i_pp;
    cplx i_pm;
    EvalPath path = EvalPath::ClosedForm;
    double est_abs_error = 0.0;
};

struct BoundConstraints {
    bool timelike = false;
    bool future_directed = false;
    bool norm_leta = false;
    bool norm_lleta = true;  // only meaningful for boosted bounds
    bool all() const { return timelike && future_directed && norm_leta && norm_lleta; }
};

struct BoundReport {
    double value = 0.0;
    Eigen::Vector4d eta = Eigen::Vector4d::Zero();  // (eta^0, eta^1, eta^2, eta^3)
    BoundConstraints constraints;
    double decay_scale = 0.0;
    bool valid = false;
    bool decaying = false;
    std::vector<std::string> warnings;
};

}  // namespace udw
