#pragma once

#include <utility>

#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw {

// Geometry used by the (L, Delta) entry points: the receiver B sits at the
// origin with switching peaked at t = 0; the sender A is at spatial distance
// L along z with switching peaked at t = Delta.
//
//   I(wA, wB) = int dt dt' d3x d3x' chi_B(t) F_B(x) e^{i wB t}
//               G_R(t - t', x - x') chi_A(t') F_A(x') e^{-i wA t'}
//
// with G_R = -delta(t - r) / (4 pi r) for the massless field.

// Tolerances for the quadrature paths. abs_tol is measured in units of the
// pointlike scale T / (8 pi^{3/2} L), so it is comparable across geometries.
struct KernelTolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
};

double kernel_scale(double L, double T);

cplx i_pointlike(double L, double delta, double T, double omega_a, double omega_b);

Estimate i_gaussian(double L, double delta, double R, double T, double omega_a, double omega_b,
                    const KernelTolerance& tol = {});

// Momentum-space evaluation for GaussianSmeared / Pointlike profiles and a
// massless or massive field. Uses the profiles' centres; omegas are explicit
// so that the sign-flipped partners can be evaluated.
Estimate i_fourier(const DetectorProfile& a, const DetectorProfile& b, const FieldSpec& field,
                   double omega_a, double omega_b, const KernelTolerance& tol = {});

// Same integral with the propagator evaluated at a fixed eps > 0 instead of
// the eps -> 0 limit (no extrapolation).
Estimate i_fourier_at_epsilon(const DetectorProfile& a, const DetectorProfile& b, const FieldSpec& field,
                              double omega_a, double omega_b, double eps, const KernelTolerance& tol = {});

// Position-space delta-shell evaluation for radial profiles (any kind),
// massless field. Exactly zero when the shell misses the support product.
Estimate i_shell(const DetectorProfile& a, const DetectorProfile& b, double omega_a, double omega_b,
                 const KernelTolerance& tol = {});

// Frequency-domain shell evaluation: switching transforms times the spatial
// transform of the shell kernel, integrated over k0. Massless field.
Estimate i_spectral_shell(const DetectorProfile& a, const DetectorProfile& b, double omega_a, double omega_b,
                          const KernelTolerance& tol = {});

std::pair<DetectorProfile, DetectorProfile> pair_geometry(ProfileKind kind, double L, double delta, double R,
                                                          double T, double omega_a, double omega_b);

IPair ipair_pointlike(double L, double delta, double T, double omega_a, double omega_b);
IPair ipair_gaussian(double L, double delta, double R, double T, double omega_a, double omega_b,
                     const KernelTolerance& tol = {});
// Gaps are taken from the profiles.
IPair ipair_fourier(const DetectorProfile& a, const DetectorProfile& b, const FieldSpec& field,
                    const KernelTolerance& tol = {});
IPair ipair_shell(const DetectorProfile& a, const DetectorProfile& b, const KernelTolerance& tol = {});
IPair ipair_spectral_shell(const DetectorProfile& a, const DetectorProfile& b, const KernelTolerance& tol = {});

// I(w, w')^* == I(-w, -w') up to tol * max(1, |I|).
bool conjugation_check(cplx i_pos, cplx i_negneg, double tol = 1e-9);

// All four sign combinations, indexed as I(+-wA, +-wB).
struct IQuad {
    cplx pp;  // I( wA,  wB)
    cplx pm;  // I( wA, -wB)
    cplx mp;  // I(-wA,  wB)
    cplx mm;  // I(-wA, -wB)
};
IQuad complete(const IPair& p);

// Sigma in the receiver basis (|e>, |g>). The sigma^+_B coefficient is
// <sigma^+_A> I(-wA, wB) + <sigma^-_A> I(wA, wB).
Mat2 sigma_two_level(const TwoLevelState& sender, const IPair& ipair);
// Raw ladder amplitude <sigma^+_A> (|.| <= 1/2 for physical states).
Mat2 sigma_two_level(cplx sender_sigma_plus, const IPair& ipair);
Mat2 sigma_two_level(cplx sender_sigma_plus, const IQuad& iq);

double estimator_s(const Mat2& sigma, const Mat2& rho);
double estimator_s(const Mat2& sigma, const TwoLevelState& receiver);

// (|I(wA,-wB)| + |I(wA,wB)|)^2
double s_max(const IPair& ipair);

// Sender phase alpha at which |<sigma^+_A>| = 1 and a diagonal receiver
// attain s_max. Returns 0 when either I vanishes (every phase is optimal).
double optimal_sender_phase(const IPair& ipair);
// -arg(I(wA,wB) conj(I(wA,-wB))) in [0, 2 pi).
double interference_phase(const IPair& ipair);

// Static pointlike pointer receiver with Gaussian switchings of width T.
// The sender's monopole expectation is r cos(wA t + alpha).
struct PointerSetup {
    double L = 1.0;
    double delta = 0.0;
    double T = 1.0;
    double omega_a = 0.0;
    TwoLevelState sender;
    double delta_k_sq = 0.0;
};

// int dt dt' chi_B(t) G_R(t, t') chi_A(t') <sigma_A(t')>
double pointer_prefactor(const PointerSetup& p);
double pointer_s(const PointerSetup& p);

}  // namespace udw
