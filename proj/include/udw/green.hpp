#pragma once

#include <vector>

#include "udw/types.hpp"

namespace udw {

// Massless 3+1 retarded kernel -delta(t - r) / (4 pi r).
struct DeltaShell {
    double delay;
    double weight;
};

DeltaShell green_massless_shell(double r);

// (2 pi)^{-(n+1)/2} / (-(k0 - i eps)^2 + k^2 + m^2): the transform with
// kernel e^{+i k0 t - i k.x}, so the retarded poles sit above the real axis.
cplx green_fourier(double k, double k0, double eps, double m, int n = 3);

// Finite set of field modes used by the Dyson oracle. Each detector sees the
// smeared field phi_X(t) = sum_k g_{X,k} a_k e^{-i w_k t} + h.c.
struct Mode {
    double omega;
    cplx g_a;
    cplx g_b;
};

struct ModeSet {
    std::vector<Mode> modes;
    int n_max = 2;

    void validate() const;
};

// <[phi_B(t), phi_A(t - dt)]> for the mode expansion (a c-number).
cplx mode_commutator(double dt, const ModeSet& modes);

// -i theta(dt) <[phi_B(t), phi_A(t - dt)]>
//   = 2 theta(dt) sum_k Im(g_B conj(g_A) e^{-i w_k dt}).
double green_mode_sum(double dt, const ModeSet& modes);

}  // namespace udw
