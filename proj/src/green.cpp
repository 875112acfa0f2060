#include "udw/green.hpp"

#include <cmath>

#include "udw/errors.hpp"

namespace udw {

DeltaShell green_massless_shell(double r) {
    if (!(r > 0.0)) throw CoincidenceLimit("retarded kernel is singular at zero separation");
    return {r, -1.0 / (4.0 * pi * r)};
}

cplx green_fourier(double k, double k0, double eps, double m, int n) {
    if (!(eps > 0.0)) throw InvalidArgument("green_fourier: regulator must be positive");
    const cplx z(k0, -eps);
    const double norm = std::pow(2.0 * pi, -0.5 * (n + 1));
    return norm / (-z * z + k * k + m * m);
}

void ModeSet::validate() const {
    if (modes.empty()) throw InvalidArgument("mode set is empty");
    if (n_max < 2) throw InvalidArgument("mode set needs n_max >= 2");
    for (const Mode& m : modes)
        if (!(m.omega > 0.0)) throw InvalidArgument("mode frequencies must be positive");
}

cplx mode_commutator(double dt, const ModeSet& modes) {
    double acc = 0.0;
    for (const Mode& m : modes.modes)
        acc += (m.g_b * std::conj(m.g_a) * std::polar(1.0, -m.omega * dt)).imag();
    return {0.0, 2.0 * acc};
}

double green_mode_sum(double dt, const ModeSet& modes) {
    if (dt < 0.0) return 0.0;
    return (cplx(0.0, -1.0) * mode_commutator(dt, modes)).real();
}

}  // namespace udw
