#include <cmath>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"

namespace udw {

bool conjugation_check(cplx i_pos, cplx i_negneg, double tol) {
    return std::abs(std::conj(i_pos) - i_negneg) <= tol * std::max(1.0, std::abs(i_pos));
}

IQuad complete(const IPair& p) { return {p.i_pp, p.i_pm, std::conj(p.i_pm), std::conj(p.i_pp)}; }

Mat2 sigma_two_level(cplx sp, const IQuad& iq) {
    const cplx sm = std::conj(sp);
    // sigma^+_B pairs with e^{+i wB t}; sigma^-_A with e^{-i wA t'}.
    const cplx up = sp * iq.mp + sm * iq.pp;
    const cplx down = sp * iq.mm + sm * iq.pm;
    if (std::abs(down - std::conj(up)) > 1e-8 * std::max(1.0, std::abs(up)))
        throw ConventionError("sigma_two_level: Sigma is not Hermitian; the I values violate I(w,w')* = I(-w,-w')");
    Mat2 s;
    s << 0.0, up, down, 0.0;
    return s;
}

Mat2 sigma_two_level(cplx sender_sigma_plus, const IPair& ipair) {
    return sigma_two_level(sender_sigma_plus, complete(ipair));
}

Mat2 sigma_two_level(const TwoLevelState& sender, const IPair& ipair) {
    sender.validate();
    return sigma_two_level(sender.sigma_plus(), ipair);
}

double estimator_s(const Mat2& sigma, const Mat2& rho) {
    const cplx m1 = (sigma * rho).trace();
    const cplx m2 = (sigma * sigma * rho).trace();
    return std::max(0.0, m2.real() - m1.real() * m1.real());
}

double estimator_s(const Mat2& sigma, const TwoLevelState& receiver) {
    receiver.validate();
    return estimator_s(sigma, receiver.density_matrix());
}

double s_max(const IPair& ipair) {
    const double s = std::abs(ipair.i_pm) + std::abs(ipair.i_pp);
    return s * s;
}

namespace {
double wrap(double a) {
    a = std::fmod(a, 2.0 * pi);
    return a < 0.0 ? a + 2.0 * pi : a;
}
}  // namespace

double optimal_sender_phase(const IPair& ipair) {
    if (ipair.i_pp == 0.0 || ipair.i_pm == 0.0) return 0.0;
    return wrap(0.5 * (std::arg(ipair.i_pp) + std::arg(ipair.i_pm)));
}

double interference_phase(const IPair& ipair) {
    const cplx z = ipair.i_pp * std::conj(ipair.i_pm);
    if (z == 0.0) throw DegeneratePhase("interference_phase: an I value vanishes, every phase is optimal");
    return wrap(-std::arg(z));
}

double pointer_prefactor(const PointerSetup& p) {
    p.sender.validate();
    // <sigma_A(t)> = r cos(wA t + alpha) = Re(r e^{i alpha} e^{i wA t}), and the
    // kernel is real, so the integral is Re(r e^{i alpha} conj(I(wA, 0))).
    const cplx i0 = i_pointlike(p.L, p.delta, p.T, p.omega_a, 0.0);
    return p.sender.r * std::real(std::polar(1.0, p.sender.alpha) * std::conj(i0));
}

double pointer_s(const PointerSetup& p) {
    if (!(p.delta_k_sq >= 0.0)) throw InvalidArgument("pointer_s: delta_k_sq must be non-negative");
    const double pf = pointer_prefactor(p);
    return pf * pf * p.delta_k_sq;
}

}  // namespace udw
