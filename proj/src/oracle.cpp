#include "udw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Sparse>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"
#include "udw/quadrature.hpp"

namespace udw {

double OracleSwitching::operator()(double t) const {
    const double s = (t - center) / T;
    if (std::abs(s) > cutoff) return 0.0;
    return std::exp(-0.5 * s * s) / std::sqrt(2.0 * pi);
}

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;
using Dense = Eigen::MatrixXcd;

constexpr int rule = 16;
constexpr std::size_t max_dimension = 1024;

void validate(const OracleCase& c) {
    c.modes.validate();
    c.state_a.validate();
    c.state_b.validate();
    if (!(c.chi_a.T > 0.0) || !(c.chi_b.T > 0.0)) throw InvalidArgument("oracle: switching widths must be positive");
    if (!c.field_occupation.empty()) {
        if (c.field_occupation.size() != c.modes.modes.size())
            throw InvalidArgument("oracle: field_occupation needs one entry per mode");
        for (int n : c.field_occupation)
            if (n < 0 || n > c.modes.n_max) throw InvalidArgument("oracle: occupation outside the Fock cutoff");
    }
}

// Outer time grid: composite Gauss-Legendre over the union of both switching
// supports, with breakpoints at every support edge.
struct Grid {
    std::vector<double> t, w;
};

Grid make_grid(const OracleCase& c, int refine) {
    std::vector<double> edges{c.chi_a.lo(), c.chi_a.hi(), c.chi_b.lo(), c.chi_b.hi()};
    std::sort(edges.begin(), edges.end());
    double fmax = std::abs(c.omega_a) + std::abs(c.omega_b);
    for (const Mode& m : c.modes.modes) fmax = std::max(fmax, std::abs(c.omega_a) + std::abs(c.omega_b) + m.omega);
    const double h = std::min(0.5 * std::min(c.chi_a.T, c.chi_b.T), 6.0 / std::max(fmax, 1e-3));
    Grid g;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double len = edges[i + 1] - edges[i];
        if (!(len > 0.0)) continue;
        const int panels = refine * std::max(1, static_cast<int>(std::ceil(len / h)));
        std::vector<double> n, w;
        quad::composite_legendre(edges[i], edges[i + 1], panels, rule, n, w);
        g.t.insert(g.t.end(), n.begin(), n.end());
        g.w.insert(g.w.end(), w.begin(), w.end());
    }
    return g;
}

// int_a^b f on one Gauss-Legendre panel.
template <class F>
auto panel(double a, double b, F&& f) {
    const quad::GaussLegendre& gl = quad::gauss_legendre(rule);
    decltype(f(a)) acc{};
    for (int k = 0; k < rule; ++k) acc += gl.weights[k] * f(0.5 * (b - a) * gl.nodes[k] + 0.5 * (a + b));
    return 0.5 * (b - a) * acc;
}

SpMat kron(const SpMat& a, const SpMat& b) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < a.outerSize(); ++i)
        for (SpMat::InnerIterator x(a, i); x; ++x)
            for (int j = 0; j < b.outerSize(); ++j)
                for (SpMat::InnerIterator y(b, j); y; ++y)
                    trip.emplace_back(x.row() * b.rows() + y.row(), x.col() * b.cols() + y.col(), x.value() * y.value());
    SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SpMat identity(int n) {
    SpMat m(n, n);
    m.setIdentity();
    return m;
}

SpMat to_sparse(const Mat2& m) { return m.sparseView(); }

// Joint space A (x) B (x) modes, basis index ((a * 2 + b) * F + f).
struct JointSpace {
    int modes = 0;
    int levels = 0;
    int fock = 1;
    int dim = 0;

    JointSpace(int n_modes, int n_max) : modes(n_modes), levels(n_max + 1) {
        for (int k = 0; k < modes; ++k) fock *= levels;
        dim = 4 * fock;
    }

    SpMat annihilation(int k) const {
        SpMat a(levels, levels);
        for (int n = 1; n < levels; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
        // Mode 0 is the most significant factor.
        SpMat out = identity(1);
        for (int j = 0; j < modes; ++j) out = kron(out, j == k ? a : identity(levels));
        return out;
    }

    SpMat fock_projector(const std::vector<int>& occ) const {
        int idx = 0;
        for (int j = 0; j < modes; ++j) idx = idx * levels + (occ.empty() ? 0 : occ[j]);
        SpMat p(fock, fock);
        p.insert(idx, idx) = 1.0;
        return p;
    }

    // tr_{A, field}(M) as a 2 x 2 matrix on B.
    Mat2 trace_out(const Dense& m) const {
        Mat2 r = Mat2::Zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp)
                    for (int f = 0; f < fock; ++f) r(b, bp) += m((a * 2 + b) * fock + f, (a * 2 + bp) * fock + f);
        return r;
    }
};

// One interaction monomial: c(t) * (sigma^s_X (x) a_k or a_k^dagger).
struct Monomial {
    bool detector_a;
    SpMat op;
    std::function<cplx(double)> coeff;
};

std::vector<Monomial> monomials(const OracleCase& c, const JointSpace& js) {
    std::vector<Monomial> out;
    const SpMat sp = to_sparse(pauli::plus()), sm = to_sparse(pauli::minus()), id2 = identity(2);
    for (int side = 0; side < 2; ++side) {
        const bool is_a = side == 0;
        const OracleSwitching chi = is_a ? c.chi_a : c.chi_b;
        const double w = is_a ? c.omega_a : c.omega_b;
        for (std::size_t k = 0; k < c.modes.modes.size(); ++k) {
            const Mode& m = c.modes.modes[k];
            const cplx g = is_a ? m.g_a : m.g_b;
            const SpMat a = js.annihilation(static_cast<int>(k));
            const SpMat ad = SpMat(a.adjoint());
            for (int s = 0; s < 2; ++s) {
                const SpMat& sig = s == 0 ? sp : sm;
                const double sgn = s == 0 ? 1.0 : -1.0;
                const SpMat qubits = is_a ? kron(sig, id2) : kron(id2, sig);
                for (int dag = 0; dag < 2; ++dag) {
                    Monomial mono;
                    mono.detector_a = is_a;
                    mono.op = kron(qubits, dag ? ad : a);
                    const cplx gg = dag ? std::conj(g) : g;
                    const double ww = dag ? m.omega : -m.omega;
                    mono.coeff = [chi, w, sgn, gg, ww](double t) {
                        return chi(t) * gg * std::polar(1.0, sgn * w * t + ww * t);
                    };
                    out.push_back(std::move(mono));
                }
            }
        }
    }
    return out;
}

// -sum_{t > t'} tr_{A,field} [H(t), [H(t'), rho0]] at lambda_A = +1 and -1,
// returned as the cross term (D(+1) - D(-1)) / 2.
Mat2 dyson_pass(const OracleCase& c, int n_max, int refine) {
    const JointSpace js(static_cast<int>(c.modes.modes.size()), n_max);
    if (static_cast<std::size_t>(js.dim) > max_dimension) throw InvalidArgument("oracle: joint dimension too large");
    const std::vector<Monomial> mono = monomials(c, js);
    const std::size_t nm = mono.size();

    const SpMat rho_q = kron(to_sparse(c.state_a.density_matrix()), to_sparse(c.state_b.density_matrix()));
    const Dense rho0 = Dense(kron(rho_q, js.fock_projector(c.field_occupation)));

    // The double commutator is bilinear in the two Hamiltonians, so it is
    // assembled from the operator pairs once; only scalars depend on time.
    std::vector<Dense> inner(nm);
    for (std::size_t j = 0; j < nm; ++j) inner[j] = mono[j].op * rho0 - rho0 * mono[j].op;
    std::vector<Mat2> pair(nm * nm);
    for (std::size_t l = 0; l < nm; ++l)
        for (std::size_t j = 0; j < nm; ++j) {
            const Dense comm = mono[l].op * inner[j] - inner[j] * mono[l].op;
            pair[l * nm + j] = js.trace_out(comm);
        }

    const Grid g = make_grid(c, refine);
    std::vector<double> edges{c.chi_a.lo(), c.chi_a.hi(), c.chi_b.lo(), c.chi_b.hi()};
    std::sort(edges.begin(), edges.end());
    Mat2 d_plus = Mat2::Zero(), d_minus = Mat2::Zero();
    std::vector<cplx> kappa(nm, 0.0), now(nm);
    double prev = edges.front();
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double t = g.t[i];
        // Cumulative inner integrals of each coefficient up to t.
        // Split at support edges so no panel straddles a cut.
        std::vector<double> cuts{prev};
        for (double e : edges)
            if (e > prev && e < t) cuts.push_back(e);
        cuts.push_back(t);
        for (std::size_t j = 0; j < nm; ++j) {
            for (std::size_t q = 0; q + 1 < cuts.size(); ++q) kappa[j] += panel(cuts[q], cuts[q + 1], mono[j].coeff);
            now[j] = mono[j].coeff(t);
        }
        prev = t;
        for (std::size_t l = 0; l < nm; ++l) {
            if (now[l] == 0.0) continue;
            for (std::size_t j = 0; j < nm; ++j) {
                const double la = (mono[l].detector_a ? 1.0 : 0.0) + (mono[j].detector_a ? 1.0 : 0.0);
                const Mat2 term = g.w[i] * now[l] * kappa[j] * pair[l * nm + j];
                d_plus += term;
                d_minus += (la == 1.0 ? -1.0 : 1.0) * term;
            }
        }
    }
    return -0.5 * (d_plus - d_minus);
}

Mat2 receiver_monopole(double omega, double t) {
    Mat2 m = Mat2::Zero();
    m(0, 1) = std::polar(1.0, omega * t);
    m(1, 0) = std::polar(1.0, -omega * t);
    return m;
}

// int_{lo_A}^{min(t, hi_A)} G(t - t') f(t') dt' on panels of the outer spacing.
template <class F>
cplx retarded_inner(const OracleCase& c, double t, int refine, F&& f) {
    const double lo = c.chi_a.lo(), hi = std::min(t, c.chi_a.hi());
    if (!(hi > lo)) return 0.0;
    const double h = std::min(0.5 * c.chi_a.T, 0.5 * c.chi_b.T) / refine;
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
    cplx acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + (hi - lo) * p / panels, b = lo + (hi - lo) * (p + 1) / panels;
        acc += panel(a, b, [&](double tp) { return green_mode_sum(t - tp, c.modes) * f(tp); });
    }
    return acc;
}

Mat2 sigma_pass(const OracleCase& c, int refine) {
    const cplx sp = c.state_a.sigma_plus();
    const Grid g = make_grid(c, refine);
    Mat2 s = Mat2::Zero();
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double t = g.t[i];
        const double xb = c.chi_b(t);
        if (xb == 0.0) continue;
        const cplx inner = retarded_inner(c, t, refine, [&](double tp) {
            return cplx(c.chi_a(tp) * 2.0 * std::real(sp * std::polar(1.0, c.omega_a * tp)), 0.0);
        });
        s += g.w[i] * xb * inner * receiver_monopole(c.omega_b, t);
    }
    return s;
}

cplx i_pass(const OracleCase& c, double wa, double wb, int refine) {
    const Grid g = make_grid(c, refine);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double t = g.t[i];
        const double xb = c.chi_b(t);
        if (xb == 0.0) continue;
        const cplx inner =
            retarded_inner(c, t, refine, [&](double tp) { return c.chi_a(tp) * std::polar(1.0, -wa * tp); });
        acc += g.w[i] * xb * std::polar(1.0, wb * t) * inner;
    }
    return acc;
}

// Size of the integrands, for the round-off floor of the error estimates.
double coupling_scale(const OracleCase& c) {
    double g2 = 0.0;
    for (const Mode& m : c.modes.modes) g2 += (std::abs(m.g_a) + std::abs(m.g_b)) * (std::abs(m.g_a) + std::abs(m.g_b));
    const double t = std::max(c.chi_a.T, c.chi_b.T);
    return g2 * t * t * (1.0 + c.modes.n_max);
}

double max_entry(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

DysonResult dyson_signal_term(const OracleCase& c) {
    validate(c);
    const Mat2 coarse = dyson_pass(c, c.modes.n_max, 1);
    const Mat2 fine = dyson_pass(c, c.modes.n_max, 2);
    DysonResult r;
    r.value = fine;
    r.abs_error = max_entry(fine - coarse) + 1e-13 * coupling_scale(c);

    const JointSpace bigger(static_cast<int>(c.modes.modes.size()), c.modes.n_max + 1);
    if (static_cast<std::size_t>(bigger.dim) <= max_dimension) {
        const Mat2 more = dyson_pass(c, c.modes.n_max + 1, 2);
        r.truncation_checked = true;
        r.truncation_delta = max_entry(more - fine);
        r.truncation_warning = r.truncation_delta > 1e-8;
    }
    return r;
}

OracleMatrix sigma_mode_sum(const OracleCase& c) {
    validate(c);
    const Mat2 coarse = sigma_pass(c, 1);
    const Mat2 fine = sigma_pass(c, 2);
    return {fine, max_entry(fine - coarse) + 1e-13 * coupling_scale(c)};
}

Estimate i_mode_sum(const OracleCase& c, double omega_a, double omega_b) {
    validate(c);
    const cplx coarse = i_pass(c, omega_a, omega_b, 1);
    const cplx fine = i_pass(c, omega_a, omega_b, 2);
    return {fine, std::abs(fine - coarse) + 1e-13 * coupling_scale(c)};
}

OracleReport check_oracle_case(const OracleCase& c) {
    OracleReport r;
    r.dyson = dyson_signal_term(c);
    r.sigma = sigma_mode_sum(c);
    const Mat2 rho_b = c.state_b.density_matrix();
    r.commutator = cplx(0.0, -1.0) * (r.sigma.value * rho_b - rho_b * r.sigma.value);
    r.mismatch = max_entry(r.dyson.value - r.commutator);
    // |[dSigma, rho]_ij| <= 4 max|dSigma| for a density matrix.
    r.tolerance = 10.0 * (r.dyson.abs_error + 4.0 * r.sigma.abs_error);
    r.pass = r.mismatch <= r.tolerance;
    return r;
}

std::vector<OracleReport> run_oracle_batch(const std::vector<OracleCase>& cases, bool parallel) {
    std::vector<OracleReport> out(cases.size());
    const long n = static_cast<long>(cases.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) out[i] = check_oracle_case(cases[i]);
    } else {
        for (long i = 0; i < n; ++i) out[i] = check_oracle_case(cases[i]);
    }
    return out;
}

std::vector<OracleCase> random_oracle_cases(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double a, double b) { return a + (b - a) * u(rng); };
    auto state = [&]() {
        // Uniform in the Bloch ball.
        const double rad = std::cbrt(u(rng));
        const double cz = in(-1.0, 1.0);
        TwoLevelState s;
        s.pz = rad * cz;
        s.r = rad * std::sqrt(1.0 - cz * cz);
        s.alpha = in(0.0, 2.0 * pi);
        return s;
    };
    std::vector<OracleCase> out;
    for (int i = 0; i < count; ++i) {
        OracleCase c;
        const int n_modes = 1 + i % 3;
        for (int k = 0; k < n_modes; ++k)
            c.modes.modes.push_back({in(0.5, 3.0), std::polar(in(0.2, 1.0), in(0.0, 2.0 * pi)),
                                     std::polar(in(0.2, 1.0), in(0.0, 2.0 * pi))});
        c.modes.n_max = 2;
        c.chi_a = {in(-4.0, 4.0), in(0.5, 1.5), 6.0};
        c.chi_b = {0.0, in(0.5, 1.5), 6.0};
        c.omega_a = in(0.0, 3.0);
        c.omega_b = in(0.0, 3.0);
        c.state_a = state();
        c.state_b = state();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace udw
