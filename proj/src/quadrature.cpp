#include "udw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "udw/errors.hpp"

namespace udw::quad {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Panel {
    double a, b;
    cplx value;
    double err;
    double l1;
    bool operator<(const Panel& o) const { return err < o.err; }
};

// One 21-point Gauss-Kronrod panel, error estimate as in QUADPACK's qk21.
Panel gk21(const Integrand& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    cplx fv[21];
    fv[0] = f(c);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        fv[2 * i - 1] = f(c - h * xk[i]);
        fv[2 * i] = f(c + h * xk[i]);
    }

    cplx resk = fv[0] * wk[0];
    cplx resg = 0.0;
    double resabs = std::abs(fv[0]) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const cplx s = fv[2 * i - 1] + fv[2 * i];
        resk += s * wk[i];
        resabs += (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i])) * wk[i];
        if (i % 2 == 1) resg += s * wg[i / 2];
    }
    const cplx mean = 0.5 * resk;
    double resasc = std::abs(fv[0] - mean) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i)
        resasc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];

    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * eps * resabs);
    return {a, b, resk * h, err, resabs};
}

}  // namespace

Result integrate(const Integrand& f, std::vector<double> points, const Options& opt) {
    if (points.size() < 2) throw InvalidArgument("integrate: need at least two points");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Result out;
    if (points.size() < 2) return out;  // zero-length interval

    std::priority_queue<Panel> heap;
    cplx total = 0.0;
    double err = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        Panel p = gk21(f, points[i], points[i + 1]);
        total += p.value;
        err += p.err;
        l1 += p.l1;
        heap.push(p);
    }
    const double span = points.back() - points.front();

    auto target = [&] {
        return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), 100.0 * eps * l1});
    };

    int intervals = static_cast<int>(heap.size());
    while (err > target() && intervals < opt.max_intervals) {
        Panel worst = heap.top();
        if (worst.b - worst.a < 1e-13 * span) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk21(f, worst.a, mid);
        Panel right = gk21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }

    // Re-sum from the panels so that incremental cancellation does not leak
    // into the reported value.
    total = 0.0;
    err = 0.0;
    l1 = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().err;
        l1 += heap.top().l1;
        heap.pop();
    }

    out.value = total;
    out.abs_error = err;
    out.l1 = l1;
    out.intervals = intervals;
    out.converged = err <= target();
    if (!out.converged && opt.throw_on_failure)
        throw QuadratureFailure("adaptive quadrature did not reach tolerance", total, err);
    return out;
}

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (a == b) return {};
    if (a > b) {
        Result r = integrate(f, std::vector<double>{b, a}, opt);
        r.value = -r.value;
        return r;
    }
    return integrate(f, std::vector<double>{a, b}, opt);
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opt, double* abs_error) {
    Result r = integrate([&](double x) { return cplx(f(x), 0.0); }, a, b, opt);
    if (abs_error) *abs_error = r.abs_error;
    return r.value.real();
}

const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    if (n < 1) throw InvalidArgument("gauss_legendre: order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Jacobi matrix of the Legendre recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        gl.nodes[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        gl.weights[k] = 2.0 * v * v;
    }
    return cache.emplace(n, std::move(gl)).first->second;
}

void composite_legendre(double a, double b, int panels, int n,
                        std::vector<double>& nodes, std::vector<double>& weights) {
    const GaussLegendre& gl = gauss_legendre(n);
    nodes.clear();
    weights.clear();
    nodes.reserve(static_cast<std::size_t>(panels) * n);
    weights.reserve(static_cast<std::size_t>(panels) * n);
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * w;
        for (int k = 0; k < n; ++k) {
            nodes.push_back(c + 0.5 * w * gl.nodes[k]);
            weights.push_back(0.5 * w * gl.weights[k]);
        }
    }
}

}  // namespace udw::quad
