#pragma once

#include <functional>
#include <vector>

#include "udw/types.hpp"

namespace udw::quad {

struct Options {
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
    bool throw_on_failure = true;
};

struct Result {
    cplx value;
    double abs_error = 0.0;
    double l1 = 0.0;  // integral of |f|, used for the round-off floor
    int intervals = 0;
    bool converged = true;
};

using Integrand = std::function<cplx(double)>;

// Global adaptive Gauss-Kronrod (21 points) over [a, b]. The error of each
// panel is the QUADPACK estimate with a 50 eps * int|f| round-off floor.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

// Same, with the initial partition given by sorted breakpoints
// (first and last entries are the integration limits).
Result integrate(const Integrand& f, std::vector<double> points, const Options& opt = {});

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opt = {}, double* abs_error = nullptr);

// Gauss-Legendre rule on [-1, 1] (Golub-Welsch), cached per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// Nodes and weights of an n-point rule mapped to [a, b], split into panels.
void composite_legendre(double a, double b, int panels, int n,
                        std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace udw::quad
