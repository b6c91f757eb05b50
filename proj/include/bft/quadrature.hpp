#ifndef BFT_QUADRATURE_HPP
#define BFT_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace bft::quad {

using Complex = std::complex<double>;

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int panel_points = 32;     // Gauss-Legendre nodes per panel
    int max_panels = 1 << 14;  // refinement budget across the whole interval
    // Interval is split at these points before any adaptive work; pass kink
    // locations (velocity crossings, charge discontinuities) here.
    std::vector<double> breakpoints;
    // Pre-split each segment into at least this many uniform panels. Callers
    // integrating oscillatory phases scale this with the total phase.
    int min_panels = 1;
    bool throw_on_failure = true;
};

struct Result {
    Complex value{0.0, 0.0};
    double error = 0.0; // summed panel error estimates
    int panels = 0;
    bool converged = true;
};

// Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

// Adaptive composite Gauss-Legendre integration of a complex integrand over
// [a, b]. Panels are bisected until the local GL(n) vs two-half-panel
// estimate agrees to the requested tolerance. Deterministic: panels are
// processed left to right, summation order is fixed.
Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opts = Options{});

// Real-valued convenience wrapper.
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opts = Options{});

// Root of g on [lo, hi] given g(lo), g(hi) of opposite sign; plain bisection.
double bisect(const std::function<double(double)>& g, double lo, double hi,
              double tol = 1e-14);

} // namespace bft::quad

#endif
