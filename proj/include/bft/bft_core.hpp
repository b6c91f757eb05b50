#ifndef BFT_CORE_HPP
#define BFT_CORE_HPP

#include "bft/quadrature.hpp"
#include "bft/state.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace bft {

using Complex = std::complex<double>;

// Spacetime ray direction gamma, tan(gamma) = x/t. gamma = pi/2 encodes the
// purely spatial direction; the trig factors are then taken exactly (0, 1).
struct RayPath {
    double gamma = 0.0;
    double ell = 0.0; // Euclidean scale of the path; informational
    bool spatial = false;

    static RayPath spatial_direction(double ell = 0.0);
    static RayPath temporal_direction(double ell = 0.0);
    static RayPath at_angle(double gamma, double ell = 0.0);

    double cos_gamma() const;
    double sin_gamma() const;
    // |tan gamma|, used to locate the kinks of |v cos g - sin g|.
    double abs_tan_gamma() const;
};

// One-particle eigenvalue h(theta) of the counted charge, with the locations
// of its discontinuities so quadrature can split there.
struct ChargeEigenvalue {
    std::function<double(double)> h;
    std::vector<double> breakpoints;

    static ChargeEigenvalue constant(double value);
    // Window indicator: value inside [center - width/2, center + width/2), 0 outside.
    static ChargeEigenvalue window(double value, double center, double width);
};

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int panel_points = 32;
    int max_panels = 1 << 14;
    int crossing_grid = 4096;
    bool allow_branch_risk = false;
};

struct ScgfResult {
    Complex value{0.0, 0.0}; // F(lambda; gamma), per unit length along the ray
    double quad_error = 0.0;
    double gamma = 0.0;
    Complex lambda{0.0, 0.0};
    double theta_truncation = 0.0; // domain half-width echoed for provenance
};

// Fermionic free-energy density f(eps) = -log(1 + e^{-eps}), principal branch,
// overflow-safe. Throws BranchRiskError when Re(1 + e^{-eps}) <= 0 unless
// branch risk is allowed.
Complex free_energy_density(Complex eps, bool allow_branch_risk = false);

// f(w + delta) - f(w) evaluated without the catastrophic cancellation of two
// O(1) logarithms: -log1p(e^{-w} expm1(-delta) / (1 + e^{-w})). In the
// validated regime (w > 0) the ratio stays in the cut plane and the value is
// the principal-branch difference.
Complex free_energy_delta(double w, Complex delta, bool allow_branch_risk = false);

// Explicit solution of the flow: eps_lambda(theta) = w + lambda sgn(tan g - v) h.
// sgn(0) := 0 at exact crossings (measure zero; quadrature splits there).
Complex epsilon_flow_at(const GGEState& state, const ChargeEigenvalue& h, Complex lambda,
                        const RayPath& ray, double theta);

// F(lambda) = -Int dtheta/2pi |v cos g - sin g| [f(eps_lambda) - f(w)].
ScgfResult scgf(const GGEState& state, const ChargeEigenvalue& h, Complex lambda,
                const RayPath& ray, const QuadratureSettings& settings = {});

// Scaled cumulants c_1..c_m of the positively-counted charge transfer,
// c_m = (-1)^m d^m F/d lambda^m at lambda = 0, by central finite differences
// with one Richardson step (fd step 1e-3). c_1 is cross-checked against its
// closed form Int dtheta/2pi (sin g - v cos g) h n to 1e-8. m <= 4.
std::vector<double> scaled_cumulants(const GGEState& state, const ChargeEigenvalue& h,
                                     const RayPath& ray, int order,
                                     const QuadratureSettings& settings = {});

} // namespace bft

#endif
