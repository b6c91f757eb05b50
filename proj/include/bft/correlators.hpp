#ifndef BFT_CORRELATORS_HPP
#define BFT_CORRELATORS_HPP

#include "bft/bft_core.hpp"
#include "bft/state.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace bft::corr {

using Complex = std::complex<double>;

// Momentum window [theta0 - eps/2, theta0 + eps/2); pair windows add the
// mirror window at -theta0. Centers follow the (N + 1/2) eps grid convention.
struct ModeWindow {
    double theta0;
    double eps;
    bool pair = true;

    double lo() const { return theta0 - 0.5 * eps; }
    double hi() const { return theta0 + 0.5 * eps; }
};

struct CorrelatorSample {
    Complex value{0.0, 0.0};
    double quad_error = 0.0;
    double dx = 0.0, dt = 0.0;
    bool connected = true;
};

// <b+(x,t) b(0,0)> = Int dtheta/2pi e^{-i dx theta + i dt E} n(theta).
CorrelatorSample gge_fermion_two_point(const GGEState& state, double dx, double dt,
                                       const QuadratureSettings& settings = {});

// Connected equal-time density-density correlator. With a window, the
// double-momentum integral carries the half-sum indicator; the full-charge
// case factorizes into 1D transforms exactly.
CorrelatorSample gge_density_density(const GGEState& state,
                                     const std::optional<ModeWindow>& window, double dx,
                                     const QuadratureSettings& settings = {});

// Connected current-current correlator with the difference-quotient kernel
// squared; the kernel's k = k' value is E'(k) (removable). For the
// continuum-quadratic family at full window and dt != 0 the kernel is
// polynomial and the integral is evaluated by exact factorization (the
// momentum integral of the vacuum piece is a closed-form Fresnel integral).
CorrelatorSample gge_current_current(const GGEState& state,
                                     const std::optional<ModeWindow>& window, double dx,
                                     double dt, const QuadratureSettings& settings = {});

// Direct (non-factorized) evaluation of the same double integral; used to
// cross-check the fast path at moderate separations.
CorrelatorSample gge_current_current_direct(const GGEState& state,
                                            const std::optional<ModeWindow>& window, double dx,
                                            double dt, const QuadratureSettings& settings = {});

// <b(x,t) b(y,t')> = -Int dk/2pi e^{ik dx} e^{-iE(k)(t+t')} g_k f*_k.
CorrelatorSample quench_pairing_correlator(const QuenchSpec& spec, double dx, double t1,
                                           double t2, const QuadratureSettings& settings = {});

// Pair-production correction to the pair-mode density-density correlator at
// (x, t) = (zeta ell, ell). Exact Wick integrand (phases kept).
CorrelatorSample quench_correction_density(const QuenchSpec& spec, const ModeWindow& window,
                                           double zeta, double ell,
                                           const QuadratureSettings& settings = {});

// Saddle admissibility: a pair emitted in the window can reach both ends of
// the ray iff zeta/2 lies in the velocity image of the window.
bool in_light_cone(const DispersionRelation& disp, double theta0, double eps, double zeta);

// sin(eps z / 2) e^{i theta0 z} / (pi z); z = 0 evaluates to eps / 2pi.
Complex single_mode_kernel(double theta0, double eps, double z);

struct DecayFit {
    double exponent = 0.0;
    double stderr_ = 0.0;
    bool power_law = true; // false when log-log curvature is significant
    int points_used = 0;
};

// Least-squares slope of log|value| against log(scale). Nonpositive values
// are dropped; fewer than 4 survivors is a fit error.
DecayFit decay_exponent_fit(const std::vector<std::pair<double, double>>& samples);

} // namespace bft::corr

#endif
