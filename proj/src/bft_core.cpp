#include "bft/bft_core.hpp"

#include "bft/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bft {

namespace {
const double kPi = std::acos(-1.0);

double wrap_to_principal(double phi) {
    while (phi > kPi) phi -= 2.0 * kPi;
    while (phi <= -kPi) phi += 2.0 * kPi;
    return phi;
}

// log(1 + u) for complex u without forming 1 + u at small |u|.
Complex log1p_complex(Complex u) {
    double r = std::abs(u);
    if (r < 1e-4) {
        // series to u^5: remainder below 1e-20 relative
        return u * (1.0 - u * (0.5 - u * (1.0 / 3.0 - u * (0.25 - u * 0.2))));
    }
    if (1.0 + u.real() > 0.0) {
        // exact identity log(1+u) = 2 atanh(u / (2+u)); no rounding at 1 + u
        return 2.0 * std::atanh(u / (2.0 + u));
    }
    return std::log(1.0 + u);
}

} // namespace

RayPath RayPath::spatial_direction(double ell) { return RayPath{0.5 * kPi, ell, true}; }
RayPath RayPath::temporal_direction(double ell) { return RayPath{0.0, ell, false}; }

RayPath RayPath::at_angle(double gamma, double ell) {
    if (!(gamma > -0.5 * kPi && gamma <= 0.5 * kPi))
        throw DomainError("ray angle must lie in (-pi/2, pi/2]");
    if (ell < 0.0) throw DomainError("ray scale must be nonnegative");
    RayPath r;
    r.gamma = gamma;
    r.ell = ell;
    r.spatial = (gamma == 0.5 * kPi);
    return r;
}

double RayPath::cos_gamma() const { return spatial ? 0.0 : std::cos(gamma); }
double RayPath::sin_gamma() const { return spatial ? 1.0 : std::sin(gamma); }

double RayPath::abs_tan_gamma() const {
    if (spatial) return std::numeric_limits<double>::infinity();
    return std::abs(std::tan(gamma));
}

ChargeEigenvalue ChargeEigenvalue::constant(double value) {
    ChargeEigenvalue c;
    c.h = [value](double) { return value; };
    return c;
}

ChargeEigenvalue ChargeEigenvalue::window(double value, double center, double width) {
    ChargeEigenvalue c;
    double lo = center - 0.5 * width;
    double hi = center + 0.5 * width;
    c.h = [value, lo, hi](double th) { return (th >= lo && th < hi) ? value : 0.0; };
    c.breakpoints = {lo, hi};
    return c;
}

Complex free_energy_density(Complex eps, bool allow_branch_risk) {
    Complex z;
    if (eps.real() < -690.0) {
        // e^{-eps} overflows; 1 + e^{-eps} ~ e^{-eps}(1 + e^{eps}).
        double re = std::exp(eps.real()); // tiny
        Complex eeps = re * Complex(std::cos(eps.imag()), std::sin(eps.imag()));
        // Branch check on the dominant factor's real part.
        if (std::cos(eps.imag()) <= 0.0 && !allow_branch_risk)
            throw BranchRiskError("free_energy_density: Re(1 + e^{-eps}) <= 0");
        double log_abs = -eps.real() + std::log(std::abs(1.0 + eeps));
        double arg = wrap_to_principal(-eps.imag()) + std::arg(1.0 + eeps);
        return -Complex(log_abs, wrap_to_principal(arg));
    }
    Complex u = std::exp(-eps);
    z = 1.0 + u;
    if (z.real() <= 0.0 && !allow_branch_risk)
        throw BranchRiskError("free_energy_density: Re(1 + e^{-eps}) <= 0");
    if (std::abs(u) < 1e-4) return -log1p_complex(u);
    return -std::log(z);
}

namespace {

// e^z - 1 for complex z without the subtraction cancellation:
// e^{x+iy} - 1 = (expm1(x) cos y - 2 sin^2(y/2)) + i e^x sin y.
Complex expm1_complex(Complex z) {
    double x = z.real(), y = z.imag();
    double sy2 = std::sin(0.5 * y);
    return Complex(std::expm1(x) * std::cos(y) - 2.0 * sy2 * sy2,
                   std::exp(x) * std::sin(y));
}

} // namespace

Complex free_energy_delta(double w, Complex delta, bool allow_branch_risk) {
    if (delta == Complex(0.0, 0.0)) return {0.0, 0.0};
    if (w < -690.0 || w > 690.0) {
        // Saturated weights: fall back to the direct difference (no
        // cancellation there; the stable form would under/overflow instead).
        return free_energy_density(Complex(w, 0.0) + delta, allow_branch_risk) -
               free_energy_density(Complex(w, 0.0), allow_branch_risk);
    }
    double ew = std::exp(-w);
    Complex u = (ew / (1.0 + ew)) * expm1_complex(-delta);
    if (1.0 + u.real() <= 0.0 && !allow_branch_risk)
        throw BranchRiskError("free_energy_delta: Re(1 + e^{-w-delta}) <= 0");
    return -log1p_complex(u);
}

namespace {

double sign_factor(const RayPath& ray, double v) {
    if (ray.spatial) return 1.0; // tan gamma = +inf
    double s = std::tan(ray.gamma) - v;
    if (s > 0.0) return 1.0;
    if (s < 0.0) return -1.0;
    return 0.0;
}

std::vector<double> scgf_breakpoints(const GGEState& state, const ChargeEigenvalue& h,
                                     const RayPath& ray, const QuadratureSettings& settings) {
    std::vector<double> cuts = h.breakpoints;
    if (!ray.spatial) {
        auto cr = velocity_crossings(state.dispersion(), ray.abs_tan_gamma(),
                                     settings.crossing_grid);
        cuts.insert(cuts.end(), cr.begin(), cr.end());
        auto st = stationary_points(state.dispersion(), settings.crossing_grid);
        cuts.insert(cuts.end(), st.begin(), st.end());
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

} // namespace

Complex epsilon_flow_at(const GGEState& state, const ChargeEigenvalue& h, Complex lambda,
                        const RayPath& ray, double theta) {
    double v = state.dispersion().velocity(theta);
    return Complex(state.w(theta), 0.0) + lambda * sign_factor(ray, v) * h.h(theta);
}

ScgfResult scgf(const GGEState& state, const ChargeEigenvalue& h, Complex lambda,
                const RayPath& ray, const QuadratureSettings& settings) {
    if (!settings.allow_branch_risk && !state.in_validated_regime())
        throw BranchRiskError(
            "scgf: state outside the validated regime (w > 0); pass allow-branch-risk to force");

    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    const double cg = ray.cos_gamma();
    const double sg = ray.sin_gamma();
    const bool allow = settings.allow_branch_risk;

    auto integrand = [&](double th) -> Complex {
        double v = disp.velocity(th);
        double weight = std::abs(v * cg - sg);
        double wv = state.w(th);
        Complex df = free_energy_delta(wv, lambda * sign_factor(ray, v) * h.h(th), allow);
        return weight * df;
    };

    quad::Options opts;
    opts.rel_tol = settings.rel_tol;
    opts.abs_tol = settings.abs_tol;
    opts.panel_points = settings.panel_points;
    opts.max_panels = settings.max_panels;
    opts.breakpoints = scgf_breakpoints(state, h, ray, settings);
    quad::Result q = quad::integrate(integrand, dom.lo, dom.hi, opts);

    ScgfResult res;
    res.value = -q.value / (2.0 * kPi);
    res.quad_error = q.error / (2.0 * kPi);
    res.gamma = ray.gamma;
    res.lambda = lambda;
    res.theta_truncation = 0.5 * dom.width();
    return res;
}

std::vector<double> scaled_cumulants(const GGEState& state, const ChargeEigenvalue& h,
                                     const RayPath& ray, int order,
                                     const QuadratureSettings& settings) {
    if (order < 1 || order > 4) throw DomainError("scaled_cumulants: order must be 1..4");

    // Differentiate G(lambda) = F(-lambda), the SCGF of the positively-counted
    // transfer; its odd derivatives flip sign relative to F's. The h^-4 noise
    // amplification of the fourth-order stencil needs quadrature well below
    // the default tolerance.
    QuadratureSettings tight = settings;
    tight.rel_tol = std::min(settings.rel_tol, 1e-13);
    tight.abs_tol = std::min(settings.abs_tol, 1e-16);
    auto F = [&](double lam) -> double {
        return scgf(state, h, Complex(-lam, 0.0), ray, tight).value.real();
    };

    const double step = 1e-3;
    auto richardson = [](double coarse, double fine, int err_order) {
        double k = std::pow(2.0, err_order);
        return (k * fine - coarse) / (k - 1.0);
    };

    std::vector<double> out;
    // Cache F at the stencil points for both step sizes.
    auto fval = [&](double x) { return F(x); };
    double h1 = step, h2 = 0.5 * step;
    double f1p = fval(h1), f1m = fval(-h1), f2p = fval(h2), f2m = fval(-h2);
    double f1p2 = fval(2 * h1), f1m2 = fval(-2 * h1), f2p2 = fval(2 * h2), f2m2 = fval(-2 * h2);

    for (int m = 1; m <= order; ++m) {
        double d1 = 0.0, d2 = 0.0;
        switch (m) {
            case 1:
                d1 = (f1p - f1m) / (2 * h1);
                d2 = (f2p - f2m) / (2 * h2);
                break;
            case 2:
                d1 = (f1p - 2 * 0.0 + f1m) / (h1 * h1); // F(0) = 0 exactly
                d2 = (f2p + f2m) / (h2 * h2);
                break;
            case 3:
                d1 = (f1p2 - 2 * f1p + 2 * f1m - f1m2) / (2 * h1 * h1 * h1);
                d2 = (f2p2 - 2 * f2p + 2 * f2m - f2m2) / (2 * h2 * h2 * h2);
                break;
            case 4:
                d1 = (f1p2 - 4 * f1p - 4 * f1m + f1m2) / (h1 * h1 * h1 * h1); // F(0) = 0
                d2 = (f2p2 - 4 * f2p - 4 * f2m + f2m2) / (h2 * h2 * h2 * h2);
                break;
        }
        out.push_back(richardson(d1, d2, 2));
    }

    // First cumulant against its closed form: c1 = Int dtheta/2pi (sin g - v cos g) h n.
    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    quad::Options opts;
    opts.rel_tol = settings.rel_tol;
    opts.abs_tol = settings.abs_tol;
    opts.breakpoints = h.breakpoints;
    double c1_closed =
        quad::integrate_real(
            [&](double th) {
                return (ray.sin_gamma() - disp.velocity(th) * ray.cos_gamma()) * h.h(th) *
                       state.n(th);
            },
            dom.lo, dom.hi, opts) /
        (2.0 * kPi);
    if (std::abs(out[0] - c1_closed) > 1e-8 * (1.0 + std::abs(c1_closed)))
        throw NumericalError("scaled_cumulants: finite-difference c1 disagrees with closed form",
                             Complex(out[0], 0.0), std::abs(out[0] - c1_closed));
    out[0] = c1_closed; // exact-to-quadrature value preferred over FD

    return out;
}

} // namespace bft
