#include "bft/correlators.hpp"

#include "bft/errors.hpp"
#include "bft/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bft::corr {

namespace {

const double kPi = std::acos(-1.0);
const Complex kI(0.0, 1.0);

quad::Options quad_opts(const QuadratureSettings& s) {
    quad::Options o;
    o.rel_tol = s.rel_tol;
    o.abs_tol = s.abs_tol;
    o.panel_points = s.panel_points;
    o.max_panels = s.max_panels;
    return o;
}

int oscillation_panels(double total_phase, double floor_panels = 1.0) {
    return static_cast<int>(std::max(floor_panels, std::ceil(std::abs(total_phase) / kPi)) ) + 1;
}

// Difference quotient (E(k') - E(k))/(k' - k); midpoint velocity at the
// removable singularity.
double kernel_K(const DispersionRelation& disp, double k, double kp) {
    double d = kp - k;
    if (std::abs(d) < 1e-7) return disp.velocity(0.5 * (k + kp));
    return (disp.energy(kp) - disp.energy(k)) / d;
}

} // namespace

CorrelatorSample gge_fermion_two_point(const GGEState& state, double dx, double dt,
                                       const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    double energy_span = 0.0;
    {
        double emin = disp.energy(dom.lo), emax = emin;
        for (int i = 0; i <= 64; ++i) {
            double e = disp.energy(dom.lo + dom.width() * i / 64);
            emin = std::min(emin, e);
            emax = std::max(emax, e);
        }
        energy_span = emax - emin;
    }
    quad::Options opts = quad_opts(settings);
    opts.min_panels = oscillation_panels(std::abs(dx) * dom.width() + std::abs(dt) * energy_span);
    quad::Result q = quad::integrate(
        [&](double th) {
            double ph = -dx * th + dt * disp.energy(th);
            return Complex(std::cos(ph), std::sin(ph)) * state.n(th);
        },
        dom.lo, dom.hi, opts);
    CorrelatorSample s;
    s.value = q.value / (2.0 * kPi);
    s.quad_error = q.error / (2.0 * kPi);
    s.dx = dx;
    s.dt = dt;
    return s;
}

namespace {

// Windowed double-momentum integral: outer k over the domain, inner k' over
// the strip (k + k')/2 in [lo, hi) clipped to the domain, with the supplied
// integrand f(k, k'). Used by the windowed density-density and
// current-current correlators.
quad::Result strip_double_integral(const DispersionRelation& disp, double lo, double hi,
                                   const std::function<Complex(double, double)>& f,
                                   double inner_phase_scale, const QuadratureSettings& settings) {
    MomentumDomain dom = disp.domain();
    quad::Options outer = quad_opts(settings);
    // Inner-strip clipping changes analytic form where the strip meets the
    // domain edges.
    outer.breakpoints = {2.0 * lo - dom.hi, 2.0 * hi - dom.hi, 2.0 * lo - dom.lo,
                         2.0 * hi - dom.lo};
    outer.rel_tol = settings.rel_tol * 10.0;
    quad::Options inner = quad_opts(settings);
    inner.rel_tol = settings.rel_tol;

    auto inner_integral = [&](double k) -> Complex {
        double a = std::max(dom.lo, 2.0 * lo - k);
        double b = std::min(dom.hi, 2.0 * hi - k);
        if (b <= a) return {0.0, 0.0};
        quad::Options io = inner;
        io.min_panels = oscillation_panels(inner_phase_scale * (b - a));
        return quad::integrate([&](double kp) { return f(k, kp); }, a, b, io).value;
    };

    quad::Options o2 = outer;
    o2.min_panels = oscillation_panels(inner_phase_scale * dom.width());
    return quad::integrate(inner_integral, dom.lo, dom.hi, o2);
}

} // namespace

CorrelatorSample gge_density_density(const GGEState& state,
                                     const std::optional<ModeWindow>& window, double dx,
                                     const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    CorrelatorSample s;
    s.dx = dx;

    if (!window) {
        // Kernel-free case factorizes exactly:
        // Int n(k) e^{-i dx k} /2pi  *  Int (1 - n(k')) e^{+i dx k'} /2pi.
        quad::Options opts = quad_opts(settings);
        opts.min_panels = oscillation_panels(std::abs(dx) * dom.width());
        quad::Result a = quad::integrate(
            [&](double k) {
                return Complex(std::cos(dx * k), -std::sin(dx * k)) * state.n(k);
            },
            dom.lo, dom.hi, opts);
        quad::Result b = quad::integrate(
            [&](double k) {
                return Complex(std::cos(dx * k), std::sin(dx * k)) * (1.0 - state.n(k));
            },
            dom.lo, dom.hi, opts);
        s.value = a.value * b.value / (4.0 * kPi * kPi);
        s.quad_error = (a.error * std::abs(b.value) + b.error * std::abs(a.value)) /
                       (4.0 * kPi * kPi);
        return s;
    }

    auto one_window = [&](double center) -> quad::Result {
        double lo = center - 0.5 * window->eps;
        double hi = center + 0.5 * window->eps;
        auto f = [&](double k, double kp) -> Complex {
            double ph = dx * (kp - k);
            return Complex(std::cos(ph), std::sin(ph)) * (1.0 - state.n(kp)) * state.n(k);
        };
        return strip_double_integral(disp, lo, hi, f, std::abs(dx), settings);
    };

    quad::Result r = one_window(window->theta0);
    Complex total = r.value;
    double err = r.error;
    if (window->pair && std::abs(window->theta0) > 1e-14) {
        // Same-window terms at -theta0; the GGE cross terms vanish because the
        // half-sum cannot sit in two disjoint windows.
        quad::Result m = one_window(-window->theta0);
        total += m.value;
        err += m.error;
    }
    s.value = total / (4.0 * kPi * kPi);
    s.quad_error = err / (4.0 * kPi * kPi);
    return s;
}

namespace {

// Moments P_m = Int dk/2pi k^m n(k) e^{i(dt E(k) - dx k)} (m = 0, 1, 2) and the
// mirrored Q_m with the opposite phase sign; building blocks of the exact
// factorization of the quadratic-kernel correlator.
Complex weighted_moment(const GGEState& state, int m, double dx, double dt, int phase_sign,
                        const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    quad::Options opts = quad_opts(settings);
    double espan = std::abs(disp.energy(dom.hi) - disp.energy(0.0));
    opts.min_panels = oscillation_panels(std::abs(dx) * dom.width() + 2.0 * std::abs(dt) * espan);
    return quad::integrate(
               [&](double k) {
                   double ph = phase_sign * (dt * disp.energy(k) - dx * k);
                   double amp = state.n(k);
                   for (int i = 0; i < m; ++i) amp *= k;
                   return Complex(std::cos(ph), std::sin(ph)) * amp;
               },
               dom.lo, dom.hi, opts)
               .value /
           (2.0 * kPi);
}

} // namespace

CorrelatorSample gge_current_current_direct(const GGEState& state,
                                            const std::optional<ModeWindow>& window, double dx,
                                            double dt, const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    double espan = 0.0;
    for (int i = 0; i <= 64; ++i)
        espan = std::max(espan, std::abs(disp.energy(dom.lo + dom.width() * i / 64)));
    double phase_scale = std::abs(dx) + 2.0 * std::abs(dt) * espan / dom.width();

    CorrelatorSample s;
    s.dx = dx;
    s.dt = dt;

    auto f = [&](double k, double kp) -> Complex {
        double K = kernel_K(disp, k, kp);
        double ph = dx * (kp - k) + dt * (disp.energy(k) - disp.energy(kp));
        return Complex(std::cos(ph), std::sin(ph)) * K * K * (1.0 - state.n(kp)) * state.n(k);
    };

    if (window) {
        auto one = [&](double center) {
            return strip_double_integral(disp, center - 0.5 * window->eps,
                                         center + 0.5 * window->eps, f, phase_scale, settings);
        };
        quad::Result r = one(window->theta0);
        Complex total = r.value;
        double err = r.error;
        if (window->pair && std::abs(window->theta0) > 1e-14) {
            quad::Result m = one(-window->theta0);
            total += m.value;
            err += m.error;
        }
        s.value = total / (4.0 * kPi * kPi);
        s.quad_error = err / (4.0 * kPi * kPi);
        return s;
    }

    quad::Options outer = quad_opts(settings);
    outer.rel_tol = settings.rel_tol * 10.0;
    outer.min_panels = oscillation_panels(phase_scale * dom.width());
    quad::Options inner = quad_opts(settings);
    inner.min_panels = outer.min_panels;
    quad::Result q = quad::integrate(
        [&](double k) -> Complex {
            return quad::integrate([&](double kp) { return f(k, kp); }, dom.lo, dom.hi, inner)
                .value;
        },
        dom.lo, dom.hi, outer);
    s.value = q.value / (4.0 * kPi * kPi);
    s.quad_error = q.error / (4.0 * kPi * kPi);
    return s;
}

CorrelatorSample gge_current_current(const GGEState& state,
                                     const std::optional<ModeWindow>& window, double dx,
                                     double dt, const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    const bool quadratic = (disp.family() == "continuum_quadratic");
    if (window || !quadratic || dt == 0.0)
        return gge_current_current_direct(state, window, dx, dt, settings);

    // Continuum-quadratic full-window fast path. With E = k^2/(2m) the kernel
    // is (k + k')^2 / (4 m^2), so the n n' piece factorizes into 1D moments and
    // the vacuum piece's k' integral is a Fresnel integral over the real line.
    double mass = disp.velocity(1.0) > 0.0 ? 1.0 / disp.velocity(1.0) : 1.0;

    Complex P0 = weighted_moment(state, 0, dx, dt, +1, settings);
    Complex P1 = weighted_moment(state, 1, dx, dt, +1, settings);
    Complex P2 = weighted_moment(state, 2, dx, dt, +1, settings);
    Complex Q0 = weighted_moment(state, 0, dx, dt, -1, settings);
    Complex Q1 = weighted_moment(state, 1, dx, dt, -1, settings);
    Complex Q2 = weighted_moment(state, 2, dx, dt, -1, settings);

    // T_nn = (1/4m^2) [P2 Q0 + 2 P1 Q1 + P0 Q2]
    Complex t_nn = (P2 * Q0 + 2.0 * P1 * Q1 + P0 * Q2) / (4.0 * mass * mass);

    // Vacuum piece: Int dk'/2pi (k + k')^2 e^{i dx k' - i dt E(k')} over R.
    // Complete the square with a = dt/(2m), b = dx/(2a):
    //   e^{i dx^2/(4a)} [ (k + b)^2 I0 + I2 ],  I0 = sqrt(pi/(i a)), I2 = I0/(2ia).
    double a = dt / (2.0 * mass);
    Complex ia = kI * a;
    Complex I0 = std::sqrt(kPi / ia);
    Complex I2 = I0 / (2.0 * ia);
    double b = dx / (2.0 * a);
    Complex pref = std::exp(kI * (dx * dx / (4.0 * a))) / (2.0 * kPi);
    // T_0 = Int dk/2pi n(k) e^{i(dt E - dx k)} (1/(4m^2)) [ (k+b)^2 I0 + I2 ] pref
    Complex t0 = (pref / (4.0 * mass * mass)) *
                 ((P2 + 2.0 * b * P1 + b * b * P0) * I0 + P0 * I2);

    CorrelatorSample s;
    s.dx = dx;
    s.dt = dt;
    s.value = t0 - t_nn;
    s.quad_error = 1e-14 * (std::abs(t0) + std::abs(t_nn));
    return s;
}

CorrelatorSample quench_pairing_correlator(const QuenchSpec& spec, double dx, double t1,
                                           double t2, const QuadratureSettings& settings) {
    const DispersionRelation& disp = spec.dispersion();
    MomentumDomain dom = disp.domain();
    double espan = 0.0;
    for (int i = 0; i <= 64; ++i)
        espan = std::max(espan, std::abs(disp.energy(dom.lo + dom.width() * i / 64)));
    quad::Options opts = quad_opts(settings);
    opts.min_panels =
        oscillation_panels(std::abs(dx) * dom.width() + (t1 + t2) * espan * 2.0);
    quad::Result q = quad::integrate(
        [&](double k) {
            double ph = k * dx - disp.energy(k) * (t1 + t2);
            return -Complex(std::cos(ph), std::sin(ph)) * spec.g(k) * std::conj(spec.f(k));
        },
        dom.lo, dom.hi, opts);
    CorrelatorSample s;
    s.value = q.value / (2.0 * kPi);
    s.quad_error = q.error / (2.0 * kPi);
    s.dx = dx;
    s.dt = t1 + t2;
    return s;
}

bool in_light_cone(const DispersionRelation& disp, double theta0, double eps, double zeta) {
    double v1 = disp.velocity(theta0 - 0.5 * eps);
    double v2 = disp.velocity(theta0 + 0.5 * eps);
    double lo = std::min(v1, v2), hi = std::max(v1, v2);
    return lo <= 0.5 * zeta && 0.5 * zeta <= hi;
}

namespace {

// Legendre projection table: fixed Gauss-Legendre nodes and P_m values used by
// the window integral below.
struct LegendreTable {
    static constexpr int kNodes = 16;
    static constexpr int kDegree = 12; // inclusive max order
    std::vector<double> nodes, weights;
    // proj[m][i] = (2m+1)/2 * w_i * P_m(x_i)
    std::vector<std::vector<double>> proj;

    LegendreTable() {
        nodes = quad::gl_nodes(kNodes);
        weights = quad::gl_weights(kNodes);
        proj.assign(kDegree + 1, std::vector<double>(kNodes));
        for (int i = 0; i < kNodes; ++i) {
            double x = nodes[i];
            double pm_prev = 1.0, pm = x; // P_0, P_1
            proj[0][i] = 0.5 * weights[i];
            if (kDegree >= 1) proj[1][i] = 1.5 * weights[i] * x;
            for (int m = 2; m <= kDegree; ++m) {
                double next = ((2.0 * m - 1.0) * x * pm - (m - 1.0) * pm_prev) / m;
                pm_prev = pm;
                pm = next;
                proj[m][i] = 0.5 * (2.0 * m + 1.0) * weights[i] * pm;
            }
        }
    }
};

const LegendreTable& legendre_table() {
    static LegendreTable t;
    return t;
}

// j_0..j_M in one pass: upward recurrence where it is stable (x > M), Miller's
// downward recurrence with j_0 normalization otherwise. Parity handles x < 0.
void sph_bessel_array(int M, double x, double* out) {
    double ax = std::abs(x);
    if (ax < 1e-12) {
        out[0] = 1.0;
        for (int m = 1; m <= M; ++m) out[m] = 0.0;
        return;
    }
    if (ax > M + 2) {
        double j0 = std::sin(ax) / ax;
        double j1 = j0 / ax - std::cos(ax) / ax;
        out[0] = j0;
        if (M >= 1) out[1] = j1;
        for (int m = 1; m < M; ++m)
            out[m + 1] = (2.0 * m + 1.0) / ax * out[m] - out[m - 1];
    } else {
        int start = M + 16 + static_cast<int>(ax);
        double jp = 0.0, jc = 1e-30;
        std::vector<double> tmp(M + 1, 0.0);
        for (int m = start; m >= 1; --m) {
            double jm = (2.0 * m + 1.0) / ax * jc - jp;
            jp = jc;
            jc = jm;
            if (m - 1 <= M) tmp[m - 1] = jc;
            if (std::abs(jc) > 1e280) { // rescale to avoid overflow
                double s = 1e-280;
                jc *= s;
                jp *= s;
                for (double& v : tmp) v *= s;
            }
        }
        double scale = (std::sin(ax) / ax) / tmp[0];
        for (int m = 0; m <= M; ++m) out[m] = tmp[m] * scale;
    }
    if (x < 0.0)
        for (int m = 1; m <= M; m += 2) out[m] = -out[m];
}

// One window term of the pair correction for the continuum-quadratic family:
//   -1/(2pi)^2 Int ds Int_A du  e^{i s (x - 2 t u / m)} pi(u-s/2) conj(pi(u+s/2))
// with pi(k) = f_k g*_k. The u integral over the narrow window is done
// spectrally: expand the envelope in Legendre polynomials and use
// Int_{-1}^{1} P_m(xi) e^{-i beta xi} dxi = 2 (-i)^m j_m(beta). The remaining
// s integral carries the single frequency omega0 = x - 2 t theta0 / m; when
// |omega0| exceeds the window spread by omega_cut the analytic envelope's
// transform is far below measurement scale and the term is taken as zero.
Complex correction_window_quadratic(const QuenchSpec& spec, double lo, double hi, double x,
                                    double t, double mass, const QuadratureSettings& settings,
                                    double* err_out) {
    auto pi_amp = [&spec](double k) { return spec.f(k) * std::conj(spec.g(k)); };

    const double s_max = 24.0;     // envelope support (Gaussian tails < 1e-30)
    const double omega_cut = 60.0; // transform decay margin
    const double theta_mid = 0.5 * (lo + hi);
    const double half_eps = 0.5 * (hi - lo);
    const double omega0 = x - 2.0 * t * theta_mid / mass;
    const double spread = 2.0 * t * half_eps / mass;

    if (err_out) *err_out = 0.0;
    if (std::abs(omega0) > omega_cut + spread) return {0.0, 0.0};

    const LegendreTable& tab = legendre_table();

    auto integrand_s = [&](double s) -> Complex {
        // Envelope values on the mapped window nodes.
        Complex coef[LegendreTable::kDegree + 1];
        for (int m = 0; m <= LegendreTable::kDegree; ++m) coef[m] = Complex(0.0, 0.0);
        for (int i = 0; i < LegendreTable::kNodes; ++i) {
            double u = theta_mid + half_eps * tab.nodes[i];
            Complex phi = pi_amp(u - 0.5 * s) * std::conj(pi_amp(u + 0.5 * s));
            for (int m = 0; m <= LegendreTable::kDegree; ++m) coef[m] += tab.proj[m][i] * phi;
        }
        double beta = 2.0 * t * s * half_eps / mass; // window-phase rate
        double jm[LegendreTable::kDegree + 1];
        sph_bessel_array(LegendreTable::kDegree, beta, jm);
        Complex sum{0.0, 0.0};
        Complex im_pow(1.0, 0.0); // (-i)^m
        for (int m = 0; m <= LegendreTable::kDegree; ++m) {
            sum += coef[m] * im_pow * (2.0 * jm[m]);
            im_pow *= Complex(0.0, -1.0);
        }
        // e^{i s omega0} from the window midpoint, times the half-width Jacobian.
        return std::polar(1.0, omega0 * s) * half_eps * sum;
    };

    quad::Options opts = quad_opts(settings);
    opts.abs_tol = 1e-18;
    opts.rel_tol = settings.rel_tol * 100.0;
    opts.min_panels =
        oscillation_panels((std::abs(omega0) + spread) * 2.0 * s_max) + 8;
    quad::Result q = quad::integrate(integrand_s, -s_max, s_max, opts);
    if (err_out) *err_out = q.error / (4.0 * kPi * kPi);
    return -q.value / (4.0 * kPi * kPi);
}

// General-family fallback: honest strip integral, affordable at small scales.
Complex correction_window_direct(const QuenchSpec& spec, double lo, double hi, double x,
                                 double t, const QuadratureSettings& settings,
                                 double* err_out) {
    const DispersionRelation& disp = spec.dispersion();
    MomentumDomain dom = disp.domain();
    auto pi_amp = [&spec](double k) { return spec.f(k) * std::conj(spec.g(k)); };
    double espan = 0.0;
    for (int i = 0; i <= 64; ++i)
        espan = std::max(espan, std::abs(disp.energy(dom.lo + dom.width() * i / 64)));
    double phase_scale = std::abs(x) + 4.0 * t * espan / dom.width();

    auto f = [&](double k, double kp) -> Complex {
        double ph = x * (kp - k) + 2.0 * t * (disp.energy(k) - disp.energy(kp));
        return -std::polar(1.0, ph) * pi_amp(k) * std::conj(pi_amp(kp));
    };
    quad::Result q = strip_double_integral(disp, lo, hi, f, phase_scale, settings);
    if (err_out) *err_out = q.error / (4.0 * kPi * kPi);
    return q.value / (4.0 * kPi * kPi);
}

} // namespace

CorrelatorSample quench_correction_density(const QuenchSpec& spec, const ModeWindow& window,
                                           double zeta, double ell,
                                           const QuadratureSettings& settings) {
    if (ell < 1.0) throw DomainError("quench_correction_density: require ell >= 1");
    const DispersionRelation& disp = spec.dispersion();
    double x = zeta * ell;
    double t = ell;

    CorrelatorSample s;
    s.dx = x;
    s.dt = t;

    const bool quadratic = (disp.family() == "continuum_quadratic");
    double mass = quadratic && disp.velocity(1.0) > 0.0 ? 1.0 / disp.velocity(1.0) : 1.0;

    double err1 = 0.0, err2 = 0.0;
    Complex v;
    if (quadratic) {
        v = correction_window_quadratic(spec, window.lo(), window.hi(), x, t, mass, settings,
                                        &err1);
        if (window.pair)
            v += correction_window_quadratic(spec, -window.theta0 - 0.5 * window.eps,
                                             -window.theta0 + 0.5 * window.eps, x, t, mass,
                                             settings, &err2);
    } else {
        v = correction_window_direct(spec, window.lo(), window.hi(), x, t, settings, &err1);
        if (window.pair)
            v += correction_window_direct(spec, -window.theta0 - 0.5 * window.eps,
                                          -window.theta0 + 0.5 * window.eps, x, t, settings,
                                          &err2);
    }
    s.value = v;
    s.quad_error = err1 + err2;
    return s;
}

Complex single_mode_kernel(double theta0, double eps, double z) {
    if (z == 0.0) return Complex(eps / (2.0 * kPi), 0.0);
    double amp = std::sin(0.5 * eps * z) / (kPi * z);
    return std::polar(amp, theta0 * z);
}

DecayFit decay_exponent_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 6) throw DomainError("decay_exponent_fit: need at least 6 samples");
    std::vector<double> xs, ys;
    for (const auto& [scale, value] : samples) {
        if (value > 0.0 && std::isfinite(value) && scale > 0.0) {
            xs.push_back(std::log(scale));
            ys.push_back(std::log(value));
        }
    }
    const int n = static_cast<int>(xs.size());
    if (n < 4)
        throw NumericalError("decay_exponent_fit: fewer than 4 positive samples", {0.0, 0.0},
                             0.0);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = ys[i] - (intercept + slope * xs[i]);
        ss_res += r * r;
    }
    double var = (n > 2) ? ss_res / (n - 2) : 0.0;

    DecayFit fit;
    fit.exponent = slope;
    fit.stderr_ = std::sqrt(var * n / denom);
    fit.points_used = n;

    // Curvature probe: a significant quadratic term in log-log flags
    // non-power-law decay (e.g. exponentials).
    if (n >= 5) {
        double mx = sx / n;
        double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0, d0 = 0, d1 = 0, d2 = 0;
        for (int i = 0; i < n; ++i) {
            double u = xs[i] - mx;
            double u2 = u * u;
            c0 += 1;
            c1 += u;
            c2 += u2;
            c3 += u2 * u;
            c4 += u2 * u2;
            d0 += ys[i];
            d1 += ys[i] * u;
            d2 += ys[i] * u2;
        }
        // Solve the 3x3 normal equations for y = a + b u + c u^2.
        double A[3][4] = {{c0, c1, c2, d0}, {c1, c2, c3, d1}, {c2, c3, c4, d2}};
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            std::swap(A[col], A[piv]);
            for (int r = 0; r < 3; ++r) {
                if (r == col || A[col][col] == 0.0) continue;
                double fac = A[r][col] / A[col][col];
                for (int c = col; c < 4; ++c) A[r][c] -= fac * A[col][c];
            }
        }
        double curv = (A[2][2] != 0.0) ? A[2][3] / A[2][2] : 0.0;
        if (std::abs(curv) > 0.15 * (1.0 + std::abs(slope))) fit.power_law = false;
    }
    return fit;
}

} // namespace bft::corr
