#include "bft/entropy.hpp"

#include "bft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bft {

namespace {
const double kPi = std::acos(-1.0);

quad::Options quad_opts(const QuadratureSettings& s) {
    quad::Options o;
    o.rel_tol = s.rel_tol;
    o.abs_tol = s.abs_tol;
    o.panel_points = s.panel_points;
    o.max_panels = s.max_panels;
    return o;
}

void require_even_alpha(int alpha) {
    if (alpha < 2 || alpha % 2 != 0)
        throw DomainError("sector decomposition is defined for even alpha >= 2");
}

std::string describe(const GGEState& state, const QuadratureSettings& s) {
    std::ostringstream os;
    os << state.description() << "; disp=" << state.dispersion().family()
       << "; rel_tol=" << s.rel_tol
       << "; theta_max=" << 0.5 * state.dispersion().domain().width();
    return os.str();
}

} // namespace

SectorSet SectorSet::for_even_alpha(int alpha) {
    require_even_alpha(alpha);
    SectorSet s;
    s.alpha = alpha;
    for (int p = -alpha + 1; p <= alpha - 1; p += 2) {
        s.momenta.push_back(p);
        s.charges.push_back(kPi * p / alpha);
    }
    return s;
}

double h_alpha(double n, double alpha) {
    if (alpha <= 0.0) throw DomainError("h_alpha: alpha must be positive");
    n = std::clamp(n, 0.0, 1.0);
    if (alpha == 1.0) {
        double s = 0.0;
        if (n > 0.0) s -= n * std::log(n);
        if (n < 1.0) s -= (1.0 - n) * std::log(1.0 - n);
        return s;
    }
    double z = std::pow(n, alpha) + std::pow(1.0 - n, alpha);
    return std::log(z) / (1.0 - alpha);
}

namespace {

EntropyResult rate_integral(const GGEState& state, double alpha,
                            const std::function<double(double)>& weight,
                            const std::vector<double>& breakpoints, EntropyKind kind,
                            const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    quad::Options opts = quad_opts(settings);
    opts.breakpoints = breakpoints;
    double v = quad::integrate_real(
                   [&](double th) { return weight(th) * h_alpha(state.n(th), alpha); }, dom.lo,
                   dom.hi, opts) /
               (2.0 * kPi);
    EntropyResult r;
    r.value = v;
    r.kind = kind;
    r.alpha = alpha;
    r.provenance = describe(state, settings);
    return r;
}

} // namespace

EntropyResult renyi_rate_space(const GGEState& state, double alpha,
                               const QuadratureSettings& settings) {
    return rate_integral(
        state, alpha, [](double) { return 1.0; }, {}, EntropyKind::SpaceRate, settings);
}

EntropyResult renyi_rate_time(const GGEState& state, double alpha,
                              const QuadratureSettings& settings) {
    const DispersionRelation& disp = state.dispersion();
    auto stat = stationary_points(disp, settings.crossing_grid);
    return rate_integral(
        state, alpha, [&disp](double th) { return std::abs(disp.velocity(th)); }, stat,
        EntropyKind::TimeRate, settings);
}

EntropyResult renyi_profile(const GGEState& state, double alpha, double x, double t,
                            const QuadratureSettings& settings) {
    if (x < 0.0 || t < 0.0) throw DomainError("renyi_profile: x and t must be nonnegative");
    const DispersionRelation& disp = state.dispersion();
    std::vector<double> cuts = stationary_points(disp, settings.crossing_grid);
    if (t > 0.0) {
        auto cr = velocity_crossings(disp, x / (2.0 * t), settings.crossing_grid);
        cuts.insert(cuts.end(), cr.begin(), cr.end());
        std::sort(cuts.begin(), cuts.end());
    }
    EntropyResult r = rate_integral(
        state, alpha,
        [&](double th) { return std::min(x, 2.0 * t * std::abs(disp.velocity(th))); }, cuts,
        EntropyKind::Profile, settings);
    r.kind = EntropyKind::Profile;
    r.x = x;
    r.t = t;
    return r;
}

Complex sector_scgf_sum(const GGEState& state, int alpha, CutDirection direction,
                        const QuadratureSettings& settings) {
    require_even_alpha(alpha);
    SectorSet sectors = SectorSet::for_even_alpha(alpha);
    const Complex minus_i(0.0, -1.0);
    Complex sum{0.0, 0.0};
    for (double hp : sectors.charges) {
        ScgfResult f;
        if (direction == CutDirection::Space) {
            f = scgf(state, ChargeEigenvalue::constant(hp), minus_i,
                     RayPath::spatial_direction(), settings);
        } else {
            // Path runs from (0,t) down to (0,0): opposite orientation, h -> -h_p.
            f = scgf(state, ChargeEigenvalue::constant(-hp), minus_i,
                     RayPath::temporal_direction(), settings);
        }
        sum += f.value;
    }
    return sum;
}

SectorIdentityReport sector_identity_check(const GGEState& state, int alpha,
                                           CutDirection direction,
                                           const QuadratureSettings& settings) {
    SectorIdentityReport rep;
    rep.sector_sum = sector_scgf_sum(state, alpha, direction, settings);
    EntropyResult rate = (direction == CutDirection::Space)
                             ? renyi_rate_space(state, alpha, settings)
                             : renyi_rate_time(state, alpha, settings);
    rep.rate = rate.value;
    rep.rate_residual = std::abs(rep.sector_sum.real() / (1.0 - alpha) - rate.value);
    rep.imag_residual = std::abs(rep.sector_sum.imag());
    return rep;
}

FcsSplit fcs_split(const GGEState& state, int alpha, double xi,
                   const QuadratureSettings& settings) {
    require_even_alpha(alpha);
    if (!(xi > 0.0)) throw DomainError("fcs_split: xi must be positive");
    if (!settings.allow_branch_risk && !state.in_validated_regime())
        throw BranchRiskError("fcs_split: state outside the validated regime");

    const DispersionRelation& disp = state.dispersion();
    MomentumDomain dom = disp.domain();
    SectorSet sectors = SectorSet::for_even_alpha(alpha);

    // Slow/fast boundary and |v| kinks.
    std::vector<double> cuts = velocity_crossings(disp, 0.5 * xi, settings.crossing_grid);
    auto stat = stationary_points(disp, settings.crossing_grid);
    cuts.insert(cuts.end(), stat.begin(), stat.end());
    cuts.push_back(0.0); // sgn(theta) discontinuity in the dynamic part
    std::sort(cuts.begin(), cuts.end());

    FcsSplit out;
    out.charges = sectors.charges;
    const bool allow = settings.allow_branch_risk;
    for (double hp : sectors.charges) {
        quad::Options opts = quad_opts(settings);
        opts.breakpoints = cuts;
        auto log_ratio = [&](double th, double phase) -> Complex {
            // log((1+e^{i phase - w})/(1+e^{-w})) = -[f(w - i phase) - f(w)]
            return -free_energy_delta(state.w(th), Complex(0.0, -phase), allow);
        };
        quad::Result dyn = quad::integrate(
            [&](double th) -> Complex {
                double av = std::abs(disp.velocity(th));
                if (av >= 0.5 * xi) return {0.0, 0.0};
                double sgn = (th > 0.0) ? 1.0 : (th < 0.0 ? -1.0 : 0.0);
                return av * log_ratio(th, hp * sgn);
            },
            dom.lo, dom.hi, opts);
        quad::Result stat_part = quad::integrate(
            [&](double th) -> Complex {
                double av = std::abs(disp.velocity(th));
                if (av <= 0.5 * xi) return {0.0, 0.0};
                return log_ratio(th, hp);
            },
            dom.lo, dom.hi, opts);
        out.f_dyn.push_back(dyn.value / (2.0 * kPi));
        out.f_stat.push_back(stat_part.value / (2.0 * kPi));
    }
    return out;
}

MainfluctuReport mainfluctu_check(const GGEState& state, int alpha, double x, double t,
                                  const QuadratureSettings& settings) {
    if (!(x > 0.0) || !(t > 0.0)) throw DomainError("mainfluctu_check: x, t must be positive");
    MainfluctuReport rep;
    rep.profile = renyi_profile(state, alpha, x, t, settings).value;
    FcsSplit split = fcs_split(state, alpha, x / t, settings);
    Complex total{0.0, 0.0};
    for (size_t i = 0; i < split.charges.size(); ++i)
        total += 2.0 * t * split.f_dyn[i] + x * split.f_stat[i];
    rep.fcs_value = total.real() / (1.0 - alpha);
    rep.residual = std::abs(rep.fcs_value - rep.profile);
    return rep;
}

} // namespace bft
