#include <doctest.h>

#include "bft/correlators.hpp"
#include "bft/errors.hpp"
#include "bft/quadrature.hpp"

#include <cmath>
#include <complex>

using namespace bft;
using corr::ModeWindow;

namespace {
const double kPi = std::acos(-1.0);

GGEState third_filling() {
    return GGEState::constant_weight(make_lattice_cosine(1.0), std::log(2.0));
}

// Plain midpoint-rule double integral, the independent cross-check for the
// adaptive machinery on smooth integrands.
std::complex<double> midpoint_2d(const std::function<std::complex<double>(double, double)>& f,
                                 double lo, double hi, int n) {
    std::complex<double> acc{0.0, 0.0};
    double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            acc += f(lo + (i + 0.5) * h, lo + (j + 0.5) * h);
    return acc * h * h;
}

} // namespace

TEST_SUITE("correlators") {

TEST_CASE("fermion two-point at the origin is the mean density") {
    corr::CorrelatorSample s = corr::gge_fermion_two_point(third_filling(), 0.0, 0.0);
    CHECK(s.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(s.value.imag()) < 1e-12);
}

TEST_CASE("constant occupation has no off-site fermion correlations") {
    corr::CorrelatorSample s = corr::gge_fermion_two_point(third_filling(), 10.0, 0.0);
    CHECK(std::abs(s.value) < 1e-12);
}

TEST_CASE("empty state correlators vanish") {
    GGEState empty = GGEState::constant_weight(make_lattice_cosine(1.0), 700.0);
    CHECK(std::abs(corr::gge_fermion_two_point(empty, 1.0, 2.0).value) < 1e-12);
    CHECK(std::abs(corr::gge_density_density(empty, std::nullopt, 0.0).value) < 1e-12);
    CHECK(std::abs(corr::gge_current_current_direct(empty, std::nullopt, 0.0, 0.0).value) <
          1e-12);
}

TEST_CASE("local density variance for constant occupation") {
    // For constant n both the double integral and n(1-n) give 2/9.
    corr::CorrelatorSample s = corr::gge_density_density(third_filling(), std::nullopt, 0.0);
    CHECK(s.value.real() == doctest::Approx(2.0 / 9.0).epsilon(1e-10));
    CHECK(s.value.real() >= 0.0);
}

TEST_CASE("density-density hermiticity under dx -> -dx") {
    GGEState st = gge_from_quench(QuenchSpec::gamma_sine(make_lattice_cosine(1.0), 0.7));
    auto a = corr::gge_density_density(st, std::nullopt, 3.0);
    auto b = corr::gge_density_density(st, std::nullopt, -3.0);
    CHECK(a.value.real() == doctest::Approx(b.value.real()).epsilon(1e-10));
    CHECK(a.value.imag() == doctest::Approx(-b.value.imag()).epsilon(1e-10));
}

TEST_CASE("single-window density variance matches the band-area closed form") {
    // Constant n: value = n(1-n) * band_area / (2pi)^2 with
    // band_area = Int_{2lo}^{2hi} (2pi - |s|) ds on the fundamental square.
    GGEState st = third_filling();
    double theta0 = 1.2, eps = 0.3;
    ModeWindow w{theta0, eps, false};
    corr::CorrelatorSample s = corr::gge_density_density(st, w, 0.0);
    double a = 2.0 * (theta0 - 0.5 * eps), b = 2.0 * (theta0 + 0.5 * eps);
    double band = (2.0 * kPi - 0.5 * (a + b)) * (b - a);
    double expected = (2.0 / 9.0) * band / (4.0 * kPi * kPi);
    CHECK(s.value.real() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("pair window equals the sum of its two halves") {
    GGEState st = gge_from_quench(QuenchSpec::gamma_sine(make_lattice_cosine(1.0), 0.8));
    double theta0 = 0.875, eps = 0.25;
    auto pair = corr::gge_density_density(st, ModeWindow{theta0, eps, true}, 2.0);
    auto plus = corr::gge_density_density(st, ModeWindow{theta0, eps, false}, 2.0);
    auto minus = corr::gge_density_density(st, ModeWindow{-theta0, eps, false}, 2.0);
    CHECK(std::abs(pair.value - plus.value - minus.value) < 1e-12);
}

TEST_CASE("current-current at the origin: positive, matches independent quadrature") {
    GGEState st = third_filling();
    corr::CorrelatorSample s = corr::gge_current_current_direct(st, std::nullopt, 0.0, 0.0);
    CHECK(s.value.real() > 0.0);
    CHECK(std::abs(s.value.imag()) < 1e-10);

    auto disp = make_lattice_cosine(1.0);
    auto f = [&](double k, double kp) {
        double d = kp - k;
        double K = (std::abs(d) < 1e-9) ? std::sin(0.5 * (k + kp))
                                        : (-std::cos(kp) + std::cos(k)) / d;
        return std::complex<double>(K * K * (2.0 / 9.0), 0.0);
    };
    std::complex<double> ref = midpoint_2d(f, -kPi, kPi, 600) / (4.0 * kPi * kPi);
    CHECK(s.value.real() == doctest::Approx(ref.real()).epsilon(1e-5));
}

TEST_CASE("quadratic fast path: occupied-occupied piece matches 2D quadrature") {
    // The n(k) n(k') part is truncation-safe, so a plain double integral is an
    // independent oracle for the moment factorization.
    auto disp = make_continuum_quadratic(1.0, 6.0);
    GGEState st = GGEState::thermal(disp, 4.0, -0.25);
    const double dt = 3.0;

    quad::Options inner;
    inner.min_panels = 16;
    quad::Options outer = inner;
    auto t_nn_direct =
        quad::integrate(
            [&](double k) {
                return quad::integrate(
                           [&](double kp) {
                               double K = 0.5 * (k + kp);
                               double ph = dt * (0.5 * k * k - 0.5 * kp * kp);
                               return std::polar(K * K * st.n(k) * st.n(kp), ph);
                           },
                           -6.0, 6.0, inner)
                    .value;
            },
            -6.0, 6.0, outer)
            .value /
        (4.0 * kPi * kPi);

    // Moment route: P2 Q0 + 2 P1 Q1 + P0 Q2 over 4.
    auto moment = [&](int m, int sign) {
        quad::Options o;
        o.min_panels = 64;
        return quad::integrate(
                   [&](double k) {
                       double amp = st.n(k);
                       for (int i = 0; i < m; ++i) amp *= k;
                       return std::polar(amp, sign * dt * 0.5 * k * k);
                   },
                   -6.0, 6.0, o)
                   .value /
               (2.0 * kPi);
    };
    auto t_nn_moments = (moment(2, +1) * moment(0, -1) + 2.0 * moment(1, +1) * moment(1, -1) +
                         moment(0, +1) * moment(2, -1)) /
                        4.0;
    CHECK(std::abs(t_nn_direct - t_nn_moments) < 1e-10 * (1.0 + std::abs(t_nn_direct)));
}

TEST_CASE("fresnel vacuum integral matches damped gaussian numerics") {
    // Int (k + k')^2 e^{-(eta + i a) k'^2} dk' has the closed form
    // (k^2 + 1/(2c)) sqrt(pi/c) with c = eta + i a; the eta > 0 member is
    // numerically integrable and validates the algebra used at eta = 0.
    const double eta = 0.3, a = 1.5;
    const std::complex<double> c(eta, a);
    for (double k : {0.0, 0.7, -1.3}) {
        quad::Options o;
        o.min_panels = 64;
        auto numeric = quad::integrate(
                           [&](double kp) {
                               std::complex<double> arg = -(c * kp * kp);
                               return (k + kp) * (k + kp) * std::exp(arg);
                           },
                           -30.0, 30.0, o)
                           .value;
        std::complex<double> closed =
            (k * k + 0.5 / c) * std::sqrt(kPi / c);
        CHECK(std::abs(numeric - closed) < 1e-10 * std::abs(closed));
    }
}

TEST_CASE("current-current long-time decay approaches t^-3") {
    auto disp = make_continuum_quadratic(1.0, 8.0);
    GGEState st = GGEState::thermal(disp, 4.0, -0.25);
    std::vector<std::pair<double, double>> samples;
    for (double t : {20.0, 28.0, 40.0, 57.0, 80.0, 113.0, 160.0, 226.0, 320.0}) {
        auto s = corr::gge_current_current(st, std::nullopt, 0.0, t);
        samples.emplace_back(t, std::abs(s.value));
    }
    corr::DecayFit fit = corr::decay_exponent_fit(samples);
    CHECK(fit.exponent == doctest::Approx(-3.0).epsilon(0.12));
    CHECK(fit.power_law);
}

TEST_CASE("pairing correlator: no pairing, no signal") {
    auto disp = make_lattice_cosine(1.0);
    auto s = corr::quench_pairing_correlator(QuenchSpec::trivial(disp), 1.0, 2.0, 3.0);
    CHECK(std::abs(s.value) < 1e-14);
}

TEST_CASE("pairing correlator at t = 0, dx = 1 for the gamma family") {
    auto disp = make_lattice_cosine(1.0);
    auto s = corr::quench_pairing_correlator(QuenchSpec::gamma_sine(disp, 0.8), 1.0, 0.0, 0.0);
    // (1/c)(1 - 1/sqrt(1+c^2)); the odd-in-k part integrates away.
    CHECK(s.value.real() == doctest::Approx(0.27391398819621215).epsilon(1e-10));
    CHECK(std::abs(s.value.imag()) < 1e-12);
}

TEST_CASE("pairing correlator vanishes at dx = 0 by pair antisymmetry") {
    // f(k) g(-k) + f(-k) g(k) = 0 with |f| even makes g f* exactly odd, so the
    // equal-point integral is zero -- consistent with (and stronger than) the
    // stationary-phase (t+t')^{-3/2} bound.
    auto disp = make_continuum_quadratic(1.0, 10.0);
    QuenchSpec q = QuenchSpec::gauss_pair(disp, 0.6);
    for (double t : {5.0, 20.0, 80.0})
        CHECK(std::abs(corr::quench_pairing_correlator(q, 0.0, t, t).value) < 1e-14);
}

TEST_CASE("pairing correlator decays as (t+t')^{-3/2} at dx = 1") {
    // Off-site separation keeps the even integrand piece; the amplitude still
    // vanishes quadratically at the stationary point, giving the -3/2 law.
    auto disp = make_continuum_quadratic(1.0, 10.0);
    QuenchSpec q = QuenchSpec::gauss_pair(disp, 0.6);
    std::vector<std::pair<double, double>> samples;
    for (double t : {10.0, 14.0, 20.0, 28.0, 40.0, 57.0, 80.0, 113.0, 160.0}) {
        auto s = corr::quench_pairing_correlator(q, 1.0, t, t);
        samples.emplace_back(2.0 * t, std::abs(s.value));
    }
    corr::DecayFit fit = corr::decay_exponent_fit(samples);
    CHECK(fit.exponent == doctest::Approx(-1.5).epsilon(0.08));
}

TEST_CASE("light-cone predicate") {
    auto disp = make_continuum_quadratic(1.0, 10.0);
    CHECK(corr::in_light_cone(*disp, 1.0, 0.25, 2.0));   // zeta/2 = 1.0 = v(theta0)
    CHECK(corr::in_light_cone(*disp, 1.0, 0.25, 2.2));   // 1.1 in [0.875, 1.125]
    CHECK(!corr::in_light_cone(*disp, 1.0, 0.25, 2.3));  // 1.15 outside
    CHECK(!corr::in_light_cone(*disp, 1.0, 0.25, 1.7));  // 0.85 outside
}

TEST_CASE("pair correction: trivial quench gives zero") {
    auto disp = make_continuum_quadratic(1.0, 10.0);
    auto s = corr::quench_correction_density(QuenchSpec::trivial(disp),
                                             ModeWindow{1.0, 0.25, true}, 1.5, 50.0);
    CHECK(std::abs(s.value) < 1e-16);
}

TEST_CASE("pair correction fast path agrees with the direct strip integral") {
    auto disp = make_continuum_quadratic(1.0, 8.0);
    QuenchSpec q = QuenchSpec::gauss_pair(disp, 0.6);
    ModeWindow w{1.125, 0.25, true};
    QuadratureSettings qs;
    auto fast = corr::quench_correction_density(q, w, 2.25, 4.0, qs);
    // The general-family branch is reached through a tabulated (non-quadratic)
    // dispersion carrying the same physics; small scale keeps it affordable.
    std::vector<double> th, en;
    for (int i = 0; i <= 2000; ++i) {
        double t = -8.0 + 16.0 * i / 2000;
        th.push_back(t);
        en.push_back(0.5 * t * t);
    }
    auto tab_disp = make_tabulated(th, en);
    QuenchSpec q_tab(tab_disp, [&q](double k) { return q.f(k); },
                     [&q](double k) { return q.g(k); }, "gauss_pair_tab");
    auto direct = corr::quench_correction_density(q_tab, w, 2.25, 4.0, qs);
    CHECK(std::abs(fast.value - direct.value) < 1e-5 * (1.0 + std::abs(direct.value)));
}

TEST_CASE("pair correction scales as 1/ell inside the cone") {
    auto disp = make_continuum_quadratic(1.0, 10.0);
    QuenchSpec q = QuenchSpec::gauss_pair(disp, 0.6);
    ModeWindow w{1.125, 0.25, true};
    double zeta = 2.0 * 1.125;
    std::vector<std::pair<double, double>> samples;
    for (double ell : {50.0, 84.0, 141.0, 237.0, 399.0, 670.0}) {
        auto s = corr::quench_correction_density(q, w, zeta, ell);
        samples.emplace_back(ell, std::abs(s.value));
    }
    corr::DecayFit fit = corr::decay_exponent_fit(samples);
    CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("pair correction is suppressed outside the cone") {
    auto disp = make_continuum_quadratic(1.0, 10.0);
    QuenchSpec q = QuenchSpec::gauss_pair(disp, 0.6);
    ModeWindow w{1.125, 0.25, true};
    auto in_cone = corr::quench_correction_density(q, w, 2.25, 100.0);
    auto out_cone = corr::quench_correction_density(q, w, 3.75, 100.0);
    CHECK(std::abs(out_cone.value) < 1e-6 * std::abs(in_cone.value));
}

TEST_CASE("single-mode kernel") {
    CHECK(corr::single_mode_kernel(0.3, 0.5, 0.0).real() ==
          doctest::Approx(0.5 / (2.0 * kPi)));
    CHECK(corr::single_mode_kernel(0.3, 0.5, 0.0).imag() == 0.0);
    double eps = 0.5;
    auto k = corr::single_mode_kernel(0.0, eps, kPi / eps);
    CHECK(k.real() == doctest::Approx(eps / (kPi * kPi)).epsilon(1e-14));

    // Integral over the line is the window indicator at momentum zero.
    double z_max = 4000.0, step = 0.05;
    std::complex<double> acc{0.0, 0.0};
    for (double z = -z_max; z <= z_max; z += step)
        acc += corr::single_mode_kernel(0.0, eps, z) * step;
    CHECK(acc.real() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(acc.imag()) < 1e-3);
}

TEST_CASE("single-mode charge variance is extensive on the ring") {
    // Var(sum_{x < l} q_window(x)) / l -> (1/2pi) Int_window n(1-n), using the
    // discrete double-momentum sum as the independent evaluator.
    auto disp = make_lattice_cosine(1.0);
    GGEState st = gge_from_quench(QuenchSpec::gamma_sine(disp, 0.8));
    const int L = 256;
    const double theta0 = 1.1, eps = 0.4;
    auto in_window = [&](double u) { return u >= theta0 - eps / 2 && u < theta0 + eps / 2; };

    auto variance = [&](int ell) {
        double acc = 0.0;
        for (int a = 0; a < L; ++a) {
            double k = -kPi + 2.0 * kPi * a / L;
            for (int b = 0; b < L; ++b) {
                double kp = -kPi + 2.0 * kPi * b / L;
                if (!in_window(0.5 * (k + kp))) continue;
                // |(1/L) sum_{x<ell} e^{ix(kp-k)}|^2
                std::complex<double> d{0.0, 0.0};
                for (int x = 0; x < ell; ++x) d += std::polar(1.0 / L, x * (kp - k));
                acc += std::norm(d) * st.n(k) * (1.0 - st.n(kp));
            }
        }
        return acc;
    };

    quad::Options qo;
    double coeff = quad::integrate_real([&](double u) { return st.n(u) * (1.0 - st.n(u)); },
                                        theta0 - eps / 2, theta0 + eps / 2, qo) /
                   (2.0 * kPi);
    double v32 = variance(32), v64 = variance(64);
    // linear growth: the per-length slope matches the window integral
    CHECK((v64 - v32) / 32.0 == doctest::Approx(coeff).epsilon(0.02));
}

TEST_CASE("decay fit on exact power law") {
    std::vector<std::pair<double, double>> s;
    for (double x : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) s.emplace_back(x, 5.0 / (x * x * x));
    corr::DecayFit fit = corr::decay_exponent_fit(s);
    CHECK(fit.exponent == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(fit.stderr_ < 1e-10);
    CHECK(fit.power_law);
}

TEST_CASE("decay fit flags exponentials") {
    std::vector<std::pair<double, double>> s;
    for (double x : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
        s.emplace_back(x, 3.0 * std::exp(-x));
    corr::DecayFit fit = corr::decay_exponent_fit(s);
    CHECK(!fit.power_law);
    CHECK(fit.exponent < -3.0);
}

TEST_CASE("decay fit input contracts") {
    std::vector<std::pair<double, double>> few{{1.0, 1.0}, {2.0, 0.5}};
    CHECK_THROWS_AS(corr::decay_exponent_fit(few), DomainError);
    std::vector<std::pair<double, double>> zeros{{1.0, 0.0}, {2.0, 0.0}, {4.0, 0.0},
                                                 {8.0, 1.0}, {16.0, 0.5}, {32.0, 0.25}};
    CHECK_THROWS_AS(corr::decay_exponent_fit(zeros), NumericalError);
}

} // TEST_SUITE
