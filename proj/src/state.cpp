#include "bft/state.hpp"

#include "bft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace bft {

double occupation_from_weight(double w) {
    if (std::isnan(w)) throw DomainError("occupation_from_weight: w is NaN");
    if (w >= 0.0) {
        double e = std::exp(-w);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(w));
}

double weight_from_occupation(double n, double cap) {
    if (n <= 0.0) return cap;
    if (n >= 1.0) return -cap;
    double w = std::log((1.0 - n) / n);
    return std::clamp(w, -cap, cap);
}

GGEState::GGEState(DispersionPtr disp, std::function<double(double)> w, std::string description,
                   double weight_cap)
    : disp_(std::move(disp)), w_(std::move(w)), description_(std::move(description)),
      cap_(weight_cap) {
    if (!disp_) throw DomainError("GGEState: null dispersion");
}

bool GGEState::in_validated_regime(int grid_points) const {
    if (validated_cache_ >= 0) return validated_cache_ == 1;
    MomentumDomain d = disp_->domain();
    bool ok = true;
    for (int i = 0; i <= grid_points && ok; ++i) {
        double th = d.lo + d.width() * i / grid_points;
        if (!(w_(th) > 0.0)) ok = false;
    }
    validated_cache_ = ok ? 1 : 0;
    return ok;
}

double GGEState::boundary_occupation() const {
    MomentumDomain d = disp_->domain();
    return std::max(n(d.lo), n(d.hi));
}

GGEState GGEState::thermal(DispersionPtr disp, double beta, double mu) {
    auto d = disp;
    std::ostringstream desc;
    desc << "thermal(beta=" << beta << ",mu=" << mu << ")";
    return GGEState(
        d, [d, beta, mu](double th) { return beta * (d->energy(th) - mu); }, desc.str());
}

GGEState GGEState::constant_weight(DispersionPtr disp, double w) {
    std::ostringstream desc;
    desc << "constant_w(" << w << ")";
    return GGEState(std::move(disp), [w](double) { return w; }, desc.str());
}

GGEState GGEState::constant_occupation(DispersionPtr disp, double n) {
    return constant_weight(std::move(disp), weight_from_occupation(n));
}

namespace {

// Shared natural-spline-on-vector helper for tabulated states. Linear blend
// outside the sampled range is never needed: callers sample the full domain.
struct WTable {
    std::vector<double> x, y, y2;

    WTable(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        size_t n = x.size();
        if (n < 4) throw DomainError("tabulated state needs at least 4 samples");
        y2.assign(n, 0.0);
        std::vector<double> u(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
            double p = sig * y2[i - 1] + 2.0;
            y2[i] = (sig - 1.0) / p;
            u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
            u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
        }
        for (size_t i = n - 1; i-- > 0;) y2[i] = y2[i] * y2[i + 1] + u[i];
    }

    double operator()(double t) const {
        auto it = std::upper_bound(x.begin(), x.end(), t);
        size_t k = (it == x.begin()) ? 0 : static_cast<size_t>(it - x.begin()) - 1;
        k = std::min(k, x.size() - 2);
        double h = x[k + 1] - x[k];
        double a = (x[k + 1] - t) / h;
        double b = (t - x[k]) / h;
        return a * y[k] + b * y[k + 1] +
               ((a * a * a - a) * y2[k] + (b * b * b - b) * y2[k + 1]) * h * h / 6.0;
    }
};

std::vector<std::vector<double>> read_csv_columns(const std::string& path, size_t ncols) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open table: " + path);
    std::vector<std::vector<double>> cols(ncols);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (row.size() < ncols) continue;
        for (size_t c = 0; c < ncols; ++c) cols[c].push_back(row[c]);
    }
    if (cols[0].empty()) throw DomainError("empty table: " + path);
    return cols;
}

} // namespace

GGEState GGEState::tabulated(DispersionPtr disp, const std::vector<double>& theta,
                             const std::vector<double>& w) {
    if (theta.size() != w.size()) throw DomainError("tabulated state: column size mismatch");
    auto table = std::make_shared<WTable>(theta, w);
    return GGEState(std::move(disp), [table](double t) { return (*table)(t); }, "tabulated_w");
}

GGEState GGEState::tabulated_from_csv(DispersionPtr disp, const std::string& path) {
    auto cols = read_csv_columns(path, 2);
    return tabulated(std::move(disp), cols[0], cols[1]);
}

QuenchSpec::QuenchSpec(DispersionPtr disp, std::function<std::complex<double>(double)> f,
                       std::function<std::complex<double>(double)> g, std::string description)
    : disp_(std::move(disp)), f_(std::move(f)), g_(std::move(g)),
      description_(std::move(description)) {
    if (!disp_) throw DomainError("QuenchSpec: null dispersion");
}

std::complex<double> QuenchSpec::pair_kernel(double theta) const {
    std::complex<double> fv = f_(theta);
    if (std::abs(fv) == 0.0) throw DomainError("pair kernel undefined where f = 0");
    return -g_(theta) / fv;
}

QuenchSpec QuenchSpec::gamma_sine(DispersionPtr disp, double c) {
    std::ostringstream desc;
    desc << "gamma_sine(" << c << ")";
    auto f = [c](double k) {
        double s = std::sin(k);
        return std::complex<double>(1.0 / std::sqrt(1.0 + c * c * s * s), 0.0);
    };
    auto g = [c](double k) {
        double s = std::sin(k);
        return std::complex<double>(0.0, c * s / std::sqrt(1.0 + c * c * s * s));
    };
    QuenchSpec spec(std::move(disp), f, g, desc.str());
    spec.set_family_param(c);
    return spec;
}

QuenchSpec QuenchSpec::gauss_pair(DispersionPtr disp, double c) {
    // max_k |c k e^{-k^2/4}| = c sqrt(2) e^{-1/2}; keep |g|^2 < 1/2.
    if (!(c > 0.0) || c * std::sqrt(2.0) * std::exp(-0.5) >= 1.0 / std::sqrt(2.0))
        throw DomainError("gauss_pair amplitude out of range (need c < 0.824)");
    std::ostringstream desc;
    desc << "gauss_pair(" << c << ")";
    auto gmag = [c](double k) { return c * k * std::exp(-k * k / 4.0); };
    auto f = [gmag](double k) {
        double g2 = gmag(k) * gmag(k);
        return std::complex<double>(std::sqrt(1.0 - g2), 0.0);
    };
    auto g = [gmag](double k) { return std::complex<double>(0.0, gmag(k)); };
    QuenchSpec spec(std::move(disp), f, g, desc.str());
    spec.set_family_param(c);
    return spec;
}

QuenchSpec QuenchSpec::trivial(DispersionPtr disp) {
    return QuenchSpec(
        std::move(disp), [](double) { return std::complex<double>(1.0, 0.0); },
        [](double) { return std::complex<double>(0.0, 0.0); }, "trivial");
}

QuenchSpec QuenchSpec::tabulated_from_csv(DispersionPtr disp, const std::string& path) {
    auto cols = read_csv_columns(path, 5);
    auto fr = std::make_shared<WTable>(cols[0], cols[1]);
    auto fi = std::make_shared<WTable>(cols[0], cols[2]);
    auto gr = std::make_shared<WTable>(cols[0], cols[3]);
    auto gi = std::make_shared<WTable>(cols[0], cols[4]);
    auto f = [fr, fi](double t) { return std::complex<double>((*fr)(t), (*fi)(t)); };
    auto g = [gr, gi](double t) { return std::complex<double>((*gr)(t), (*gi)(t)); };
    return QuenchSpec(std::move(disp), f, g, "tabulated_quench");
}

bool QuenchValidation::passed() const {
    bool ok = max_norm_violation < tolerance && max_antisym_violation < tolerance &&
              g_at_zero < tolerance;
    if (check_boundary) ok = ok && boundary_g2 < tolerance;
    return ok;
}

QuenchValidation validate_quench(const QuenchSpec& spec, int grid_points,
                                 bool check_boundary_decay) {
    QuenchValidation rep;
    rep.check_boundary = check_boundary_decay;
    MomentumDomain d = spec.dispersion().domain();
    if (grid_points % 2 == 0) ++grid_points; // odd count puts a node at theta = 0
    for (int i = 0; i <= grid_points; ++i) {
        double th = d.lo + d.width() * i / grid_points;
        std::complex<double> fv = spec.f(th), gv = spec.g(th);
        std::complex<double> fm = spec.f(-th), gm = spec.g(-th);
        double norm_v = std::abs(std::norm(fv) + std::norm(gv) - 1.0);
        double anti_v = std::abs(fv * gm + fm * gv);
        rep.max_norm_violation = std::max(rep.max_norm_violation, norm_v);
        rep.max_antisym_violation = std::max(rep.max_antisym_violation, anti_v);
        if (norm_v > rep.tolerance || anti_v > rep.tolerance) rep.offending_momenta.push_back(th);
    }
    rep.g_at_zero = std::abs(spec.g(0.0));
    if (rep.g_at_zero > rep.tolerance) rep.offending_momenta.push_back(0.0);
    rep.boundary_g2 = std::max(std::norm(spec.g(d.lo)), std::norm(spec.g(d.hi)));
    return rep;
}

GGEState gge_from_quench(const QuenchSpec& spec, double weight_cap) {
    QuenchValidation rep = validate_quench(spec);
    if (!rep.passed())
        throw PreconditionError("gge_from_quench: quench spec fails validation (max violation " +
                                std::to_string(std::max(rep.max_norm_violation,
                                                        rep.max_antisym_violation)) +
                                ")");
    auto gfun = [spec, weight_cap](double th) {
        return weight_from_occupation(std::norm(spec.g(th)), weight_cap);
    };
    return GGEState(spec.dispersion_ptr(), gfun, "gge_from_quench[" + spec.description() + "]",
                    weight_cap);
}

} // namespace bft
