#include "bft/dispersion.hpp"

#include "bft/errors.hpp"
#include "bft/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bft {

namespace {
const double kPi = std::acos(-1.0);
}

double DispersionRelation::max_speed() const {
    if (cached_max_speed_ >= 0.0) return cached_max_speed_;
    MomentumDomain d = domain();
    const int n = 8192;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
        double th = d.lo + (d.hi - d.lo) * i / n;
        m = std::max(m, std::abs(velocity(th)));
    }
    cached_max_speed_ = m;
    return m;
}

void DispersionRelation::require_in_domain(double theta) const {
    MomentumDomain d = domain();
    if (theta < d.lo - 1e-12 || theta > d.hi + 1e-12)
        throw DomainError("momentum " + std::to_string(theta) + " outside dispersion domain [" +
                          std::to_string(d.lo) + ", " + std::to_string(d.hi) + "]");
}

namespace {

class LatticeCosine final : public DispersionRelation {
public:
    explicit LatticeCosine(double hopping) : j_(hopping) {
        if (hopping <= 0.0) throw DomainError("lattice-cosine hopping must be positive");
    }
    double energy(double th) const override { return -j_ * std::cos(th); }
    double velocity(double th) const override { return j_ * std::sin(th); }
    MomentumDomain domain() const override { return {-kPi, kPi, true}; }
    std::string family() const override { return "lattice_cosine"; }

private:
    double j_;
};

class ContinuumQuadratic final : public DispersionRelation {
public:
    ContinuumQuadratic(double mass, double theta_max) : m_(mass), tmax_(theta_max) {
        if (mass <= 0.0) throw DomainError("continuum-quadratic mass must be positive");
        if (theta_max <= 0.0) throw DomainError("continuum truncation must be positive");
    }
    double energy(double th) const override { return 0.5 * th * th / m_; }
    double velocity(double th) const override { return th / m_; }
    MomentumDomain domain() const override { return {-tmax_, tmax_, false}; }
    std::string family() const override { return "continuum_quadratic"; }

private:
    double m_, tmax_;
};

// Natural cubic spline; second derivatives from the standard tridiagonal solve.
class Spline {
public:
    Spline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n < 4) throw DomainError("tabulated dispersion needs at least 4 samples");
        for (size_t i = 1; i < n; ++i)
            if (x_[i] <= x_[i - 1]) throw DomainError("tabulated dispersion momenta must increase");
        y2_.assign(n, 0.0);
        std::vector<double> u(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
            double p = sig * y2_[i - 1] + 2.0;
            y2_[i] = (sig - 1.0) / p;
            u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
                   (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
            u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (size_t i = n - 1; i-- > 0;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
    }

    double eval(double x) const {
        size_t k = locate(x);
        double h = x_[k + 1] - x_[k];
        double a = (x_[k + 1] - x) / h;
        double b = (x - x_[k]) / h;
        return a * y_[k] + b * y_[k + 1] +
               ((a * a * a - a) * y2_[k] + (b * b * b - b) * y2_[k + 1]) * h * h / 6.0;
    }

    double deriv(double x) const {
        size_t k = locate(x);
        double h = x_[k + 1] - x_[k];
        double a = (x_[k + 1] - x) / h;
        double b = (x - x_[k]) / h;
        return (y_[k + 1] - y_[k]) / h +
               ((3.0 * b * b - 1.0) * y2_[k + 1] - (3.0 * a * a - 1.0) * y2_[k]) * h / 6.0;
    }

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }

private:
    size_t locate(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        size_t k = (it == x_.begin()) ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
        return std::min(k, x_.size() - 2);
    }
    std::vector<double> x_, y_, y2_;
};

class Tabulated final : public DispersionRelation {
public:
    Tabulated(const std::vector<double>& th, const std::vector<double>& en)
        : spline_(th, en) {
        // Standing assumption: E even. Asymmetric tables are rejected.
        double span = std::min(-spline_.lo(), spline_.hi());
        if (span <= 0.0) throw DomainError("tabulated dispersion must straddle theta = 0");
        double scale = 1e-300;
        for (double e : en) scale = std::max(scale, std::abs(e));
        for (int i = 0; i <= 256; ++i) {
            double t = span * i / 256.0;
            if (std::abs(spline_.eval(t) - spline_.eval(-t)) > 1e-8 * std::max(scale, 1.0))
                throw DomainError("tabulated dispersion is not symmetric: E(theta) != E(-theta)");
        }
    }
    double energy(double th) const override { return spline_.eval(th); }
    double velocity(double th) const override { return spline_.deriv(th); }
    MomentumDomain domain() const override { return {spline_.lo(), spline_.hi(), false}; }
    std::string family() const override { return "tabulated"; }

private:
    Spline spline_;
};

} // namespace

DispersionPtr make_lattice_cosine(double hopping) {
    return std::make_shared<LatticeCosine>(hopping);
}

DispersionPtr make_continuum_quadratic(double mass, double theta_max) {
    return std::make_shared<ContinuumQuadratic>(mass, theta_max);
}

DispersionPtr make_tabulated(const std::vector<double>& theta, const std::vector<double>& energy) {
    if (theta.size() != energy.size()) throw DomainError("tabulated dispersion: column size mismatch");
    return std::make_shared<Tabulated>(theta, energy);
}

DispersionPtr make_tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open dispersion table: " + path);
    std::vector<double> th, en;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            th.push_back(a);
            en.push_back(b);
        }
    }
    return make_tabulated(th, en);
}

std::vector<double> velocity_crossings(const DispersionRelation& disp, double level,
                                       int grid_points) {
    if (level < 0.0) throw DomainError("velocity crossing level must be nonnegative");
    MomentumDomain d = disp.domain();
    auto g = [&](double th) { return std::abs(disp.velocity(th)) - level; };
    std::vector<double> roots;
    double prev_th = d.lo;
    double prev_g = g(prev_th);
    if (prev_g == 0.0) roots.push_back(prev_th);
    for (int i = 1; i <= grid_points; ++i) {
        double th = d.lo + d.width() * i / grid_points;
        double cur = g(th);
        if (cur == 0.0) {
            roots.push_back(th);
        } else if (prev_g * cur < 0.0) {
            roots.push_back(quad::bisect(g, prev_th, th, 1e-14));
        }
        prev_th = th;
        prev_g = cur;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                roots.end());
    // Half-open lattice domain: drop the duplicate right edge.
    if (d.periodic && !roots.empty() && std::abs(roots.back() - d.hi) < 1e-9) roots.pop_back();
    return roots;
}

std::vector<double> stationary_points(const DispersionRelation& disp, int grid_points) {
    MomentumDomain d = disp.domain();
    auto v = [&](double th) { return disp.velocity(th); };
    std::vector<double> roots;
    double prev_th = d.lo;
    double prev_v = v(prev_th);
    if (std::abs(prev_v) < 1e-12) roots.push_back(prev_th);
    for (int i = 1; i <= grid_points; ++i) {
        double th = d.lo + d.width() * i / grid_points;
        double cur = v(th);
        if (cur == 0.0) {
            roots.push_back(th);
        } else if (prev_v * cur < 0.0) {
            roots.push_back(quad::bisect(v, prev_th, th, 1e-14));
        } else if (std::abs(cur) < 1e-12 && i == grid_points) {
            roots.push_back(th);
        }
        prev_th = th;
        prev_v = cur;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                roots.end());
    if (d.periodic && !roots.empty() && std::abs(roots.back() - d.hi) < 1e-9) roots.pop_back();
    return roots;
}

} // namespace bft
