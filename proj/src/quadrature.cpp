#include "bft/quadrature.hpp"

#include "bft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace bft::quad {

namespace {

struct GLRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on P_n with the three-term recurrence. Nodes accurate to
// machine precision for the orders used here (<= 64).
GLRule compute_gl(int n) {
    GLRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one clean-up step after convergence
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const GLRule& rule_for(int n) {
    static std::map<int, GLRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

Complex gl_panel(const std::function<Complex(double)>& f, double a, double b, const GLRule& r) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex sum{0.0, 0.0};
    for (size_t i = 0; i < r.nodes.size(); ++i)
        sum += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * sum;
}

struct Panel {
    double a, b;
    Complex coarse;
    int depth;
};

} // namespace

const std::vector<double>& gl_nodes(int n) { return rule_for(n).nodes; }
const std::vector<double>& gl_weights(int n) { return rule_for(n).weights; }

Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opts) {
    Result res;
    if (a == b) return res;
    if (b < a) {
        Result r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    const GLRule& r = rule_for(opts.panel_points);

    // Seed panels: breakpoints first, then the uniform oscillation pre-split.
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : opts.breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-15; }),
               cuts.end());

    std::vector<Panel> stack;
    const int pre = std::max(1, opts.min_panels);
    // Push in reverse so the leftmost panel is processed first.
    for (size_t s = cuts.size() - 1; s-- > 0;) {
        double lo = cuts[s], hi = cuts[s + 1];
        double w = (hi - lo) / pre;
        for (int j = pre - 1; j >= 0; --j)
            stack.push_back(Panel{lo + j * w, lo + (j + 1) * w, gl_panel(f, lo + j * w, lo + (j + 1) * w, r), 0});
    }

    // First-pass magnitude for the relative-tolerance scale.
    double scale = 0.0;
    for (const Panel& p : stack) scale += std::abs(p.coarse);
    const double total_width = b - a;
    const double tol_global = std::max(opts.abs_tol, opts.rel_tol * std::max(scale, 1e-300));

    Complex total{0.0, 0.0};
    Complex comp{0.0, 0.0}; // Kahan compensation
    double err_total = 0.0;
    int used = static_cast<int>(stack.size());

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double mid = 0.5 * (p.a + p.b);
        Complex left = gl_panel(f, p.a, mid, r);
        Complex right = gl_panel(f, mid, p.b, r);
        Complex fine = left + right;
        double err = std::abs(fine - p.coarse);
        double tol_panel = tol_global * (p.b - p.a) / total_width;
        bool width_floor = (p.b - p.a) < 1e-13 * total_width;
        if (err <= tol_panel || p.depth >= 60 || width_floor) {
            Complex y = fine - comp;
            Complex t = total + y;
            comp = (t - total) - y;
            total = t;
            err_total += err;
        } else {
            if (used + 2 > opts.max_panels) {
                // Budget exhausted: drain the stack with the fine estimates.
                Complex partial = total + fine;
                double perr = err_total + err;
                while (!stack.empty()) {
                    partial += stack.back().coarse;
                    perr += std::abs(stack.back().coarse) * 1e-8;
                    stack.pop_back();
                }
                if (opts.throw_on_failure)
                    throw NumericalError("quadrature did not converge within the panel budget",
                                         partial, perr);
                res.value = partial;
                res.error = perr;
                res.panels = used;
                res.converged = false;
                return res;
            }
            used += 2;
            // Right pushed first so the left half is refined next (L-to-R order).
            stack.push_back(Panel{mid, p.b, right, p.depth + 1});
            stack.push_back(Panel{p.a, mid, left, p.depth + 1});
        }
    }

    res.value = total;
    res.error = err_total;
    res.panels = used;
    return res;
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opts) {
    auto g = [&f](double x) { return Complex(f(x), 0.0); };
    return integrate(g, a, b, opts).value.real();
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
    double flo = g(lo);
    double fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw DomainError("bisect: no sign change on bracket");
    for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = g(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace bft::quad
