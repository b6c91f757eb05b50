#ifndef BFT_STATE_HPP
#define BFT_STATE_HPP

#include "bft/dispersion.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace bft {

// n(w) = 1/(1 + e^w), overflow-safe for large |w|.
double occupation_from_weight(double w);

// Inverse of the above, saturated at +-cap where n -> 0 or 1.
double weight_from_occupation(double n, double cap = 700.0);

// GGE fixed by its generalized Boltzmann weight w(theta). w is the stored
// primary field; the occupation n is derived. Immutable after construction.
class GGEState {
public:
    GGEState(DispersionPtr disp, std::function<double(double)> w, std::string description,
             double weight_cap = 700.0);

    double w(double theta) const { return w_(theta); }
    double n(double theta) const { return occupation_from_weight(w_(theta)); }
    const DispersionRelation& dispersion() const { return *disp_; }
    DispersionPtr dispersion_ptr() const { return disp_; }
    const std::string& description() const { return description_; }
    double weight_cap() const { return cap_; }

    // True when w > 0 (n < 1/2) on a dense grid: the regime where every
    // principal-branch log in the SCGF integrands is safe. Cached.
    bool in_validated_regime(int grid_points = 2048) const;

    // Occupation at the domain boundary; the continuum truncation is adequate
    // when this is below ~1e-14.
    double boundary_occupation() const;

    static GGEState thermal(DispersionPtr disp, double beta, double mu);
    static GGEState constant_weight(DispersionPtr disp, double w);
    static GGEState constant_occupation(DispersionPtr disp, double n);
    static GGEState tabulated(DispersionPtr disp, const std::vector<double>& theta,
                              const std::vector<double>& w);
    static GGEState tabulated_from_csv(DispersionPtr disp, const std::string& path);

private:
    DispersionPtr disp_;
    std::function<double(double)> w_;
    std::string description_;
    double cap_;
    mutable int validated_cache_ = -1; // -1 unknown, 0 no, 1 yes
};

// Bogoliubov pair amplitudes (f, g) of a pair-producing quench.
class QuenchSpec {
public:
    QuenchSpec(DispersionPtr disp, std::function<std::complex<double>(double)> f,
               std::function<std::complex<double>(double)> g, std::string description);

    std::complex<double> f(double theta) const { return f_(theta); }
    std::complex<double> g(double theta) const { return g_(theta); }
    const DispersionRelation& dispersion() const { return *disp_; }
    DispersionPtr dispersion_ptr() const { return disp_; }
    const std::string& description() const { return description_; }
    double family_param() const { return family_param_; } // 0 when not applicable
    void set_family_param(double v) { family_param_ = v; }

    // Squeezed-state kernel K(theta,-theta) = -g/f.
    std::complex<double> pair_kernel(double theta) const;

    // f = 1/sqrt(1 + c^2 sin^2 k), g = i c sin k / sqrt(1 + c^2 sin^2 k).
    // Reference quench on the lattice; satisfies every constraint in closed form.
    static QuenchSpec gamma_sine(DispersionPtr disp, double c);

    // f real, g = i c k exp(-k^2/4); continuum reference with n -> 0 at large k.
    // Requires c < ~0.824 so that max |g|^2 < 1/2.
    static QuenchSpec gauss_pair(DispersionPtr disp, double c);

    static QuenchSpec trivial(DispersionPtr disp); // g = 0: no pair production

    // Columns: theta, Re f, Im f, Re g, Im g.
    static QuenchSpec tabulated_from_csv(DispersionPtr disp, const std::string& path);

private:
    DispersionPtr disp_;
    std::function<std::complex<double>(double)> f_, g_;
    std::string description_;
    double family_param_ = 0.0;
};

struct QuenchValidation {
    double max_norm_violation = 0.0;      // | |f|^2 + |g|^2 - 1 |
    double max_antisym_violation = 0.0;   // | f(t)g(-t) + f(-t)g(t) |
    double g_at_zero = 0.0;               // |g(0)|
    double boundary_g2 = 0.0;             // |g|^2 at the domain edge (continuum only)
    std::vector<double> offending_momenta; // where a pointwise check exceeds 1e-10
    bool check_boundary = false;
    double tolerance = 1e-10;

    bool passed() const;
};

// Evaluates all QuenchSpec invariants on a dense grid. Returns a report
// rather than throwing; gge_from_quench enforces it as a precondition.
QuenchValidation validate_quench(const QuenchSpec& spec, int grid_points = 2001,
                                 bool check_boundary_decay = false);

// Long-time GGE of a quench: n = |g|^2, w = ln((1-n)/n) saturated at the cap.
GGEState gge_from_quench(const QuenchSpec& spec, double weight_cap = 700.0);

} // namespace bft

#endif
