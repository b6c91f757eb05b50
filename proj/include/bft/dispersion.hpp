#ifndef BFT_DISPERSION_HPP
#define BFT_DISPERSION_HPP

#include <memory>
#include <string>
#include <vector>

namespace bft {

struct MomentumDomain {
    double lo;
    double hi;
    bool periodic; // lattice Brillouin zone vs truncated continuum interval
    bool contains(double theta) const { return theta >= lo && theta <= hi; }
    double width() const { return hi - lo; }
};

// Single-particle dispersion E(theta) with group velocity v = E'. Immutable
// after construction; E is required to be even and v odd (checked on a grid
// for the tabulated family, exact for the closed-form ones).
class DispersionRelation {
public:
    virtual ~DispersionRelation() = default;
    virtual double energy(double theta) const = 0;
    virtual double velocity(double theta) const = 0;
    virtual MomentumDomain domain() const = 0;
    virtual std::string family() const = 0;

    double max_speed() const; // max |v| on a dense grid, cached at construction

    // Momentum at the domain check, throws DomainError outside.
    void require_in_domain(double theta) const;

protected:
    mutable double cached_max_speed_ = -1.0;
};

using DispersionPtr = std::shared_ptr<const DispersionRelation>;

// E(k) = -J cos k on the Brillouin zone [-pi, pi).
DispersionPtr make_lattice_cosine(double hopping = 1.0);

// E(theta) = theta^2 / (2m) on [-theta_max, theta_max].
DispersionPtr make_continuum_quadratic(double mass, double theta_max);

// Natural cubic spline through (theta, E) samples; velocity is the spline
// derivative. The table must be symmetric: asymmetric input is rejected.
DispersionPtr make_tabulated(const std::vector<double>& theta,
                             const std::vector<double>& energy);

// Reads a two-column CSV (theta, E).
DispersionPtr make_tabulated_from_csv(const std::string& path);

// All theta with |v(theta)| == level, by sign scan on a uniform grid followed
// by bisection; sorted ascending, empty if level exceeds the max speed.
std::vector<double> velocity_crossings(const DispersionRelation& disp, double level,
                                       int grid_points = 4096);

// Zeros of v(theta), including domain endpoints where v vanishes.
std::vector<double> stationary_points(const DispersionRelation& disp,
                                      int grid_points = 4096);

} // namespace bft

#endif
