#ifndef BFT_ENTROPY_HPP
#define BFT_ENTROPY_HPP

#include "bft/bft_core.hpp"

#include <complex>
#include <string>
#include <vector>

namespace bft {

// Fourier-sector data for even Renyi index alpha: momenta p in
// {-alpha+1, -alpha+3, ..., alpha-1} with charges h_p = pi p / alpha.
struct SectorSet {
    int alpha;
    std::vector<int> momenta;
    std::vector<double> charges;

    static SectorSet for_even_alpha(int alpha);
};

enum class EntropyKind { SpaceRate, TimeRate, Profile };

struct EntropyResult {
    double value = 0.0;
    EntropyKind kind = EntropyKind::SpaceRate;
    double alpha = 0.0;
    double x = 0.0, t = 0.0; // profile arguments when kind == Profile
    std::string provenance;
};

enum class CutDirection { Space, Time };

// H_alpha(n): (1/(1-alpha)) log(n^a + (1-n)^a); alpha = 1 is the von Neumann
// branch -n log n - (1-n) log(1-n) with 0 log 0 := 0.
double h_alpha(double n, double alpha);

// Int dtheta/2pi H_alpha(n): entropy per unit length in a GGE.
EntropyResult renyi_rate_space(const GGEState& state, double alpha,
                               const QuadratureSettings& settings = {});

// Int dtheta/2pi |v| H_alpha(n): half-line entropy per unit time after a quench.
EntropyResult renyi_rate_time(const GGEState& state, double alpha,
                              const QuadratureSettings& settings = {});

// Int dtheta/2pi min(x, 2t|v|) H_alpha(n): the full quasiparticle profile.
EntropyResult renyi_profile(const GGEState& state, double alpha, double x, double t,
                            const QuadratureSettings& settings = {});

// Sum over sector charges of F_p(-i) from the SCGF, gamma = pi/2 for the
// space cut, gamma = 0 with the opposite-path sign (h -> -h_p) for time.
Complex sector_scgf_sum(const GGEState& state, int alpha, CutDirection direction,
                        const QuadratureSettings& settings = {});

struct SectorIdentityReport {
    double rate_residual = 0.0; // |sum/(1-alpha) - rate|
    double imag_residual = 0.0; // |Im(sum)|
    Complex sector_sum{0.0, 0.0};
    double rate = 0.0;
    bool passed(double tol = 1e-9) const {
        return rate_residual < tol && imag_residual < tol;
    }
};

// Checks the sector-product identity sum_p F_p(-i) = (1-alpha) * rate.
SectorIdentityReport sector_identity_check(const GGEState& state, int alpha,
                                           CutDirection direction,
                                           const QuadratureSettings& settings = {});

struct FcsSplit {
    std::vector<Complex> f_dyn;  // per sector charge, slow modes |v| < xi/2
    std::vector<Complex> f_stat; // per sector charge, fast modes |v| > xi/2
    std::vector<double> charges;
};

// Slow/fast decomposition of the sector SCGFs at the velocity cut xi/2.
FcsSplit fcs_split(const GGEState& state, int alpha, double xi,
                   const QuadratureSettings& settings = {});

struct MainfluctuReport {
    double profile = 0.0;
    double fcs_value = 0.0; // (1/(1-alpha)) [2t sum F_dyn + x sum F_stat]
    double residual = 0.0;
    bool passed(double tol = 1e-8) const { return residual < tol * (1.0 + profile); }
};

// Full-counting-statistics identity: the entropy profile equals the
// dynamic-current plus static-number decomposition at xi = x/t.
MainfluctuReport mainfluctu_check(const GGEState& state, int alpha, double x, double t,
                                  const QuadratureSettings& settings = {});

} // namespace bft

#endif
