#ifndef BFT_LATTICE_ORACLE_HPP
#define BFT_LATTICE_ORACLE_HPP

#include "bft/state.hpp"

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bft::oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Quench data sampled on the discrete momenta k_j = 2 pi j / L of a ring.
struct GaussianLatticeState {
    int L = 0;
    std::vector<double> momenta; // j = -L/2 .. L/2-1
    std::vector<Complex> f, g;
    std::vector<double> energy;

    static GaussianLatticeState from_quench(const QuenchSpec& spec, int L);
};

// Interval correlators C_{xy} = <b+_x b_y>, F_{xy} = <b_x b_y> at time t.
struct IntervalCorrelation {
    Matrix C;
    Matrix F;
    int ell = 0;
};

IntervalCorrelation correlation_matrices(const GaussianLatticeState& state, double t, int ell);

// Equal-time GGE correlation matrix C_{xy} = (1/L) sum_k e^{-ik(x-y)} n(k),
// with F = 0; used for number-conserving counting statistics.
IntervalCorrelation gge_correlation_matrix(const GGEState& state, int L, int ell);

// Eigenvalues of the 2l x 2l block matrix [[C, F], [F+, 1 - C^T]], sorted
// ascending, clipped to [0, 1] within a 1e-10 tolerance.
std::vector<double> entanglement_spectrum(const IntervalCorrelation& corr);

// S_alpha = 1/2 sum over the 2l eigenvalues of H_alpha(nu); the prefactor
// compensates the (nu, 1-nu) pairing.
double renyi_exact(const IntervalCorrelation& corr, double alpha);

// ln det(1 + (e^lambda - 1) C) for a pairing-free interval; per-eigenvalue
// principal logs keep the imaginary part on the branch continuously connected
// to lambda = 0.
Complex fcs_determinant(const IntervalCorrelation& corr, Complex lambda);

struct EntropyScanRow {
    double t;
    double entropy;
};

// Exact S_alpha(ell, t) over a time grid, guarded against finite-size
// revivals: requires ell <= L/4 and max t <= L / (4 max|v|).
std::vector<EntropyScanRow> quench_entropy_scan(const QuenchSpec& spec, int L, int ell,
                                                double alpha, const std::vector<double>& times,
                                                int threads = 1);

// Debug dump: row-major complex pairs, little-endian f64, with a JSON sidecar
// describing the layout.
void dump_matrix(const Matrix& m, const std::string& path);

} // namespace bft::oracle

#endif
