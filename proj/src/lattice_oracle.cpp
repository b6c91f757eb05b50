#include "bft/lattice_oracle.hpp"

#include "bft/entropy.hpp"
#include "bft/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>

#include <Eigen/Eigenvalues>

namespace bft::oracle {

namespace {
const double kPi = std::acos(-1.0);
}

GaussianLatticeState GaussianLatticeState::from_quench(const QuenchSpec& spec, int L) {
    if (L < 4 || L % 2 != 0) throw DomainError("ring size L must be even and >= 4");
    if (!spec.dispersion().domain().periodic)
        throw DomainError("the ring oracle needs a lattice (periodic) dispersion");
    GaussianLatticeState s;
    s.L = L;
    s.momenta.reserve(L);
    const DispersionRelation& disp = spec.dispersion();
    for (int j = -L / 2; j < L / 2; ++j) {
        double k = 2.0 * kPi * j / L;
        s.momenta.push_back(k);
        s.f.push_back(spec.f(k));
        s.g.push_back(spec.g(k));
        s.energy.push_back(disp.energy(k));
    }
    // The discrete grid must satisfy the pair constraints exactly at k = 0.
    if (std::abs(s.g[L / 2]) > 1e-10)
        throw PreconditionError("quench spec has g(0) != 0 on the lattice grid");
    return s;
}

IntervalCorrelation correlation_matrices(const GaussianLatticeState& state, double t, int ell) {
    if (ell < 1 || ell > state.L) throw DomainError("interval length must lie in [1, L]");
    const int L = state.L;

    // Both matrices are Toeplitz in x - y; assemble from 1D profiles.
    std::vector<Complex> c_prof(2 * ell - 1), f_prof(2 * ell - 1);
    for (int d = -(ell - 1); d <= ell - 1; ++d) {
        Complex cs{0.0, 0.0}, fs{0.0, 0.0};
        for (int j = 0; j < L; ++j) {
            double k = state.momenta[j];
            double n = std::norm(state.g[j]);
            Complex phase_c(std::cos(k * d), -std::sin(k * d)); // e^{-ikd}
            cs += phase_c * n;
            Complex pair = state.g[j] * std::conj(state.f[j]);
            double ph = k * d - 2.0 * state.energy[j] * t;
            fs -= Complex(std::cos(ph), std::sin(ph)) * pair; // -e^{i(kd - 2Et)} g f*
        }
        c_prof[d + ell - 1] = cs / static_cast<double>(L);
        f_prof[d + ell - 1] = fs / static_cast<double>(L);
    }

    IntervalCorrelation corr;
    corr.ell = ell;
    corr.C.resize(ell, ell);
    corr.F.resize(ell, ell);
    for (int x = 0; x < ell; ++x)
        for (int y = 0; y < ell; ++y) {
            corr.C(x, y) = c_prof[(x - y) + ell - 1];
            corr.F(x, y) = f_prof[(x - y) + ell - 1];
        }
    // F must be antisymmetric; the diagonal picks up only roundoff.
    for (int x = 0; x < ell; ++x) corr.F(x, x) = Complex(0.0, 0.0);
    return corr;
}

IntervalCorrelation gge_correlation_matrix(const GGEState& state, int L, int ell) {
    if (ell < 1 || ell > L) throw DomainError("interval length must lie in [1, L]");
    std::vector<Complex> prof(2 * ell - 1);
    for (int d = -(ell - 1); d <= ell - 1; ++d) {
        Complex cs{0.0, 0.0};
        for (int j = -L / 2; j < L / 2; ++j) {
            double k = 2.0 * kPi * j / L;
            cs += Complex(std::cos(k * d), -std::sin(k * d)) * state.n(k);
        }
        prof[d + ell - 1] = cs / static_cast<double>(L);
    }
    IntervalCorrelation corr;
    corr.ell = ell;
    corr.C.resize(ell, ell);
    corr.F = Matrix::Zero(ell, ell);
    for (int x = 0; x < ell; ++x)
        for (int y = 0; y < ell; ++y) corr.C(x, y) = prof[(x - y) + ell - 1];
    return corr;
}

std::vector<double> entanglement_spectrum(const IntervalCorrelation& corr) {
    const int ell = corr.ell;
    Matrix block(2 * ell, 2 * ell);
    block.topLeftCorner(ell, ell) = corr.C;
    block.topRightCorner(ell, ell) = corr.F;
    block.bottomLeftCorner(ell, ell) = corr.F.adjoint();
    block.bottomRightCorner(ell, ell) =
        Matrix::Identity(ell, ell) - corr.C.transpose();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("entanglement spectrum: eigensolver did not converge", {0.0, 0.0},
                             0.0);
    std::vector<double> nu(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + 2 * ell);
    for (double& v : nu) {
        if (v < -1e-10 || v > 1.0 + 1e-10)
            throw NumericalError("entanglement spectrum eigenvalue outside [0,1]",
                                 Complex(v, 0.0), std::abs(v - std::clamp(v, 0.0, 1.0)));
        v = std::clamp(v, 0.0, 1.0);
    }
    std::sort(nu.begin(), nu.end());
    return nu;
}

double renyi_exact(const IntervalCorrelation& corr, double alpha) {
    if (alpha <= 0.0) throw DomainError("renyi_exact: alpha must be positive");
    std::vector<double> nu = entanglement_spectrum(corr);
    double s = 0.0;
    for (double v : nu) s += h_alpha(v, alpha);
    return 0.5 * s;
}

Complex fcs_determinant(const IntervalCorrelation& corr, Complex lambda) {
    if (corr.F.cwiseAbs().maxCoeff() > 1e-12)
        throw PreconditionError(
            "fcs_determinant requires a number-conserving state (F = 0); apply it to the C "
            "block of the final GGE");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(corr.C, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("fcs_determinant: eigensolver did not converge", {0.0, 0.0}, 0.0);
    Complex factor = std::exp(lambda) - 1.0;
    Complex sum{0.0, 0.0};
    for (int i = 0; i < corr.ell; ++i) {
        // Each factor 1 + (e^l - 1) nu stays in the cut plane for nu in [0,1];
        // summing per-eigenvalue principal logs keeps the total on the branch
        // continuous in lambda from 0.
        sum += std::log(1.0 + factor * std::clamp(solver.eigenvalues()[i], 0.0, 1.0));
    }
    return sum;
}

std::vector<EntropyScanRow> quench_entropy_scan(const QuenchSpec& spec, int L, int ell,
                                                double alpha, const std::vector<double>& times,
                                                int threads) {
    if (ell > L / 4) throw DomainError("revival guard: require ell <= L/4");
    double vmax = spec.dispersion().max_speed();
    double tmax = 0.0;
    for (double t : times) tmax = std::max(tmax, t);
    if (vmax > 0.0 && tmax > L / (4.0 * vmax))
        throw DomainError("revival guard: require max t <= L / (4 max|v|)");
    QuenchValidation val = validate_quench(spec);
    if (!val.passed()) throw PreconditionError("quench_entropy_scan: invalid quench spec");

    GaussianLatticeState state = GaussianLatticeState::from_quench(spec, L);
    std::vector<EntropyScanRow> rows(times.size());
    auto work = [&](size_t i) {
        IntervalCorrelation corr = correlation_matrices(state, times[i], ell);
        rows[i] = EntropyScanRow{times[i], renyi_exact(corr, alpha)};
    };
    if (threads <= 1) {
        for (size_t i = 0; i < times.size(); ++i) work(i);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<size_t> next{0};
        for (int w = 0; w < threads; ++w)
            futs.push_back(std::async(std::launch::async, [&]() {
                for (size_t i = next.fetch_add(1); i < times.size(); i = next.fetch_add(1))
                    work(i);
            }));
        for (auto& f : futs) f.get();
    }
    return rows;
}

void dump_matrix(const Matrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open for writing: " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double re = m(i, j).real(), im = m(i, j).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(double));
            out.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
    std::ofstream side(path + ".json");
    side << "{\n  \"rows\": " << m.rows() << ",\n  \"cols\": " << m.cols()
         << ",\n  \"dtype\": \"complex128\",\n  \"layout\": \"row-major\",\n"
            "  \"byte_order\": \"little-endian\"\n}\n";
}

} // namespace bft::oracle
