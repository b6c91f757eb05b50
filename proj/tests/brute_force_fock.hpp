#ifndef BFT_TESTS_BRUTE_FORCE_FOCK_HPP
#define BFT_TESTS_BRUTE_FORCE_FOCK_HPP

// Test-only oracle: the squeezed state built explicitly in the 2^L position
// Fock space, reduced density matrix by partial trace, entropies from its
// eigenvalues. Independent of the correlation-matrix path it checks.

#include "bft/state.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace brute {

using Complex = std::complex<double>;

// b+_x on a Jordan-Wigner ordered Fock vector.
inline void apply_creation_site(std::vector<Complex>& out, const std::vector<Complex>& in,
                                int x) {
    const int dim = static_cast<int>(in.size());
    for (int idx = 0; idx < dim; ++idx) {
        if (in[idx] == Complex(0.0, 0.0)) continue;
        if (idx & (1 << x)) continue;
        int below = idx & ((1 << x) - 1);
        int sign = __builtin_popcount(below) % 2 ? -1 : 1;
        out[idx | (1 << x)] += double(sign) * in[idx];
    }
}

// b+_k = (1/sqrt(L)) sum_x e^{i k x} b+_x
inline std::vector<Complex> apply_creation_momentum(const std::vector<Complex>& in, double k,
                                                    int L) {
    std::vector<Complex> out(in.size(), Complex(0.0, 0.0));
    std::vector<Complex> tmp(in.size());
    for (int x = 0; x < L; ++x) {
        std::fill(tmp.begin(), tmp.end(), Complex(0.0, 0.0));
        apply_creation_site(tmp, in, x);
        Complex phase = std::polar(1.0 / std::sqrt(double(L)), k * x);
        for (size_t i = 0; i < out.size(); ++i) out[i] += phase * tmp[i];
    }
    return out;
}

// |Psi(t)> = prod_{k>0} (1 + K_k e^{-2 i E_k t} b+_k b+_{-k}) |0>, normalized.
inline std::vector<Complex> squeezed_state(const bft::QuenchSpec& spec, int L, double t) {
    const double pi = std::acos(-1.0);
    std::vector<Complex> psi(1 << L, Complex(0.0, 0.0));
    psi[0] = 1.0;
    for (int j = 1; j < L / 2; ++j) { // k > 0 strictly; k = 0 and k = -pi unpaired
        double k = 2.0 * pi * j / L;
        Complex K = spec.pair_kernel(k);
        Complex coef = K * std::polar(1.0, -2.0 * spec.dispersion().energy(k) * t);
        auto one = apply_creation_momentum(psi, -k, L);
        auto pair = apply_creation_momentum(one, k, L);
        for (size_t i = 0; i < psi.size(); ++i) psi[i] += coef * pair[i];
    }
    double norm = 0.0;
    for (const Complex& c : psi) norm += std::norm(c);
    norm = std::sqrt(norm);
    for (Complex& c : psi) c /= norm;
    return psi;
}

// Reduced density matrix of the left block [0, ell).
inline Eigen::MatrixXcd reduced_density(const std::vector<Complex>& psi, int L, int ell) {
    const int da = 1 << ell;
    const int db = 1 << (L - ell);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
    for (int b = 0; b < db; ++b)
        for (int a = 0; a < da; ++a) {
            Complex amp = psi[a | (b << ell)];
            if (amp == Complex(0.0, 0.0)) continue;
            for (int ap = 0; ap < da; ++ap) rho(a, ap) += amp * std::conj(psi[ap | (b << ell)]);
        }
    return rho;
}

inline double renyi_from_rho(const Eigen::MatrixXcd& rho, double alpha) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double tr = 0.0, vn = 0.0;
    for (int i = 0; i < rho.rows(); ++i) {
        double l = std::max(es.eigenvalues()[i], 0.0);
        if (alpha == 1.0) {
            if (l > 0.0) vn -= l * std::log(l);
        } else {
            tr += std::pow(l, alpha);
        }
    }
    return (alpha == 1.0) ? vn : std::log(tr) / (1.0 - alpha);
}

} // namespace brute

#endif
