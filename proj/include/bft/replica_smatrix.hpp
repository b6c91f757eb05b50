#ifndef BFT_REPLICA_SMATRIX_HPP
#define BFT_REPLICA_SMATRIX_HPP

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace bft::replica {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Scalar two-particle amplitude of the single-copy theory.
using ScalarS = std::function<Complex(double, double)>;

// Matrices act on the alpha^2-dimensional space of ordered copy-index pairs
// (i, i') in {1..alpha}^2, flattened as (i-1) * alpha + (i'-1).

// Closed form in the Fourier-copy basis (anti-periodic transform, momenta
// p in {-alpha+1, -alpha+3, ..., alpha-1}):
//   M[(p,p'),(k,k')] = (S + sigma) [p+p' == k+k' mod 2 alpha] - sigma d_pk d_p'k'.
// Diagonal exactly when S + sigma = 0.
Matrix fourier_closed_form(int alpha, Complex S, int sigma);

// Copy-basis matrix: the inverse anti-periodic Fourier transform of the
// closed form. Its alpha = 2 instance reproduces the displayed 4x4 pattern.
Matrix build_copy_basis(int alpha, Complex S, int sigma, double theta = 0.0,
                        double theta_p = 0.0);

// Unitary two-particle Fourier conjugation of a copy-basis matrix; asserts
// entrywise agreement with the closed form (consistency error on drift).
Matrix fourier_transform_smatrix(const Matrix& copy_mat, int alpha, Complex S, int sigma);

// Inverse transform (basis-change involution partner).
Matrix inverse_fourier_transform(const Matrix& fourier_mat, int alpha);

// Max-entry residual of S12 S13 S23 - S23 S13 S12 on the alpha^3 space, with
// S_ij built from the scalar amplitude at the rapidity pair (theta_i, theta_j).
double yang_baxter_residual(int alpha, const ScalarS& S, int sigma, double theta1,
                            double theta2, double theta3);

// Fourier-diagonality criterion for the closed form.
bool fourier_diagonal(Complex S, int sigma, double tol = 1e-12);

} // namespace bft::replica

#endif
