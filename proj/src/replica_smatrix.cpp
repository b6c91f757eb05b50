#include "bft/replica_smatrix.hpp"

#include "bft/errors.hpp"

#include <cmath>
#include <vector>

namespace bft::replica {

namespace {

const double kPi = std::acos(-1.0);

void require_alpha(int alpha) {
    if (alpha < 2) throw DomainError("replica copy count must be >= 2");
}

// Fourier-sector momenta {-alpha+1, -alpha+3, ..., alpha-1}.
std::vector<int> sector_momenta(int alpha) {
    std::vector<int> p;
    for (int v = -alpha + 1; v <= alpha - 1; v += 2) p.push_back(v);
    return p;
}

// Anti-periodic single-particle transform U_{p,i} = e^{i pi p i / alpha} / sqrt(alpha).
Matrix single_particle_fourier(int alpha) {
    Matrix u(alpha, alpha);
    auto p = sector_momenta(alpha);
    for (int a = 0; a < alpha; ++a)
        for (int i = 0; i < alpha; ++i) {
            double phase = kPi * p[a] * (i + 1) / alpha;
            u(a, i) = Complex(std::cos(phase), std::sin(phase)) / std::sqrt(double(alpha));
        }
    return u;
}

Matrix two_particle_fourier(int alpha) {
    Matrix u = single_particle_fourier(alpha);
    Matrix big(alpha * alpha, alpha * alpha);
    for (int a = 0; a < alpha; ++a)
        for (int b = 0; b < alpha; ++b)
            for (int i = 0; i < alpha; ++i)
                for (int j = 0; j < alpha; ++j)
                    big(a * alpha + b, i * alpha + j) = u(a, i) * u(b, j);
    return big;
}

int positive_mod(int v, int m) {
    int r = v % m;
    return (r < 0) ? r + m : r;
}

} // namespace

Matrix fourier_closed_form(int alpha, Complex S, int sigma) {
    require_alpha(alpha);
    if (sigma != 1 && sigma != -1) throw DomainError("sigma must be +1 or -1");
    auto p = sector_momenta(alpha);
    const int dim = alpha * alpha;
    Matrix m = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        int p1 = p[a / alpha], p2 = p[a % alpha];
        for (int b = 0; b < dim; ++b) {
            int k1 = p[b / alpha], k2 = p[b % alpha];
            Complex v{0.0, 0.0};
            if (positive_mod(p1 + p2 - k1 - k2, 2 * alpha) == 0) v += S + double(sigma);
            if (a == b) v -= double(sigma);
            m(a, b) = v;
        }
    }
    return m;
}

Matrix build_copy_basis(int alpha, Complex S, int sigma, double, double) {
    Matrix u = two_particle_fourier(alpha);
    return u.adjoint() * fourier_closed_form(alpha, S, sigma) * u;
}

Matrix fourier_transform_smatrix(const Matrix& copy_mat, int alpha, Complex S, int sigma) {
    require_alpha(alpha);
    Matrix u = two_particle_fourier(alpha);
    Matrix f = u * copy_mat * u.adjoint();
    Matrix expected = fourier_closed_form(alpha, S, sigma);
    double drift = (f - expected).cwiseAbs().maxCoeff();
    if (drift > 1e-12)
        throw NumericalError("fourier_transform_smatrix: transform disagrees with the closed "
                             "form (formula/implementation drift)",
                             Complex(drift, 0.0), drift);
    return f;
}

Matrix inverse_fourier_transform(const Matrix& fourier_mat, int alpha) {
    require_alpha(alpha);
    Matrix u = two_particle_fourier(alpha);
    return u.adjoint() * fourier_mat * u;
}

double yang_baxter_residual(int alpha, const ScalarS& S, int sigma, double theta1,
                            double theta2, double theta3) {
    require_alpha(alpha);
    const int d = alpha;
    const int dim3 = d * d * d;

    auto embed = [&](const Matrix& m, int slot_a, int slot_b) {
        Matrix big = Matrix::Zero(dim3, dim3);
        int idx[3];
        for (int r = 0; r < dim3; ++r) {
            idx[0] = r / (d * d);
            idx[1] = (r / d) % d;
            idx[2] = r % d;
            int spectator = 3 - slot_a - slot_b;
            for (int c = 0; c < dim3; ++c) {
                int jdx[3] = {c / (d * d), (c / d) % d, c % d};
                if (jdx[spectator] != idx[spectator]) continue;
                big(r, c) = m(idx[slot_a] * d + idx[slot_b], jdx[slot_a] * d + jdx[slot_b]);
            }
        }
        return big;
    };

    Matrix s12 = embed(build_copy_basis(alpha, S(theta1, theta2), sigma), 0, 1);
    Matrix s13 = embed(build_copy_basis(alpha, S(theta1, theta3), sigma), 0, 2);
    Matrix s23 = embed(build_copy_basis(alpha, S(theta2, theta3), sigma), 1, 2);

    Matrix lhs = s12 * s13 * s23;
    Matrix rhs = s23 * s13 * s12;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

bool fourier_diagonal(Complex S, int sigma, double tol) {
    return std::abs(S + double(sigma)) < tol;
}

} // namespace bft::replica
