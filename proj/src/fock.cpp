#include "tomo/fock.hpp"

#include <cmath>

namespace tomo {

std::pair<CMat, CMat> ladder_matrices(int dim) {
    if (dim < 1) throw UsageError("invalid-dimension: dim must be >= 1");
    CMat a = CMat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {a, a.adjoint()};
}

std::pair<CMat, CMat> quadrature_matrices(int dim) {
    auto [a, adag] = ladder_matrices(dim);
    const double s = 1.0 / std::sqrt(2.0);
    CMat q = s * (a + adag);
    CMat p = Complex(0, -s) * (a - adag);
    return {q, p};
}

Complex displacement_element(int m, int n, Complex alpha) {
    if (m < n) {
        // <m|D(alpha)|n> = conj(<n|D(-alpha)|m>) since D(alpha)† = D(-alpha).
        return std::conj(displacement_element(n, m, -alpha));
    }
    const double x = std::norm(alpha);
    const int k = m - n;
    // sqrt(n!/m!) alpha^{m-n} as a product of alpha/sqrt(j), stable for large k.
    Complex pref = std::exp(-0.5 * x);
    for (int j = n + 1; j <= m; ++j) pref *= alpha / std::sqrt(static_cast<double>(j));
    // Ascending three-term recurrence for L_n^{(k)}(x).
    double Lkm1 = 1.0;  // L_0
    if (n == 0) return pref;
    double Lk = 1.0 + k - x;  // L_1
    for (int i = 1; i < n; ++i) {
        double Lnext = ((2.0 * i + 1.0 + k - x) * Lk - (i + k) * Lkm1) / (i + 1.0);
        Lkm1 = Lk;
        Lk = Lnext;
    }
    return pref * Lk;
}

namespace {

// Fill one diagonal family m = n + k (k >= 0) of <m|D(alpha)|n> by running the
// Laguerre recurrence along n; O(1) work per element.
template <typename Put>
void fill_displacement_diagonals(Complex alpha, int rows, int cols, Put put) {
    const double x = std::norm(alpha);
    const double ex = std::exp(-0.5 * x);
    for (int k = 0; k < rows; ++k) {
        Complex pref = ex;
        for (int j = 1; j <= k; ++j) pref *= alpha / std::sqrt(static_cast<double>(j));
        double Lprev = 0.0, Lcur = 1.0;  // L_{-1}^{(k)}, L_0^{(k)}
        const int nmax = std::min(cols - 1, rows - 1 - k);
        for (int n = 0; n <= nmax; ++n) {
            put(n + k, n, pref * Lcur);
            double Lnext = ((2.0 * n + 1.0 + k - x) * Lcur - (n + k) * Lprev) / (n + 1.0);
            Lprev = Lcur;
            Lcur = Lnext;
            // sqrt(n!/(n+k)!) -> sqrt((n+1)!/(n+1+k)!) : multiply by sqrt((n+1)/(n+1+k))
            pref *= std::sqrt((n + 1.0) / (n + 1.0 + k));
        }
    }
}

}  // namespace

CMat displacement_block(Complex alpha, int rows, int cols) {
    if (rows < 1 || cols < 1) throw UsageError("invalid-dimension: block must be nonempty");
    CMat d(rows, cols);
    // m >= n directly, m < n via <m|D(alpha)|n> = conj(<n|D(-alpha)|m>)
    fill_displacement_diagonals(alpha, rows, cols, [&](int m, int n, Complex v) {
        d(m, n) = v;
    });
    fill_displacement_diagonals(-alpha, cols, rows, [&](int m, int n, Complex v) {
        if (m > n && n < rows && m < cols) d(n, m) = std::conj(v);
    });
    return d;
}

CMat displacement_matrix(Complex alpha, int dim) {
    if (dim < 1) throw UsageError("invalid-dimension: dim must be >= 1");
    return displacement_block(alpha, dim, dim);
}

Complex characteristic_value(const DensityMatrix& rho, double k, double mu, double nu) {
    const Complex alpha = k * Complex(-nu, mu) / std::sqrt(2.0);
    const int dim = rho.dim();
    Complex tr = 0;
    // Tr{rho D} = sum_{m,n} rho_{mn} D_{nm}
    fill_displacement_diagonals(alpha, dim, dim, [&](int m, int n, Complex v) {
        tr += rho(n, m) * v;
        if (m != n) tr += rho(m, n) * std::conj(v) * ((m - n) % 2 == 0 ? 1.0 : -1.0);
    });
    return tr;
}

namespace {

// Hermitian square root with eigenvalue clamping at zero.
CMat psd_sqrt(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2, const Tolerances& tol) {
    if (rho1.dim() != rho2.dim())
        throw UsageError("dimension mismatch: " + std::to_string(rho1.dim()) + " vs " +
                         std::to_string(rho2.dim()));
    if (rho1.min_eigenvalue() < -tol.psd || rho2.min_eigenvalue() < -tol.psd)
        throw NumericError("fidelity input not positive semidefinite beyond tolerance");
    CMat h1 = (rho1.elements() + rho1.elements().adjoint()) / 2.0;
    CMat h2 = (rho2.elements() + rho2.elements().adjoint()) / 2.0;
    CMat s1 = psd_sqrt(h1);
    CMat inner = s1 * h2 * s1;
    CMat r = psd_sqrt((inner + inner.adjoint()) / 2.0);
    double f = std::real(r.trace());
    f = f * f;
    return std::min(1.0, std::max(0.0, f));
}

CVec coherent_vector(Complex alpha, int dim) {
    if (dim < 1) throw UsageError("invalid-dimension: dim must be >= 1");
    CVec v(dim);
    Complex c = std::exp(-0.5 * std::norm(alpha));
    v(0) = c;
    for (int n = 1; n < dim; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        v(n) = c;
    }
    return v;
}

}  // namespace tomo
