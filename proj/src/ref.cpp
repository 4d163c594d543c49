#include "tomo/ref.hpp"

#include <cmath>

#include "tomo/fock.hpp"
#include "tomo/grid.hpp"

namespace tomo::ref {

double hermite_psi(int n, double x) {
    // stable upward recurrence on the normalized Hermite functions
    double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return h0;
    double h1 = std::sqrt(2.0) * x * h0;
    for (int k = 1; k < n; ++k) {
        double h2 = std::sqrt(2.0 / (k + 1.0)) * x * h1 - std::sqrt(k / (k + 1.0)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double position_marginal(const DensityMatrix& rho, double mu, double nu, double x) {
    const double L = std::hypot(mu, nu);
    if (L <= 0) throw UsageError("degenerate-direction: mu^2 + nu^2 must be positive");
    const double theta = std::atan2(nu, mu);
    const double y = x / L;
    const int dim = rho.dim();
    std::vector<double> psi(dim);
    for (int n = 0; n < dim; ++n) psi[n] = hermite_psi(n, y);
    Complex acc = 0;
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n)
            acc += rho(m, n) * std::exp(Complex(0, (n - m) * theta)) * psi[m] * psi[n];
    return acc.real() / L;
}

TomogramSlice symplectic_marginal(const DensityMatrix& rho, const QuadratureSpec& quad,
                                  const XGrid& grid) {
    quad.validate();
    TomogramSlice slice;
    slice.mu = quad.mu;
    slice.nu = quad.nu;
    slice.delta = quad.delta;
    slice.x.resize(grid.n);
    slice.w.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        slice.x[i] = grid.x(i);
        slice.w[i] =
            std::max(0.0, position_marginal(rho, quad.mu, quad.nu, grid.x(i) - quad.delta));
    }
    return slice;
}

double wigner_point(const DensityMatrix& rho, double q, double p) {
    const int dim = rho.dim();
    const Complex a = Complex(q, p) / std::sqrt(2.0);
    CMat d = displacement_matrix(a, dim);
    CMat m = d.adjoint() * rho.elements() * d;
    double acc = 0;
    for (int n = 0; n < dim; ++n) acc += (n % 2 == 0 ? 1.0 : -1.0) * m(n, n).real();
    return acc / M_PI;
}

CMat reconstruct_symplectic_raw(const Tomogram& tomogram, int dim, const PolarDomain& dom) {
    auto [r, wr] = radial_nodes(dom);
    const double dtheta = 2.0 * M_PI / dom.n_angular;
    CMat acc = CMat::Zero(dim, dim);
    for (int i = 0; i < dom.n_radial; ++i) {
        for (int j = 0; j < dom.n_angular; ++j) {
            const TomogramSlice& slice = tomogram.slices[i * dom.n_angular + j];
            Complex c = 0;
            for (std::size_t m = 0; m + 1 < slice.x.size(); ++m) {
                const double xa = slice.x[m] - slice.delta, xb = slice.x[m + 1] - slice.delta;
                c += 0.5 * (xb - xa) *
                     (slice.w[m] * std::exp(Complex(0, -xa)) +
                      slice.w[m + 1] * std::exp(Complex(0, -xb)));
            }
            const Complex alpha = Complex(-slice.nu, slice.mu) / std::sqrt(2.0);
            acc += (wr[i] * r[i] * dtheta / (2.0 * M_PI) * c) * displacement_matrix(alpha, dim);
        }
    }
    return acc;
}

}  // namespace tomo::ref
