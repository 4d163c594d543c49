#include "tomo/dynamics.hpp"

#include <cmath>

namespace tomo {

DensityMatrix evolve(const DensityMatrix& rho, const EvolutionSpec& spec) {
    const int dim = rho.dim();
    CVec phase(dim);
    for (int n = 0; n < dim; ++n) phase(n) = std::exp(Complex(0, -spec.t * n));
    CVec conj_phase = phase.conjugate();
    CMat out = phase.asDiagonal() * rho.elements() * conj_phase.asDiagonal();
    return DensityMatrix(std::move(out));
}

TomogramSlice evolved_marginal(const DensityMatrix& rho, const QuadratureSpec& quad,
                               const XGrid& grid, double t) {
    return symplectic_marginal(evolve(rho, {t}), quad, grid);
}

double parameter_rotation_check(const DensityMatrix& rho, double mu, double nu,
                                const XGrid& grid, double t) {
    TomogramSlice evolved = evolved_marginal(rho, {mu, nu, 0.0}, grid, t);
    const double c = std::cos(t), s = std::sin(t);
    TomogramSlice rotated =
        symplectic_marginal(rho, {mu * c - nu * s, mu * s + nu * c, 0.0}, grid);
    double dev = 0;
    for (std::size_t i = 0; i < evolved.w.size(); ++i)
        dev = std::max(dev, std::abs(evolved.w[i] - rotated.w[i]));
    return dev;
}

}  // namespace tomo
