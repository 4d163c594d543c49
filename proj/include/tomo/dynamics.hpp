#ifndef TOMO_DYNAMICS_HPP
#define TOMO_DYNAMICS_HPP

#include "tomo/forward.hpp"
#include "tomo/types.hpp"

namespace tomo {

// Harmonic-oscillator evolution, H = (p^2 + q^2)/2, oscillator frequency 1.
struct EvolutionSpec {
    double t = 0.0;
};

// rho(t) = e^{-i n t} rho e^{+i n t}; the zero-point phase cancels in the
// conjugation. Trace, spectrum and Fock diagonal are preserved.
DensityMatrix evolve(const DensityMatrix& rho, const EvolutionSpec& spec);

TomogramSlice evolved_marginal(const DensityMatrix& rho, const QuadratureSpec& quad,
                               const XGrid& grid, double t);

// Sup-norm difference between the evolved marginal and the t = 0 marginal at
// rotated parameters (mu', nu') = (mu cos t - nu sin t, mu sin t + nu cos t).
double parameter_rotation_check(const DensityMatrix& rho, double mu, double nu,
                                const XGrid& grid, double t);

}  // namespace tomo

#endif
