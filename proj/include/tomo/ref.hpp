#ifndef TOMO_REF_HPP
#define TOMO_REF_HPP

#include "tomo/forward.hpp"
#include "tomo/types.hpp"

namespace tomo::ref {

// Serial reference implementations along independent algebraic routes. These
// are deliberately simple and unparallelized; the test suite holds the
// production kernels against them, and tools/bench.cpp times the gap.

// Harmonic-oscillator wavefunction psi_n(x) (hbar = 1, <0|q^2|0> = 1/2).
double hermite_psi(int n, double x);

// Quadrature marginal through the rotated-eigenbasis route:
// w(x) = (1/L) sum_{mn} rho_{mn} e^{i(n-m)theta} psi_m(x/L) psi_n(x/L),
// L = sqrt(mu^2+nu^2), theta = atan2(nu, mu).
double position_marginal(const DensityMatrix& rho, double mu, double nu, double x);

TomogramSlice symplectic_marginal(const DensityMatrix& rho, const QuadratureSpec& quad,
                                  const XGrid& grid);

// Wigner value through the displaced-parity route:
// W(q,p) = (1/pi) Tr{rho D(a) (-1)^n D†(a)}, a = (q + ip)/sqrt(2).
double wigner_point(const DensityMatrix& rho, double q, double p);

// Plain left-to-right accumulation of the symplectic reconstruction sum.
CMat reconstruct_symplectic_raw(const Tomogram& tomogram, int dim, const PolarDomain& dom);

}  // namespace tomo::ref

#endif
