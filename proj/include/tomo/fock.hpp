#ifndef TOMO_FOCK_HPP
#define TOMO_FOCK_HPP

#include <utility>

#include "tomo/types.hpp"

namespace tomo {

// Annihilation / creation operators: a|n> = sqrt(n)|n-1>.
std::pair<CMat, CMat> ladder_matrices(int dim);

// q = (a + a†)/sqrt(2), p = (a - a†)/(i sqrt(2)); [q,p] = i, <0|q^2|0> = 1/2.
std::pair<CMat, CMat> quadrature_matrices(int dim);

// <m|D(alpha)|n> in closed form via associated Laguerre polynomials,
// exact per element (no truncation error in the entries themselves).
Complex displacement_element(int m, int n, Complex alpha);

// Full dim x dim displacement matrix D(alpha) = exp(alpha a† - alpha* a).
CMat displacement_matrix(Complex alpha, int dim);

// Rectangular block of <m|D(alpha)|n> for m < rows, n < cols.
CMat displacement_block(Complex alpha, int rows, int cols);

// Tr{rho exp[ik(mu q + nu p)]} = Tr{rho D(k(i mu - nu)/sqrt(2))}.
Complex characteristic_value(const DensityMatrix& rho, double k, double mu, double nu);

// Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, clamped to [0,1].
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2,
                const Tolerances& tol = {});

// Fock amplitudes of |alpha>: <n|alpha> = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
CVec coherent_vector(Complex alpha, int dim);

}  // namespace tomo

#endif
