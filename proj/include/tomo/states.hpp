#ifndef TOMO_STATES_HPP
#define TOMO_STATES_HPP

#include <string>
#include <variant>

#include "tomo/types.hpp"

namespace tomo {

struct Fock {
    int n = 0;
};
struct Coherent {
    Complex alpha0;
};
// Even superposition (|a+ib> + |a-ib>)/sqrt(2[1 + cos(2ab) e^{-2b^2}]).
struct EvenCat {
    double a = 0;
    double b = 0;
};
// D(alpha0) S(squeeze) |0> with S(r) = exp[(r/2)(a†^2 - a^2)].
struct Squeezed {
    Complex alpha0;
    double squeeze = 0;
};

using StateSpec = std::variant<Fock, Coherent, EvenCat, Squeezed>;

// Parse the CLI textual form: fock:n=2, coherent:re=1,im=0, cat:a=1,b=1,
// squeezed:re=1,im=0,s=0.5.
StateSpec parse_state_spec(const std::string& text);
std::string format_state_spec(const StateSpec& spec);

// Pure-state amplitudes on the truncated Fock basis, not renormalized.
CVec state_vector(const StateSpec& spec, int dim);

// Density matrix of the realized pure state. Throws "insufficient-cutoff"
// when the truncated norm falls below 1 - 1e-8.
DensityMatrix realize(const StateSpec& spec, int dim);

// Closed-form quadrature marginal of the even cat state.
double cat_marginal(double a, double b, double x, double mu, double nu);

// Photon-count probability of the even cat displaced by the reference field
// alpha: w(n, alpha) = <n|D(alpha) rho D†(alpha)|n>.
double cat_photon_distribution(double a, double b, int n, Complex alpha);

// Quadrature marginal of a coherent state evolved for time t under the
// harmonic oscillator (frequency 1): a Gaussian whose mean follows
// alpha(t) = alpha0 e^{-it}.
double evolved_coherent_marginal(Complex alpha0, double x, double mu, double nu, double t);

}  // namespace tomo

#endif
