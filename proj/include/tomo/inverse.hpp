#ifndef TOMO_INVERSE_HPP
#define TOMO_INVERSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tomo/forward.hpp"
#include "tomo/grid.hpp"
#include "tomo/types.hpp"

namespace tomo {

struct KernelMatrix {
    CMat elements;
    std::string label;  // the parameters the kernel was built for

    int dim() const { return static_cast<int>(elements.rows()); }
};

// Ordering parameter of the photon-number scheme; the kernel is bounded for
// s in (-1, 0] only.
struct OrderingParam {
    double s = 0.0;

    void validate() const {
        if (!(s > -1.0 && s <= 0.0))
            throw UsageError("unbounded-kernel: ordering parameter s must lie in (-1, 0]");
    }
};

struct ReconstructionReport {
    std::optional<double> fidelity_vs_reference;
    double trace_err = 0;    // |Tr rho - 1| before repair
    double herm_resid = 0;   // max |rho - rho†| before repair
    double min_eig = 0;      // after Hermitize + renormalize (diagnosed, not projected)
    std::string grid;
};

// K_{mu,nu}(x) = (1/2pi) e^{-ix} e^{i(mu q + nu p)} (the z = 1 kernel).
KernelMatrix symplectic_kernel(double x, double mu, double nu, int dim);

// Same kernel in normal-ordered factorized form; agrees entrywise with
// symplectic_kernel within numerical tolerance.
KernelMatrix symplectic_kernel_normal_ordered(double x, double mu, double nu, int dim);

// rho = integral over (x, mu, nu) of w * K, on the polar (mu, nu) disk the
// tomogram was synthesized on. Output is Hermitized and trace-renormalized;
// the report carries the pre-repair residuals.
std::pair<DensityMatrix, ReconstructionReport> reconstruct_symplectic(const Tomogram& tomogram,
                                                                      int dim,
                                                                      const PolarDomain& dom);

// Regularized scalar radial integral (1/2pi) * int_0^inf r e^{iru - eps r} dr.
Complex homodyne_pattern(double u, double eps);

// K_phi(x_phi) built from the eigendecomposition of q cos(phi) + p sin(phi).
KernelMatrix homodyne_kernel(double x_phi, double phi, int dim, double eps);

std::pair<DensityMatrix, ReconstructionReport> reconstruct_homodyne(const Tomogram& tomogram,
                                                                    int dim, double eps);

// Displaced s-ordered weight operator T(alpha, s) (truncated block, with the
// internal sum carried far enough past the cutoff to converge).
CMat t_operator(Complex alpha, double s, int dim);

// K_s(n, alpha) = (2/(1-s)) ((s+1)/(s-1))^n T(-alpha, -s).
KernelMatrix photon_kernel(int n, Complex alpha, const OrderingParam& s, int dim);

std::pair<DensityMatrix, ReconstructionReport> reconstruct_photon(const PhotonTomogram& tomogram,
                                                                  const OrderingParam& s, int dim,
                                                                  const PolarDomain& alpha_dom);

// Invert (mu, nu) = (lambda cos phi, lambda^-1 sin phi); principal branch.
SymplecticParams decompose_symplectic(double mu, double nu);
std::vector<SymplecticParams> decompose_symplectic_all(double mu, double nu);

// Fixed-shape pairwise tree reduction; run-to-run deterministic regardless of
// how the terms were produced.
CMat pairwise_sum(std::vector<CMat> terms);

}  // namespace tomo

#endif
