#ifndef TOMO_FORWARD_HPP
#define TOMO_FORWARD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tomo/grid.hpp"
#include "tomo/types.hpp"

namespace tomo {

// Observable mu q + nu p + delta; delta only shifts the distribution in x.
struct QuadratureSpec {
    double mu = 1.0;
    double nu = 0.0;
    double delta = 0.0;

    void validate() const {
        if (mu * mu + nu * nu <= 0)
            throw UsageError("degenerate-direction: mu^2 + nu^2 must be positive");
    }
    double scale() const;  // sqrt(mu^2 + nu^2)
};

// (lambda, phi) |-> (mu, nu) = (lambda cos phi, lambda^-1 sin phi).
struct SymplecticParams {
    double lambda = 1.0;
    double phi = 0.0;

    QuadratureSpec to_quadrature() const;
};

// Squeezed pre-amplification: mu = e^-s cos phi, nu = e^s sin phi.
struct SqueezerParams {
    double s = 0.0;
    double phi = 0.0;
};

QuadratureSpec squeezer_map(const SqueezerParams& params);

struct TomogramSlice {
    double mu = 1.0;
    double nu = 0.0;
    double delta = 0.0;
    std::vector<double> x;
    std::vector<double> w;
    double clipped_negativity = 0.0;  // largest magnitude clipped to zero

    double trapezoid() const;
};

struct Tomogram {
    std::string state_label;
    std::vector<TomogramSlice> slices;
};

struct PhotonEntry {
    Complex alpha;
    std::vector<double> probs;

    double leak() const;  // 1 - sum(probs)
};

struct PhotonTomogram {
    std::string state_label;
    int n_max = 0;
    std::vector<PhotonEntry> entries;
};

struct WignerGrid {
    std::vector<double> q;
    std::vector<double> p;
    Eigen::MatrixXd values;  // values(i,j) = W(q[i], p[j])

    double integral() const;  // double trapezoid
};

// Marginal of mu q + nu p + delta, synthesized as the inverse Fourier
// transform of the characteristic function over the reciprocal k grid.
TomogramSlice symplectic_marginal(const DensityMatrix& rho, const QuadratureSpec& quad,
                                  const XGrid& grid);

TomogramSlice homodyne_marginal(const DensityMatrix& rho, double phi, const XGrid& grid);

// <x| G rho G^-1 |x> with G the rotation-times-squeeze representation of the
// symplectic element; agrees with symplectic_marginal at the mapped (mu, nu).
TomogramSlice group_transform_marginal(const DensityMatrix& rho, const SymplecticParams& params,
                                       const XGrid& grid);

// Group element G(lambda, phi) as a Fock-basis matrix (exposed for tests).
CMat group_representation(const SymplecticParams& params, int dim);

// Photon-count probabilities <n|D(alpha) rho D†(alpha)|n> for n < rho.dim().
std::vector<double> photon_marginal(const DensityMatrix& rho, Complex alpha);

// Q(alpha) = w(0, alpha) = <-alpha|rho|-alpha>.
double husimi_q(const DensityMatrix& rho, Complex alpha);

// Wigner function on a uniform q x p grid via the 2-D Fourier transform of
// the symmetric characteristic function.
WignerGrid wigner(const DensityMatrix& rho, const XGrid& qgrid, const XGrid& pgrid);

// Dataset synthesis over a polar (mu, nu) disk. Each slice's x grid is the
// base grid scaled by its quadrature norm so every slice is equally resolved.
Tomogram synth_symplectic(const DensityMatrix& rho, const std::string& label,
                          const PolarDomain& dom, const XGrid& base_grid);

// Homodyne angles uniform on [0, 2pi).
Tomogram synth_homodyne(const DensityMatrix& rho, const std::string& label, int n_angles,
                        const XGrid& grid);

PhotonTomogram synth_photon(const DensityMatrix& rho, const std::string& label,
                            const PolarDomain& alpha_dom);

struct Histogram {
    std::vector<double> values;  // bin centers (x or n)
    std::vector<std::int64_t> counts;

    double mean() const;
    std::int64_t total() const;
};

// Deterministic inverse-CDF sampling of the discretized distribution.
Histogram sample_counts(const TomogramSlice& slice, std::int64_t shots, std::uint64_t seed);
Histogram sample_counts(const PhotonEntry& entry, std::int64_t shots, std::uint64_t seed);

// Empirical slice from a histogram (counts / (shots * dx)), for feeding
// sampled data back into reconstruction.
TomogramSlice empirical_slice(const TomogramSlice& reference, const Histogram& hist);

}  // namespace tomo

#endif
