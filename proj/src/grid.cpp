#include "tomo/grid.hpp"

#include <cmath>

namespace tomo {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw UsageError("invalid-dimension: quadrature order must be >= 1");
    std::vector<double> x(n), w(n);
    // Newton iteration from the Chebyshev initial guess; symmetric pairs.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return {x, w};
}

std::pair<std::vector<double>, std::vector<double>> radial_nodes(const PolarDomain& dom) {
    auto [x, w] = gauss_legendre(dom.n_radial);
    const double h = dom.radius / 2.0;
    for (int i = 0; i < dom.n_radial; ++i) {
        x[i] = h * (x[i] + 1.0);
        w[i] *= h;
    }
    return {x, w};
}

}  // namespace tomo
