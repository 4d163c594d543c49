#ifndef TOMO_GRID_HPP
#define TOMO_GRID_HPP

#include <utility>
#include <vector>

#include "tomo/types.hpp"

namespace tomo {

// Uniform x grid: points x0, x0+dx, ..., x0+(n-1)dx.
struct XGrid {
    double x0 = -10.0;
    double dx = 20.0 / 1023.0;
    int n = 1024;

    static XGrid centered(double halfwidth, int n) {
        return {-halfwidth, 2.0 * halfwidth / (n - 1), n};
    }
    double x(int i) const { return x0 + i * dx; }
    double span() const { return n * dx; }
    XGrid scaled(double factor) const { return {x0 * factor, dx * factor, n}; }
};

// Polar integration domain: Gauss-Legendre radii on [0, radius], uniform
// angles on [0, 2pi).
struct PolarDomain {
    double radius = 6.0;
    int n_radial = 48;
    int n_angular = 48;
};

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Radial nodes/weights for a PolarDomain, mapped to [0, radius].
std::pair<std::vector<double>, std::vector<double>> radial_nodes(const PolarDomain& dom);

}  // namespace tomo

#endif
