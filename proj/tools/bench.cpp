// tomobench: time the OpenMP kernels against the serial reference routes and
// check that they agree. Sizes are desk-scale so a run stays under a minute.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "tomo/forward.hpp"
#include "tomo/inverse.hpp"
#include "tomo/ref.hpp"
#include "tomo/states.hpp"

using namespace tomo;
using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main() {
    const int dim = 32;
    DensityMatrix rho = realize(EvenCat{1.0, 1.0}, dim);
    PolarDomain dom{6.0, 24, 24};
    XGrid grid = XGrid::centered(8.0, 256);

    std::printf("threads=%d dim=%d\n", omp_get_max_threads(), dim);

    // --- tomogram synthesis: parallel characteristic-function route vs the
    // serial rotated-eigenbasis route -------------------------------------
    auto t0 = Clock::now();
    Tomogram tomo_par = synth_symplectic(rho, "cat:a=1,b=1", dom, grid);
    double dt_par = seconds_since(t0);

    auto nodes = radial_nodes(dom);
    t0 = Clock::now();
    double max_dev = 0.0;
    for (int i = 0; i < dom.n_radial; ++i)
        for (int j = 0; j < dom.n_angular; ++j) {
            const double theta = 2.0 * M_PI * j / dom.n_angular;
            QuadratureSpec quad{nodes.first[i] * std::cos(theta),
                                nodes.first[i] * std::sin(theta), 0.0};
            TomogramSlice s = ref::symplectic_marginal(rho, quad, grid.scaled(quad.scale()));
            const TomogramSlice& p = tomo_par.slices[i * dom.n_angular + j];
            for (std::size_t k = 0; k < s.w.size(); ++k)
                max_dev = std::max(max_dev, std::abs(s.w[k] - p.w[k]));
        }
    double dt_ref = seconds_since(t0);
    std::printf("synth      parallel %8.3fs   serial-ref %8.3fs   max|dw| %.3e\n", dt_par,
                dt_ref, max_dev);

    // --- reconstruction: pairwise-reduced OpenMP sum vs plain serial sum --
    t0 = Clock::now();
    auto [rec, report] = reconstruct_symplectic(tomo_par, dim, dom);
    dt_par = seconds_since(t0);

    t0 = Clock::now();
    CMat raw = ref::reconstruct_symplectic_raw(tomo_par, dim, dom);
    dt_ref = seconds_since(t0);
    CMat raw_fixed = ((raw + raw.adjoint()) / 2.0).eval();
    raw_fixed /= raw_fixed.trace().real();
    std::printf("reconstruct parallel %7.3fs   serial-ref %8.3fs   max|drho| %.3e\n", dt_par,
                dt_ref, (rec.elements() - raw_fixed).cwiseAbs().maxCoeff());

    // --- Wigner: 2-D Fourier transform vs displaced-parity point values ---
    XGrid wgrid = XGrid::centered(5.0, 101);
    t0 = Clock::now();
    WignerGrid w = wigner(rho, wgrid, wgrid);
    dt_par = seconds_since(t0);

    t0 = Clock::now();
    max_dev = 0.0;
    for (int i = 0; i < wgrid.n; i += 10)
        for (int j = 0; j < wgrid.n; j += 10)
            max_dev = std::max(
                max_dev, std::abs(w.values(i, j) - ref::wigner_point(rho, w.q[i], w.p[j])));
    dt_ref = seconds_since(t0);
    std::printf("wigner     parallel %8.3fs   serial-ref %8.3fs (1/100 pts)   max|dW| %.3e\n",
                dt_par, dt_ref, max_dev);
    return 0;
}
