#include <cmath>

#include "doctest.h"
#include "tomo/dynamics.hpp"
#include "tomo/fock.hpp"
#include "tomo/states.hpp"

using namespace tomo;

TEST_SUITE("dynamics") {

TEST_CASE("evolve basics") {
    DensityMatrix cat = realize(EvenCat{1.0, 1.0}, 32);

    DensityMatrix same = evolve(cat, {0.0});
    CHECK((same.elements() - cat.elements()).cwiseAbs().maxCoeff() < 1e-15);

    DensityMatrix revived = evolve(cat, {2.0 * M_PI});
    CHECK(fidelity(revived, cat) >= 1.0 - 1e-12);

    // coherent alpha follows alpha(t) = alpha0 e^{-it}
    DensityMatrix coh = realize(Coherent{Complex(1.0)}, 32);
    DensityMatrix quarter = evolve(coh, {M_PI / 2.0});
    DensityMatrix target = realize(Coherent{Complex(0.0, -1.0)}, 32);
    CHECK((quarter.elements() - target.elements()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("evolve preserves spectrum and diagonal") {
    DensityMatrix cat = realize(EvenCat{1.0, 1.0}, 32);
    DensityMatrix out = evolve(cat, {0.7});
    CHECK(std::abs(out.purity() - cat.purity()) < 1e-12);
    CHECK(out.trace_error() < 1e-12);
    CHECK(out.hermiticity_residual() < 1e-12);
    for (int n = 0; n < 32; ++n)
        CHECK(std::abs(out(n, n) - cat(n, n)) < 1e-14);
}

TEST_CASE("evolved marginal") {
    XGrid grid = XGrid::centered(8.0, 513);
    SUBCASE("vacuum is stationary") {
        DensityMatrix vac = realize(Fock{0}, 16);
        TomogramSlice t0 = evolved_marginal(vac, {1.0, 0.0, 0.0}, grid, 0.0);
        for (double t : {0.5, 2.0, 5.0}) {
            TomogramSlice tt = evolved_marginal(vac, {1.0, 0.0, 0.0}, grid, t);
            for (int i = 0; i < grid.n; ++i) CHECK(std::abs(tt.w[i] - t0.w[i]) < 1e-12);
        }
    }
    SUBCASE("coherent center traces sqrt(2) cos t") {
        DensityMatrix coh = realize(Coherent{Complex(1.0)}, 32);
        for (double t : {0.0, 0.7, 2.0}) {
            TomogramSlice s = evolved_marginal(coh, {1.0, 0.0, 0.0}, grid, t);
            double mean = 0;
            for (int i = 0; i < grid.n; ++i) mean += s.x[i] * s.w[i] * grid.dx;
            CHECK(mean == doctest::Approx(std::sqrt(2.0) * std::cos(t)).epsilon(1e-6));
        }
    }
    SUBCASE("normalization preserved") {
        DensityMatrix cat = realize(EvenCat{1.0, 1.0}, 32);
        for (double t : {0.1, 0.7, M_PI / 2.0}) {
            TomogramSlice s = evolved_marginal(cat, {0.6, 0.8, 0.0}, grid, t);
            CHECK(s.trapezoid() == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("parameter rotation law") {
    XGrid grid = XGrid::centered(8.0, 512);
    DensityMatrix coh = realize(Coherent{Complex(1.0)}, 32);
    CHECK(parameter_rotation_check(coh, 1.0, 0.0, grid, 0.0) == doctest::Approx(0.0));
    CHECK(parameter_rotation_check(coh, 1.0, 0.0, grid, 2.0 * M_PI) < 1e-10);
    for (double t : {0.1, 0.7, M_PI / 2.0, M_PI, 2.0 * M_PI - 0.3}) {
        CHECK(parameter_rotation_check(coh, 1.0, 0.0, grid, t) < 1e-8);
        CHECK(parameter_rotation_check(coh, 0.3, -0.9, grid, t) < 1e-8);
    }
    DensityMatrix cat = realize(EvenCat{1.0, 1.0}, 32);
    for (double t : {0.1, 0.7}) CHECK(parameter_rotation_check(cat, 0.6, 0.8, grid, t) < 1e-8);
}

}  // TEST_SUITE
