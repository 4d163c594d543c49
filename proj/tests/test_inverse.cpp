#include <cmath>

#include "doctest.h"
#include "tomo/fock.hpp"
#include "tomo/forward.hpp"
#include "tomo/inverse.hpp"
#include "tomo/ref.hpp"
#include "tomo/states.hpp"

using namespace tomo;

TEST_SUITE("inverse") {

TEST_CASE("symplectic kernel") {
    KernelMatrix k0 = symplectic_kernel(0.0, 0.0, 0.0, 8);
    CHECK((k0.elements - CMat::Identity(8, 8) / (2.0 * M_PI)).cwiseAbs().maxCoeff() < 1e-14);
    KernelMatrix kpi = symplectic_kernel(M_PI, 0.0, 0.0, 8);
    CHECK((kpi.elements + CMat::Identity(8, 8) / (2.0 * M_PI)).cwiseAbs().maxCoeff() < 1e-14);

    KernelMatrix k = symplectic_kernel(0.3, 1.0, 0.5, 16);
    CMat expect = std::exp(Complex(0, -0.3)) / (2.0 * M_PI) *
                  displacement_matrix(Complex(-0.5, 1.0) / std::sqrt(2.0), 16);
    CHECK((k.elements - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("normal-ordered kernel equivalence") {
    for (auto [x, mu, nu] : {std::tuple{0.0, 1.0, 0.0}, {0.3, 1.0, 0.5}, {-1.2, 0.4, -2.0},
                             {2.0, 3.0, 1.0}}) {
        KernelMatrix a = symplectic_kernel(x, mu, nu, 16);
        KernelMatrix b = symplectic_kernel_normal_ordered(x, mu, nu, 16);
        CHECK((a.elements - b.elements).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("homodyne pattern scalar") {
    const double eps = 0.05;
    Complex at0 = homodyne_pattern(0.0, eps);
    CHECK(at0.real() == doctest::Approx(1.0 / (2.0 * M_PI * eps * eps)).epsilon(1e-12));
    CHECK(at0.imag() == doctest::Approx(0.0).epsilon(1e-12));
    // small-eps limit approaches the -1/(2 pi u^2) singular pattern
    for (double u : {0.5, 1.0, 2.0}) {
        Complex v = homodyne_pattern(u, 1e-6);
        CHECK(v.real() == doctest::Approx(-1.0 / (2.0 * M_PI * u * u)).epsilon(1e-9));
        CHECK(std::abs(v.imag()) < 1e-4);
    }
    CHECK_THROWS_AS(homodyne_pattern(0.0, 0.0), UsageError);
    CHECK_THROWS_AS(homodyne_kernel(0.0, 0.0, 8, -0.1), UsageError);
}

TEST_CASE("symplectic reconstruction round trip") {
    const int dim = 16;
    PolarDomain dom{6.0, 32, 32};
    XGrid grid = XGrid::centered(8.0, 384);

    SUBCASE("vacuum") {
        DensityMatrix vac = realize(Fock{0}, dim);
        Tomogram t = synth_symplectic(vac, "fock:n=0", dom, grid);
        auto [rec, report] = reconstruct_symplectic(t, dim, dom);
        CHECK(rec(0, 0).real() >= 0.99);
        CHECK(report.trace_err < 0.05);
        CHECK(rec.is_valid(reconstruction_tolerances()));
    }
    SUBCASE("coherent") {
        DensityMatrix coh = realize(Coherent{Complex(1.0)}, dim);
        Tomogram t = synth_symplectic(coh, "coherent:re=1,im=0", dom, grid);
        auto [rec, report] = reconstruct_symplectic(t, dim, dom);
        CHECK(fidelity(rec, coh, reconstruction_tolerances()) >= 0.99);
    }
    SUBCASE("linearity") {
        DensityMatrix a = realize(Fock{0}, dim);
        DensityMatrix b = realize(Coherent{Complex(1.0)}, dim);
        Tomogram ta = synth_symplectic(a, "a", dom, grid);
        Tomogram tb = synth_symplectic(b, "b", dom, grid);
        Tomogram mix = ta;
        for (std::size_t i = 0; i < mix.slices.size(); ++i)
            for (std::size_t j = 0; j < mix.slices[i].w.size(); ++j)
                mix.slices[i].w[j] = 0.5 * (ta.slices[i].w[j] + tb.slices[i].w[j]);
        // the map is exactly linear before the Hermitize/renormalize repair
        CMat raw_a = ref::reconstruct_symplectic_raw(ta, dim, dom);
        CMat raw_b = ref::reconstruct_symplectic_raw(tb, dim, dom);
        CMat raw_m = ref::reconstruct_symplectic_raw(mix, dim, dom);
        CHECK((raw_m - 0.5 * (raw_a + raw_b)).cwiseAbs().maxCoeff() < 1e-8);
        // after repair the two trace renormalizations differ only at the
        // size of the per-input trace error
        auto [ra, qa] = reconstruct_symplectic(ta, dim, dom);
        auto [rb, qb] = reconstruct_symplectic(tb, dim, dom);
        auto [rm, qm] = reconstruct_symplectic(mix, dim, dom);
        CHECK((rm.elements() - 0.5 * (ra.elements() + rb.elements())).cwiseAbs().maxCoeff() <
              1e-5);
    }
    SUBCASE("insufficient coverage") {
        DensityMatrix coh = realize(Coherent{Complex(1.0)}, dim);
        PolarDomain tiny{1.0, 8, 8};
        Tomogram t = synth_symplectic(coh, "coherent:re=1,im=0", tiny, grid);
        CHECK_THROWS_WITH_AS(reconstruct_symplectic(t, dim, tiny),
                             doctest::Contains("insufficient-coverage"), NumericError);
        CHECK_THROWS_WITH_AS(reconstruct_symplectic(t, dim, dom),
                             doctest::Contains("insufficient-coverage"), NumericError);
    }
}

TEST_CASE("homodyne reconstruction round trip") {
    const int dim = 16;
    XGrid grid = XGrid::centered(8.0, 384);

    SUBCASE("vacuum") {
        DensityMatrix vac = realize(Fock{0}, dim);
        Tomogram t = synth_homodyne(vac, "fock:n=0", 64, grid);
        auto [rec, report] = reconstruct_homodyne(t, dim, 0.05);
        CHECK(rec(0, 0).real() >= 0.99);
    }
    SUBCASE("fock 1 and cross-scheme agreement") {
        DensityMatrix one = realize(Fock{1}, dim);
        Tomogram t = synth_homodyne(one, "fock:n=1", 64, grid);
        auto [rec, report] = reconstruct_homodyne(t, dim, 0.05);
        CHECK(fidelity(rec, one, reconstruction_tolerances()) >= 0.98);
        CHECK(report.herm_resid < 1e-6);  // phi-average restores Hermiticity

        PolarDomain dom{6.0, 32, 32};
        Tomogram ts = synth_symplectic(one, "fock:n=1", dom, grid);
        auto [rec_s, rep_s] = reconstruct_symplectic(ts, dim, dom);
        CHECK(fidelity(rec, rec_s, reconstruction_tolerances()) >= 0.98);
    }
    SUBCASE("empty tomogram") {
        Tomogram empty;
        CHECK_THROWS_WITH_AS(reconstruct_homodyne(empty, dim, 0.05),
                             doctest::Contains("insufficient-coverage"), NumericError);
    }
}

TEST_CASE("t operator and photon kernel") {
    SUBCASE("s=0, alpha=0 closed form") {
        CMat t = t_operator(0.0, 0.0, 8);
        for (int n = 0; n < 8; ++n)
            CHECK(t(n, n).real() == doctest::Approx(n % 2 ? -2.0 : 2.0).epsilon(1e-12));
        KernelMatrix k = photon_kernel(0, 0.0, {0.0}, 8);
        for (int n = 0; n < 8; ++n)
            CHECK(k.elements(n, n).real() == doctest::Approx(n % 2 ? -4.0 : 4.0).epsilon(1e-12));
    }
    SUBCASE("bounded entries inside (-1, 0]") {
        KernelMatrix k = photon_kernel(10, Complex(2.0), {-0.5}, 24);
        CHECK(k.elements.allFinite());
        CHECK(k.elements.cwiseAbs().maxCoeff() < 1e6);
    }
    SUBCASE("ordering bound enforced") {
        CHECK_THROWS_WITH_AS(OrderingParam{-1.5}.validate(),
                             doctest::Contains("unbounded-kernel"), UsageError);
        CHECK_THROWS_AS(photon_kernel(0, 0.0, {0.5}, 8), UsageError);
    }
    SUBCASE("t operator trace identity") {
        // Tr T(alpha, s) = 1 independently of alpha when the geometric weight
        // converges absolutely (s < 0; the s = 0 endpoint is only Abel-summable)
        for (double s : {-0.3, -0.6})
            for (Complex a : {Complex(0.0), Complex(1.0, 0.5)}) {
                CMat t = t_operator(a, s, 48);
                CHECK(std::abs(t.trace() - Complex(1.0)) < 1e-6);
            }
    }
}

TEST_CASE("photon reconstruction round trip") {
    const int dim = 16;
    // radial rule dense enough to cancel the |base|^n growth of the s < 0
    // kernel's high-n diagonal (an oscillatory-Laguerre integrand)
    PolarDomain dom{5.0, 48, 24};
    // the tomogram's n-cutoff must cover the displaced photon distributions
    // out to |alpha| = R (and further for s < 0, where the weights grow like
    // |base|^n), so the probabilities are synthesized in a 96-state space
    DensityMatrix vac = realize(Fock{0}, 96);
    PhotonTomogram t = synth_photon(vac, "fock:n=0", dom);
    auto [rec, report] = reconstruct_photon(t, {0.0}, dim, dom);
    CHECK(rec(0, 0).real() >= 0.99);

    SUBCASE("s inside the open interval") {
        auto [rec2, rep2] = reconstruct_photon(t, {-0.2}, dim, dom);
        CHECK(rec2(0, 0).real() >= 0.99);
    }
    SUBCASE("n-cutoff too small for the weight series") {
        DensityMatrix small = realize(Fock{0}, 16);
        PhotonTomogram ts = synth_photon(small, "fock:n=0", dom);
        CHECK_THROWS_WITH_AS(reconstruct_photon(ts, {-0.2}, dim, dom),
                             doctest::Contains("insufficient-cutoff"), NumericError);
    }
    SUBCASE("entry count mismatch") {
        PhotonTomogram trunc = t;
        trunc.entries.pop_back();
        CHECK_THROWS_WITH_AS(reconstruct_photon(trunc, {0.0}, dim, dom),
                             doctest::Contains("insufficient-coverage"), NumericError);
    }
}

TEST_CASE("symplectic decomposition") {
    SymplecticParams a = decompose_symplectic(1.0, 0.0);
    CHECK(a.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.phi == doctest::Approx(0.0).epsilon(1e-12));

    SymplecticParams b = decompose_symplectic(std::cos(0.3), std::sin(0.3));
    CHECK(b.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b.phi == doctest::Approx(0.3).epsilon(1e-10));

    SymplecticParams c = decompose_symplectic(2.0 * std::cos(0.7), std::sin(0.7) / 2.0);
    CHECK(c.lambda == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c.phi == doctest::Approx(0.7).epsilon(1e-10));

    CHECK_THROWS_WITH_AS(decompose_symplectic(1.0, 1.0), doctest::Contains("no-real-solution"),
                         NumericError);
    CHECK_THROWS_AS(decompose_symplectic(0.0, 0.0), UsageError);

    // every enumerated branch satisfies the forward map
    for (auto [mu, nu] : {std::pair{0.9, 0.2}, {-0.5, 0.3}, {0.4, -0.9}}) {
        auto all = decompose_symplectic_all(mu, nu);
        CHECK(!all.empty());
        for (const SymplecticParams& p : all) {
            auto q = p.to_quadrature();
            CHECK(std::abs(q.mu - mu) < 1e-9);
            CHECK(std::abs(q.nu - nu) < 1e-9);
        }
    }
}

TEST_CASE("pairwise sum") {
    std::vector<CMat> terms;
    CMat expect = CMat::Zero(4, 4);
    for (int i = 0; i < 13; ++i) {
        CMat t = CMat::Constant(4, 4, Complex(i * 0.5, -i));
        expect += t;
        terms.push_back(t);
    }
    CHECK((pairwise_sum(terms) - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(pairwise_sum({}), UsageError);
}

}  // TEST_SUITE
