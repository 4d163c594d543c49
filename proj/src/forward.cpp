#include "tomo/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "tomo/fock.hpp"
#include "tomo/parallel.hpp"

namespace tomo {

double QuadratureSpec::scale() const { return std::sqrt(mu * mu + nu * nu); }

QuadratureSpec SymplecticParams::to_quadrature() const {
    if (lambda <= 0) throw UsageError("symplectic lambda must be positive");
    return {lambda * std::cos(phi), std::sin(phi) / lambda, 0.0};
}

QuadratureSpec squeezer_map(const SqueezerParams& params) {
    return {std::exp(-params.s) * std::cos(params.phi),
            std::exp(params.s) * std::sin(params.phi), 0.0};
}

double TomogramSlice::trapezoid() const {
    double s = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (w[i] + w[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

double PhotonEntry::leak() const {
    return 1.0 - std::accumulate(probs.begin(), probs.end(), 0.0);
}

double WignerGrid::integral() const {
    const double dq = q[1] - q[0], dp = p[1] - p[0];
    double s = 0;
    for (int i = 0; i + 1 < static_cast<int>(q.size()); ++i)
        for (int j = 0; j + 1 < static_cast<int>(p.size()); ++j)
            s += 0.25 * (values(i, j) + values(i + 1, j) + values(i, j + 1) +
                         values(i + 1, j + 1));
    return s * dq * dp;
}

TomogramSlice symplectic_marginal(const DensityMatrix& rho, const QuadratureSpec& quad,
                                  const XGrid& grid) {
    quad.validate();
    if (grid.n < 2) throw UsageError("x grid needs at least 2 points");
    const double dk = 2.0 * M_PI / grid.span();
    const double k_cut = M_PI / grid.dx;
    if (std::abs(characteristic_value(rho, k_cut, quad.mu, quad.nu)) > 1e-12)
        throw NumericError(
            "grid-too-narrow: characteristic function above 1e-12 at the implied k cutoff");

    // One-sided evaluation; f(-k) = conj(f(k)) makes the transform real by
    // construction. Stop early once the characteristic function has decayed.
    std::vector<Complex> f;
    int quiet = 0;
    for (int j = 0; j * dk <= k_cut; ++j) {
        Complex v = characteristic_value(rho, j * dk, quad.mu, quad.nu);
        f.push_back(v);
        quiet = std::abs(v) < 1e-16 ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }

    TomogramSlice slice;
    slice.mu = quad.mu;
    slice.nu = quad.nu;
    slice.delta = quad.delta;
    slice.x.resize(grid.n);
    slice.w.resize(grid.n);
    const double scale = dk / (2.0 * M_PI);
    for (int i = 0; i < grid.n; ++i) {
        const double xi = grid.x(i);
        const double u = xi - quad.delta;
        const Complex step = std::exp(Complex(0, -dk * u));
        Complex phase = step;
        double acc = f[0].real();
        for (std::size_t j = 1; j < f.size(); ++j) {
            acc += 2.0 * (f[j] * phase).real();
            phase *= step;
        }
        slice.x[i] = xi;
        slice.w[i] = acc * scale;
    }

    double worst = 0;
    for (double& v : slice.w) {
        if (v < 0) {
            worst = std::min(worst, v);
            v = 0;
        }
    }
    if (worst < -1e-12)
        throw NumericError("marginal negativity " + std::to_string(worst) +
                           " exceeds clipping threshold; grid is inadequate");
    slice.clipped_negativity = -worst;
    return slice;
}

TomogramSlice homodyne_marginal(const DensityMatrix& rho, double phi, const XGrid& grid) {
    return symplectic_marginal(rho, {std::cos(phi), std::sin(phi), 0.0}, grid);
}

CMat group_representation(const SymplecticParams& params, int dim) {
    if (params.lambda <= 0) throw UsageError("symplectic lambda must be positive");
    // rotation exp[-i phi (n + 1/2)] followed by squeeze exp[(r/2)(a†^2 - a^2)]
    // with r = ln(lambda); signs fixed by the route-equivalence requirement
    // G† q G = lambda cos(phi) q + lambda^-1 sin(phi) p.
    CVec rot(dim);
    for (int n = 0; n < dim; ++n) rot(n) = std::exp(Complex(0, -params.phi * (n + 0.5)));
    const double r = std::log(params.lambda);
    auto [a, adag] = ladder_matrices(dim);
    CMat gen = 0.5 * r * (adag * adag - a * a);
    CMat squeeze = gen.exp();
    return rot.asDiagonal() * squeeze;
}

TomogramSlice group_transform_marginal(const DensityMatrix& rho, const SymplecticParams& params,
                                       const XGrid& grid) {
    const int dim = rho.dim();
    CMat g = group_representation(params, dim);
    CMat sigma = g * rho.elements() * g.adjoint();
    // the truncated squeeze exponential is exactly unitary, so trace is always
    // preserved; detect inadequate cutoff by the population pushed into the
    // guard band instead
    double leak = 0;
    for (int n = dim - guard_band(dim); n < dim; ++n) leak += sigma(n, n).real();
    if (leak > 1e-6)
        throw NumericError("cutoff-overflow: squeeze transform puts " + std::to_string(leak) +
                           " of the population in the guard band");
    TomogramSlice slice = symplectic_marginal(DensityMatrix(std::move(sigma)),
                                              {1.0, 0.0, 0.0}, grid);
    auto quad = params.to_quadrature();
    slice.mu = quad.mu;
    slice.nu = quad.nu;
    return slice;
}

std::vector<double> photon_marginal(const DensityMatrix& rho, Complex alpha) {
    const int dim = rho.dim();
    if (std::norm(alpha) > 4.0 * dim)
        throw NumericError("cutoff-overflow: |alpha|^2 far beyond the Fock cutoff");
    // probs_n = sum_{jk} <n|D|j> rho_{jk} conj(<n|D|k>), with exact closed-form
    // displacement elements; no truncation beyond rho's own.
    CMat d = displacement_block(alpha, dim, dim);
    CMat m = d * rho.elements() * d.adjoint();
    std::vector<double> probs(dim);
    double tol = 1e-12;
    for (int n = 0; n < dim; ++n) {
        if (std::abs(m(n, n).imag()) > tol)
            throw NumericError("photon marginal has imaginary residue beyond 1e-12");
        probs[n] = std::max(0.0, m(n, n).real());
    }
    return probs;
}

double husimi_q(const DensityMatrix& rho, Complex alpha) {
    // w(0, alpha) = <-alpha| rho |-alpha>
    const int dim = rho.dim();
    Eigen::RowVectorXcd row(dim);
    for (int n = 0; n < dim; ++n) row(n) = displacement_element(0, n, alpha);
    const Complex q = (row * rho.elements() * row.adjoint())(0, 0);
    return q.real();
}

WignerGrid wigner(const DensityMatrix& rho, const XGrid& qgrid, const XGrid& pgrid) {
    if (qgrid.n < 2 || pgrid.n < 2) throw UsageError("wigner grid needs at least 2x2 points");
    const double du = 2.0 * M_PI / qgrid.span();
    const double dv = 2.0 * M_PI / pgrid.span();
    const double u_max = M_PI / qgrid.dx;
    const double v_max = M_PI / pgrid.dx;

    // characteristic function chi(u,v) = Tr{rho e^{i(u q + v p)}}
    auto chi = [&](double u, double v) -> Complex {
        double r = std::hypot(u, v);
        if (r == 0) return rho.elements().trace();
        return characteristic_value(rho, r, u / r, v / r);
    };
    const double box_edge = std::min(u_max, v_max);
    if (std::abs(chi(box_edge, 0.0)) > 1e-10 || std::abs(chi(0.0, box_edge)) > 1e-10)
        throw NumericError("grid-too-coarse: characteristic function unresolved at the box edge");

    // radial support of chi (it decays like a Gaussian); saves most evaluations
    double r_cut = box_edge;
    for (double r = 1.0; r < box_edge; r += 1.0) {
        double m = 0;
        for (int d = 0; d < 4; ++d) {
            double th = d * M_PI / 4.0;
            m = std::max(m, std::abs(chi(r * std::cos(th), r * std::sin(th))));
        }
        if (m < 1e-15) {
            r_cut = r + 1.0;
            break;
        }
    }

    const int Mu = static_cast<int>(std::min(u_max, r_cut) / du);
    const int Mv = static_cast<int>(std::min(v_max, r_cut) / dv);
    CMat chimat = CMat::Zero(2 * Mu + 1, 2 * Mv + 1);
    detail::parallel_for(2 * Mu + 1, [&](int row) {
        const int j = row - Mu;
        for (int l = -Mv; l <= Mv; ++l) {
            double u = j * du, v = l * dv;
            if (std::hypot(u, v) <= r_cut) chimat(j + Mu, l + Mv) = chi(u, v);
        }
    });

    // W = (1/(2pi)^2) sum chi(u,v) e^{-i(uq+vp)} du dv, done as two matmuls
    CMat eq(2 * Mu + 1, qgrid.n), ep(2 * Mv + 1, pgrid.n);
    for (int j = -Mu; j <= Mu; ++j)
        for (int i = 0; i < qgrid.n; ++i)
            eq(j + Mu, i) = std::exp(Complex(0, -j * du * qgrid.x(i)));
    for (int l = -Mv; l <= Mv; ++l)
        for (int i = 0; i < pgrid.n; ++i)
            ep(l + Mv, i) = std::exp(Complex(0, -l * dv * pgrid.x(i)));
    CMat wc = eq.transpose() * chimat * ep;
    wc *= du * dv / (4.0 * M_PI * M_PI);

    WignerGrid out;
    out.q.resize(qgrid.n);
    out.p.resize(pgrid.n);
    for (int i = 0; i < qgrid.n; ++i) out.q[i] = qgrid.x(i);
    for (int i = 0; i < pgrid.n; ++i) out.p[i] = pgrid.x(i);
    if (wc.imag().cwiseAbs().maxCoeff() > 1e-9)
        throw NumericError("wigner transform has imaginary residue beyond 1e-9");
    out.values = wc.real();
    return out;
}

Tomogram synth_symplectic(const DensityMatrix& rho, const std::string& label,
                          const PolarDomain& dom, const XGrid& base_grid) {
    auto nodes = radial_nodes(dom);
    const std::vector<double>& r = nodes.first;
    Tomogram tomo;
    tomo.state_label = label;
    tomo.slices.resize(dom.n_radial * dom.n_angular);
    detail::parallel_for(dom.n_radial * dom.n_angular, [&](int idx) {
        const int i = idx / dom.n_angular;
        const int j = idx % dom.n_angular;
        const double theta = 2.0 * M_PI * j / dom.n_angular;
        QuadratureSpec quad{r[i] * std::cos(theta), r[i] * std::sin(theta), 0.0};
        tomo.slices[idx] = symplectic_marginal(rho, quad, base_grid.scaled(quad.scale()));
    });
    return tomo;
}

Tomogram synth_homodyne(const DensityMatrix& rho, const std::string& label, int n_angles,
                        const XGrid& grid) {
    if (n_angles < 1) throw UsageError("need at least one homodyne angle");
    Tomogram tomo;
    tomo.state_label = label;
    tomo.slices.resize(n_angles);
    detail::parallel_for(n_angles, [&](int j) {
        tomo.slices[j] = homodyne_marginal(rho, 2.0 * M_PI * j / n_angles, grid);
    });
    return tomo;
}

PhotonTomogram synth_photon(const DensityMatrix& rho, const std::string& label,
                            const PolarDomain& alpha_dom) {
    auto nodes = radial_nodes(alpha_dom);
    const std::vector<double>& r = nodes.first;
    PhotonTomogram tomo;
    tomo.state_label = label;
    tomo.n_max = rho.dim();
    tomo.entries.resize(alpha_dom.n_radial * alpha_dom.n_angular);
    detail::parallel_for(alpha_dom.n_radial * alpha_dom.n_angular, [&](int idx) {
        const int i = idx / alpha_dom.n_angular;
        const int j = idx % alpha_dom.n_angular;
        const double theta = 2.0 * M_PI * j / alpha_dom.n_angular;
        Complex alpha = r[i] * std::exp(Complex(0, theta));
        tomo.entries[idx] = {alpha, photon_marginal(rho, alpha)};
    });
    return tomo;
}

double Histogram::mean() const {
    double s = 0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += values[i] * counts[i];
        n += counts[i];
    }
    return n ? s / n : 0.0;
}

std::int64_t Histogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

namespace {

// Portable uniform double in [0,1): top 53 bits of the engine output.
double uniform01(std::mt19937_64& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

Histogram sample_discrete(const std::vector<double>& values, const std::vector<double>& weights,
                          std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw UsageError("shots must be >= 1");
    std::vector<double> cdf(weights.size());
    double total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += std::max(0.0, weights[i]);
        cdf[i] = total;
    }
    if (!(total > 0)) throw NumericError("empty-distribution: nothing to sample");
    std::mt19937_64 rng(seed);
    Histogram h;
    h.values = values;
    h.counts.assign(values.size(), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        double u = uniform01(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t i = std::min<std::size_t>(it - cdf.begin(), values.size() - 1);
        ++h.counts[i];
    }
    return h;
}

}  // namespace

Histogram sample_counts(const TomogramSlice& slice, std::int64_t shots, std::uint64_t seed) {
    if (slice.x.empty()) throw NumericError("empty-distribution: slice has no records");
    return sample_discrete(slice.x, slice.w, shots, seed);
}

Histogram sample_counts(const PhotonEntry& entry, std::int64_t shots, std::uint64_t seed) {
    if (entry.probs.empty()) throw NumericError("empty-distribution: entry has no records");
    std::vector<double> ns(entry.probs.size());
    for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = static_cast<double>(i);
    return sample_discrete(ns, entry.probs, shots, seed);
}

TomogramSlice empirical_slice(const TomogramSlice& reference, const Histogram& hist) {
    if (hist.values.size() != reference.x.size())
        throw UsageError("histogram does not match the reference grid");
    TomogramSlice out = reference;
    const double dx = reference.x.size() > 1 ? reference.x[1] - reference.x[0] : 1.0;
    const double n = static_cast<double>(hist.total());
    for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] = hist.counts[i] / (n * dx);
    return out;
}

}  // namespace tomo
