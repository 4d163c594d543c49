#include "tomo/inverse.hpp"

#include <cmath>
#include <sstream>

#include "tomo/fock.hpp"
#include "tomo/parallel.hpp"

namespace tomo {

namespace {

std::string fmt_params(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : kv) {
        os << (first ? "" : ",") << k << "=" << v;
        first = false;
    }
    return os.str();
}

// Repair + report shared by the three reconstruction routes.
std::pair<DensityMatrix, ReconstructionReport> finalize(CMat raw, const std::string& grid_desc) {
    ReconstructionReport report;
    report.grid = grid_desc;
    report.trace_err = std::abs(raw.trace() - Complex(1.0));
    report.herm_resid = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    if (report.trace_err > 0.05)
        throw NumericError("insufficient-coverage: reconstruction trace error " +
                           std::to_string(report.trace_err) + " before repair");
    CMat h = (raw + raw.adjoint()) / 2.0;
    h /= h.trace().real();
    DensityMatrix rho(std::move(h));
    report.min_eig = rho.min_eigenvalue();
    return {std::move(rho), std::move(report)};
}

}  // namespace

CMat pairwise_sum(std::vector<CMat> terms) {
    if (terms.empty()) throw UsageError("pairwise_sum of nothing");
    const std::size_t n = terms.size();
    for (std::size_t m = 1; m < n; m *= 2)
        for (std::size_t i = 0; i + m < n; i += 2 * m) terms[i] += terms[i + m];
    return terms[0];
}

KernelMatrix symplectic_kernel(double x, double mu, double nu, int dim) {
    const Complex alpha = Complex(-nu, mu) / std::sqrt(2.0);
    CMat k = (std::exp(Complex(0, -x)) / (2.0 * M_PI)) * displacement_matrix(alpha, dim);
    return {std::move(k), fmt_params({{"x", x}, {"mu", mu}, {"nu", nu}})};
}

KernelMatrix symplectic_kernel_normal_ordered(double x, double mu, double nu, int dim) {
    // (1/2pi) e^{-ix} e^{-(nu - i mu) a†/sqrt2} e^{(nu + i mu) a/sqrt2} e^{-(mu^2+nu^2)/4}
    const Complex cdag = -Complex(nu, -mu) / std::sqrt(2.0);
    const Complex c = Complex(nu, mu) / std::sqrt(2.0);
    CMat edag = CMat::Zero(dim, dim);  // <m|exp(cdag a†)|n>, lower triangular
    CMat e = CMat::Zero(dim, dim);     // <m|exp(c a)|n>, upper triangular
    for (int n = 0; n < dim; ++n) {
        Complex t = 1.0;
        edag(n, n) = e(n, n) = 1.0;
        for (int m = n + 1; m < dim; ++m) {
            // multiply by c/(m-n) * sqrt(m)
            t *= cdag / static_cast<double>(m - n) * std::sqrt(static_cast<double>(m));
            edag(m, n) = t;
        }
        t = 1.0;
        for (int m = n + 1; m < dim; ++m) {
            t *= c / static_cast<double>(m - n) * std::sqrt(static_cast<double>(m));
            e(n, m) = t;
        }
    }
    const Complex pref = std::exp(Complex(0, -x)) / (2.0 * M_PI) *
                         std::exp(-0.25 * (mu * mu + nu * nu));
    return {(pref * (edag * e)).eval(), fmt_params({{"x", x}, {"mu", mu}, {"nu", nu}})};
}

std::pair<DensityMatrix, ReconstructionReport> reconstruct_symplectic(const Tomogram& tomogram,
                                                                      int dim,
                                                                      const PolarDomain& dom) {
    const int n_slices = dom.n_radial * dom.n_angular;
    if (static_cast<int>(tomogram.slices.size()) != n_slices)
        throw NumericError("insufficient-coverage: tomogram has " +
                           std::to_string(tomogram.slices.size()) + " slices, polar grid needs " +
                           std::to_string(n_slices));
    auto nodes = radial_nodes(dom);
    const std::vector<double>&r = nodes.first, &wr = nodes.second;
    const double dtheta = 2.0 * M_PI / dom.n_angular;

    std::vector<CMat> contrib(n_slices);
    detail::parallel_for(n_slices, [&](int idx) {
        const int i = idx / dom.n_angular;
        const int j = idx % dom.n_angular;
        const double theta = dtheta * j;
        const TomogramSlice& slice = tomogram.slices[idx];
        const double mu = r[i] * std::cos(theta), nu = r[i] * std::sin(theta);
        if (std::hypot(slice.mu - mu, slice.nu - nu) > 1e-9 * (1.0 + r[i]))
            throw NumericError("insufficient-coverage: slice " + std::to_string(idx) +
                               " does not sit on the expected polar node");
        // c = int dx w(x) e^{-ix} over the slice grid (delta shifts x first)
        Complex c = 0;
        for (std::size_t m = 0; m + 1 < slice.x.size(); ++m) {
            const double xa = slice.x[m] - slice.delta, xb = slice.x[m + 1] - slice.delta;
            c += 0.5 * (xb - xa) *
                 (slice.w[m] * std::exp(Complex(0, -xa)) +
                  slice.w[m + 1] * std::exp(Complex(0, -xb)));
        }
        const Complex alpha = Complex(-slice.nu, slice.mu) / std::sqrt(2.0);
        const double weight = wr[i] * r[i] * dtheta;
        contrib[idx] = (weight / (2.0 * M_PI) * c) * displacement_matrix(alpha, dim);
        // the characteristic function must have decayed by the disk edge,
        // otherwise the truncated (mu, nu) integral misses real signal
        if (i == dom.n_radial - 1 && std::abs(c) > 5e-2)
            throw NumericError("insufficient-coverage: characteristic value " +
                               std::to_string(std::abs(c)) + " at the domain edge R=" +
                               std::to_string(dom.radius) + " has not decayed");
    });
    std::ostringstream grid;
    grid << "symplectic R=" << dom.radius << " " << dom.n_radial << "x" << dom.n_angular;
    return finalize(pairwise_sum(std::move(contrib)), grid.str());
}

Complex homodyne_pattern(double u, double eps) {
    if (eps <= 0) throw UsageError("homodyne regularizer eps must be positive");
    const Complex d(eps, -u);
    return 1.0 / (2.0 * M_PI * d * d);
}

namespace {

// Exact integrals of the regularized pattern against a linear segment:
//   I0 = int_{u1}^{u2} du / (eps - iu)^2   = [-i / (eps - iu)]
//   I1 = int_{u1}^{u2} u du / (eps - iu)^2 = [-eps / (eps - iu) - Log(eps - iu)]
// The log stays on the principal branch since Re(eps - iu) = eps > 0.
Complex seg_i0(double u1, double u2, double eps) {
    const Complex v1(eps, -u1), v2(eps, -u2);
    return Complex(0, -1) * (1.0 / v2 - 1.0 / v1);
}
Complex seg_i1(double u1, double u2, double eps) {
    const Complex v1(eps, -u1), v2(eps, -u2);
    return (-eps / v2 - std::log(v2)) - (-eps / v1 - std::log(v1));
}

// int w(x) / (eps - i(x - lam))^2 dx with w piecewise linear on the grid.
Complex pattern_convolution(const std::vector<double>& x, const std::vector<double>& w,
                            double lam, double delta, double eps) {
    Complex acc = 0;
    for (std::size_t m = 0; m + 1 < x.size(); ++m) {
        const double xa = x[m] - delta, xb = x[m + 1] - delta;
        const double u1 = xa - lam, u2 = xb - lam;
        const double slope = (w[m + 1] - w[m]) / (u2 - u1);
        const Complex i0 = seg_i0(u1, u2, eps);
        const Complex i1 = seg_i1(u1, u2, eps);
        acc += w[m] * i0 + slope * (i1 - u1 * i0);
    }
    return acc;
}

}  // namespace

KernelMatrix homodyne_kernel(double x_phi, double phi, int dim, double eps) {
    if (eps <= 0) throw UsageError("homodyne regularizer eps must be positive");
    if (dim < 2) throw UsageError("invalid-dimension: homodyne kernel needs dim >= 2");
    auto [q, p] = quadrature_matrices(dim);
    CMat xop = std::cos(phi) * q + std::sin(phi) * p;
    Eigen::SelfAdjointEigenSolver<CMat> es(xop);
    CVec g(dim);
    for (int j = 0; j < dim; ++j) g(j) = homodyne_pattern(x_phi - es.eigenvalues()(j), eps);
    CMat k = es.eigenvectors() * g.asDiagonal() * es.eigenvectors().adjoint();
    return {std::move(k), fmt_params({{"x_phi", x_phi}, {"phi", phi}, {"eps", eps}})};
}

std::pair<DensityMatrix, ReconstructionReport> reconstruct_homodyne(const Tomogram& tomogram,
                                                                    int dim, double eps) {
    if (eps <= 0) throw UsageError("homodyne regularizer eps must be positive");
    const int n_angles = static_cast<int>(tomogram.slices.size());
    if (n_angles < 1) throw NumericError("insufficient-coverage: homodyne tomogram is empty");
    const double dphi = 2.0 * M_PI / n_angles;
    // Two accuracy measures beyond the plain per-eigenvalue pattern sum:
    //  - the quadrature eigenbasis is built in a padded working space (the
    //    truncated x-operator's top eigenpairs are unusable, so the kernel's
    //    high-n block would otherwise carry O(1) error);
    //  - the e^{-eps r} regularizer biases the result at first order in eps,
    //    which the eps/(eps/2) Richardson combination cancels.
    const int work = 3 * dim;
    auto quads = quadrature_matrices(work);
    const CMat &q = quads.first, &p = quads.second;

    std::vector<CMat> contrib(n_angles);
    detail::parallel_for(n_angles, [&](int j) {
        const TomogramSlice& slice = tomogram.slices[j];
        const double phi = dphi * j;
        if (std::abs(slice.mu - std::cos(phi)) > 1e-9 || std::abs(slice.nu - std::sin(phi)) > 1e-9)
            throw NumericError("insufficient-coverage: slice " + std::to_string(j) +
                               " is not the expected homodyne angle");
        CMat xop = std::cos(phi) * q + std::sin(phi) * p;
        Eigen::SelfAdjointEigenSolver<CMat> es(xop);
        CVec s(work);
        for (int l = 0; l < work; ++l) {
            const double lam = es.eigenvalues()(l);
            const Complex full =
                pattern_convolution(slice.x, slice.w, lam, slice.delta, eps);
            const Complex half =
                pattern_convolution(slice.x, slice.w, lam, slice.delta, eps / 2.0);
            s(l) = (2.0 * half - full) / (2.0 * M_PI);
        }
        CMat padded = dphi * (es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint());
        contrib[j] = padded.topLeftCorner(dim, dim);
    });
    std::ostringstream grid;
    grid << "homodyne angles=" << n_angles << " eps=" << eps;
    return finalize(pairwise_sum(std::move(contrib)), grid.str());
}

CMat t_operator(Complex alpha, double s, int dim) {
    if (s >= 1.0) throw UsageError("unbounded-kernel: T(alpha, s) needs s < 1");
    const double base = (s + 1.0) / (s - 1.0);
    // internal sum over j runs well past the cutoff: the displacement elements
    // decay super-exponentially and eventually beat |base|^j
    int J = dim + static_cast<int>(std::ceil(std::norm(alpha) + 8.0 * std::abs(alpha))) + 16;
    for (;;) {
        CMat d = displacement_block(alpha, dim, J);
        double tail = 0;
        for (int m = 0; m < dim; ++m)
            tail = std::max(tail, std::norm(d(m, J - 1)) * std::pow(std::abs(base), J - 1));
        if (tail < 1e-13) {
            CVec b(J);
            for (int j = 0; j < J; ++j) b(j) = std::pow(Complex(base), j);
            CMat t = (2.0 / (1.0 - s)) * (d * b.asDiagonal() * d.adjoint());
            if (!t.allFinite())
                throw NumericError("unbounded-kernel: T(alpha, s) overflowed at s = " +
                                   std::to_string(s));
            return t;
        }
        J = J * 3 / 2;
        if (J > 4096)
            throw NumericError("unbounded-kernel: internal sum for T(alpha, s) does not converge");
    }
}

KernelMatrix photon_kernel(int n, Complex alpha, const OrderingParam& s, int dim) {
    s.validate();
    if (n < 0) throw UsageError("photon number must be nonnegative");
    const double base = (s.s + 1.0) / (s.s - 1.0);
    const double pref = 2.0 / (1.0 - s.s) * std::pow(base, n);
    CMat k = pref * t_operator(-alpha, -s.s, dim);
    if (!k.allFinite()) throw NumericError("unbounded-kernel: photon kernel has non-finite entries");
    return {std::move(k),
            fmt_params({{"n", static_cast<double>(n)},
                        {"re_alpha", alpha.real()},
                        {"im_alpha", alpha.imag()},
                        {"s", s.s}})};
}

std::pair<DensityMatrix, ReconstructionReport> reconstruct_photon(const PhotonTomogram& tomogram,
                                                                  const OrderingParam& s, int dim,
                                                                  const PolarDomain& alpha_dom) {
    s.validate();
    const int n_points = alpha_dom.n_radial * alpha_dom.n_angular;
    if (static_cast<int>(tomogram.entries.size()) != n_points)
        throw NumericError("insufficient-coverage: photon tomogram has " +
                           std::to_string(tomogram.entries.size()) +
                           " entries, alpha grid needs " + std::to_string(n_points));
    auto nodes = radial_nodes(alpha_dom);
    const std::vector<double>&r = nodes.first, &wr = nodes.second;
    const double dtheta = 2.0 * M_PI / alpha_dom.n_angular;
    const double base = (s.s + 1.0) / (s.s - 1.0);
    const double cpref = 2.0 / (1.0 - s.s);

    std::vector<CMat> contrib(n_points);
    detail::parallel_for(n_points, [&](int idx) {
        const int i = idx / alpha_dom.n_angular;
        const int j = idx % alpha_dom.n_angular;
        const PhotonEntry& entry = tomogram.entries[idx];
        const Complex alpha = r[i] * std::exp(Complex(0, dtheta * j));
        if (std::abs(entry.alpha - alpha) > 1e-9 * (1.0 + r[i]))
            throw NumericError("insufficient-coverage: entry " + std::to_string(idx) +
                               " does not sit on the expected alpha node");
        double weight = 0;  // sum_n w(n, alpha) c_n(s)
        double bn = 1.0, last = 0.0;
        for (std::size_t n = 0; n < entry.probs.size(); ++n) {
            last = entry.probs[n] * cpref * bn;
            weight += last;
            bn *= base;
        }
        // for s < 0 the weights |c_n| grow like |base|^n > 1, so the series
        // must have converged within the tomogram's n-cutoff
        if (std::abs(last) > 1e-6)
            throw NumericError("insufficient-cutoff: photon weight series still " +
                               std::to_string(std::abs(last)) + " at the tomogram n-cutoff " +
                               std::to_string(entry.probs.size()));
        const double measure = wr[i] * r[i] * dtheta / M_PI;
        contrib[idx] = (weight * measure) * t_operator(-alpha, -s.s, dim);
    });
    std::ostringstream grid;
    grid << "photon s=" << s.s << " R=" << alpha_dom.radius << " " << alpha_dom.n_radial << "x"
         << alpha_dom.n_angular;
    return finalize(pairwise_sum(std::move(contrib)), grid.str());
}

SymplecticParams decompose_symplectic(double mu, double nu) {
    return decompose_symplectic_all(mu, nu).front();
}

std::vector<SymplecticParams> decompose_symplectic_all(double mu, double nu) {
    if (mu * mu + nu * nu <= 0)
        throw UsageError("degenerate-direction: mu^2 + nu^2 must be positive");
    const double prod = 2.0 * mu * nu;  // = sin(2 phi)
    if (std::abs(prod) > 1.0 + 1e-12)
        throw NumericError("no-real-solution: |2 mu nu| > 1 has no (lambda, phi) preimage");
    const double phi0 = 0.5 * std::asin(std::clamp(prod, -1.0, 1.0));
    std::vector<SymplecticParams> out;
    // candidate phases: phi0 and pi/2 - phi0 (sin(2 phi) is symmetric about pi/4),
    // reflected by pi when mu < 0; keep those consistent with lambda > 0
    for (double cand : {phi0, M_PI / 2.0 - phi0, phi0 + M_PI, 3.0 * M_PI / 2.0 - phi0}) {
        const double c = std::cos(cand), sn = std::sin(cand);
        double lambda;
        if (std::abs(c) > std::abs(sn)) {
            lambda = mu / c;
            if (lambda <= 0 || std::abs(sn / lambda - nu) > 1e-10 * (1.0 + std::abs(nu)))
                continue;
        } else {
            if (nu == 0) continue;
            lambda = sn / nu;
            if (lambda <= 0 || std::abs(lambda * c - mu) > 1e-10 * (1.0 + std::abs(mu))) continue;
        }
        double phi = std::fmod(cand + 2.0 * M_PI, 2.0 * M_PI);
        bool dup = false;
        for (auto& p : out)
            if (std::abs(p.phi - phi) < 1e-9 && std::abs(p.lambda - lambda) < 1e-9) dup = true;
        if (!dup) out.push_back({lambda, phi});
    }
    if (out.empty())
        throw NumericError("no-real-solution: no (lambda, phi) maps to this (mu, nu)");
    // principal branch first: smallest phi in [0, pi/2] when available
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const bool pa = a.phi <= M_PI / 2.0 + 1e-12, pb = b.phi <= M_PI / 2.0 + 1e-12;
        if (pa != pb) return pa;
        return a.phi < b.phi;
    });
    return out;
}

}  // namespace tomo
