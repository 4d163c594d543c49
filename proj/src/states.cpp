#include "tomo/states.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "tomo/fock.hpp"

namespace tomo {

namespace {

std::map<std::string, double> parse_kv(const std::string& body) {
    std::map<std::string, double> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size())
            throw UsageError("malformed state spec field '" + item + "'");
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(item.substr(eq + 1), &used);
        } catch (const std::exception&) {
            throw UsageError("malformed state spec value in '" + item + "'");
        }
        if (used != item.size() - eq - 1)
            throw UsageError("malformed state spec value in '" + item + "'");
        kv[item.substr(0, eq)] = v;
    }
    return kv;
}

double get(const std::map<std::string, double>& kv, const std::string& key, double dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

}  // namespace

StateSpec parse_state_spec(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    auto kv = colon == std::string::npos ? std::map<std::string, double>{}
                                         : parse_kv(text.substr(colon + 1));
    if (kind == "fock") {
        double n = get(kv, "n", 0);
        if (n < 0 || n != std::floor(n)) throw UsageError("fock:n must be a nonnegative integer");
        return Fock{static_cast<int>(n)};
    }
    if (kind == "coherent") return Coherent{{get(kv, "re", 0), get(kv, "im", 0)}};
    if (kind == "cat") return EvenCat{get(kv, "a", 0), get(kv, "b", 0)};
    if (kind == "squeezed")
        return Squeezed{{get(kv, "re", 0), get(kv, "im", 0)}, get(kv, "s", 0)};
    throw UsageError("unknown state kind '" + kind + "'");
}

std::string format_state_spec(const StateSpec& spec) {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Fock>)
                os << "fock:n=" << s.n;
            else if constexpr (std::is_same_v<T, Coherent>)
                os << "coherent:re=" << s.alpha0.real() << ",im=" << s.alpha0.imag();
            else if constexpr (std::is_same_v<T, EvenCat>)
                os << "cat:a=" << s.a << ",b=" << s.b;
            else
                os << "squeezed:re=" << s.alpha0.real() << ",im=" << s.alpha0.imag()
                   << ",s=" << s.squeeze;
        },
        spec);
    return os.str();
}

CVec state_vector(const StateSpec& spec, int dim) {
    if (dim < 1) throw UsageError("invalid-dimension: dim must be >= 1");
    return std::visit(
        [&](const auto& s) -> CVec {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Fock>) {
                if (s.n >= dim)
                    throw UsageError("fock index " + std::to_string(s.n) +
                                     " does not fit in dim " + std::to_string(dim));
                CVec v = CVec::Zero(dim);
                v(s.n) = 1.0;
                return v;
            } else if constexpr (std::is_same_v<T, Coherent>) {
                return coherent_vector(s.alpha0, dim);
            } else if constexpr (std::is_same_v<T, EvenCat>) {
                const double norm2 =
                    2.0 * (1.0 + std::cos(2.0 * s.a * s.b) * std::exp(-2.0 * s.b * s.b));
                if (!(norm2 > 0)) throw NumericError("cat state normalization vanished");
                CVec v = coherent_vector({s.a, s.b}, dim) + coherent_vector({s.a, -s.b}, dim);
                return v / std::sqrt(norm2);
            } else {
                // squeezed vacuum amplitudes, then displace
                CVec sq = CVec::Zero(dim);
                const double r = s.squeeze;
                const double th = std::tanh(r);
                double c = 1.0 / std::sqrt(std::cosh(r));
                sq(0) = c;
                for (int m = 1; 2 * m < dim; ++m) {
                    // c_{2m} = c_{2m-2} * tanh(r) * sqrt((2m-1)/(2m))
                    c *= th * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
                    sq(2 * m) = c;
                }
                if (s.alpha0 == Complex(0, 0)) return sq;
                return displacement_matrix(s.alpha0, dim) * sq;
            }
        },
        spec);
}

DensityMatrix realize(const StateSpec& spec, int dim) {
    CVec v = state_vector(spec, dim);
    const double norm2 = v.squaredNorm();
    if (norm2 < 1.0 - 1e-8)
        throw NumericError("insufficient-cutoff: truncated norm " + std::to_string(norm2) +
                           " at dim " + std::to_string(dim));
    v /= std::sqrt(norm2);
    return DensityMatrix((v * v.adjoint()).eval());
}

double cat_marginal(double a, double b, double x, double mu, double nu) {
    const double d = mu * mu + nu * nu;
    if (d <= 0) throw UsageError("degenerate-direction: mu^2 + nu^2 must be positive");
    // The closed form is stated in a quadrature normalization whose vacuum
    // variance is (mu^2+nu^2)/4; this library fixes <0|q^2|0> = 1/2, so the
    // conversion w(x) -> w(x/sqrt2)/sqrt2 is applied (equivalently, scale
    // (mu, nu) by sqrt2 and use the scaling law).
    const double y = x / std::sqrt(2.0);
    const double norm = 1.0 + std::cos(2.0 * a * b) * std::exp(-2.0 * b * b);
    const double ya = y - mu * a;
    const double gauss = std::exp(-2.0 * (ya * ya + b * b * nu * nu) / d);
    const double osc = std::cosh(4.0 * nu * b * ya / d) +
                       std::cos(2.0 * b * (2.0 * mu * y - a * (mu * mu - nu * nu)) / d);
    return 1.0 / std::sqrt(M_PI * d) / norm * gauss * osc;
}

double cat_photon_distribution(double a, double b, int n, Complex alpha) {
    if (n < 0) throw UsageError("photon number must be nonnegative");
    const Complex a1{a, b}, a2{a, -b};
    const Complex z1 = alpha + a1, z2 = alpha + a2;
    const double A1 = std::norm(z1), A2 = std::norm(z2);
    const double norm2 = 2.0 * (1.0 + std::cos(2.0 * a * b) * std::exp(-2.0 * b * b));
    // everything in log magnitude to stay finite at large n
    const double lnfact = std::lgamma(n + 1.0);
    auto poisson = [&](double A) {
        if (n == 0) return std::exp(-A);
        return A > 0 ? std::exp(-A + n * std::log(A) - lnfact) : 0.0;
    };
    const double t1 = poisson(A1);
    const double t2 = poisson(A2);
    // cross term carries the relative displacement phase exp(-2ib Re alpha)
    double t3 = 0.0;
    const Complex zz = z1 * std::conj(z2);
    if (n == 0 || zz != Complex(0, 0)) {
        const double mag =
            -0.5 * (A1 + A2) - lnfact + (n > 0 ? n * std::log(std::abs(zz)) : 0.0);
        const double phase = -2.0 * b * alpha.real() + n * std::arg(zz);
        t3 = 2.0 * std::exp(mag) * std::cos(phase);
    }
    return (t1 + t2 + t3) / norm2;
}

double evolved_coherent_marginal(Complex alpha0, double x, double mu, double nu, double t) {
    const double d = mu * mu + nu * nu;
    if (d <= 0) throw UsageError("degenerate-direction: mu^2 + nu^2 must be positive");
    const Complex at = alpha0 * std::exp(Complex(0, -t));
    const double mean = std::sqrt(2.0) * (mu * at.real() + nu * at.imag());
    const double u = x - mean;
    return std::exp(-u * u / d) / std::sqrt(M_PI * d);
}

}  // namespace tomo
