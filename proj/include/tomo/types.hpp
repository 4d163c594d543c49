#ifndef TOMO_TYPES_HPP
#define TOMO_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tomo {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Error categories map onto CLI exit codes: usage=1, numeric=2, io=3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double herm = 1e-10;
    double trace = 1e-10;
    double psd = 1e-8;
    double num = 1e-9;
};

// Tolerances appropriate for the output of a numerical reconstruction,
// which carries quadrature error on top of floating point noise.
inline Tolerances reconstruction_tolerances() {
    Tolerances t;
    t.herm = 1e-6;
    t.trace = 1e-6;
    // linear inversion from quadrature data leaves small negative eigenvalues
    t.psd = 5e-2;
    return t;
}

// Density operator on the truncated Fock basis |0>..|dim-1>, hbar = 1.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(CMat m) : elements_(std::move(m)) {
        if (elements_.rows() != elements_.cols() || elements_.rows() < 1)
            throw UsageError("invalid-dimension: density matrix must be square and nonempty");
    }

    int dim() const { return static_cast<int>(elements_.rows()); }
    const CMat& elements() const { return elements_; }
    CMat& elements() { return elements_; }

    Complex operator()(int m, int n) const { return elements_(m, n); }

    double hermiticity_residual() const {
        return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
    }
    double trace_error() const { return std::abs(elements_.trace() - Complex(1.0)); }
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<CMat> es(
            ((elements_ + elements_.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }
    double purity() const { return std::real((elements_ * elements_).trace()); }

    bool is_valid(const Tolerances& tol = {}) const {
        return hermiticity_residual() <= tol.herm && trace_error() <= tol.trace &&
               min_eigenvalue() >= -tol.psd;
    }

    void validate(const Tolerances& tol = {}) const {
        if (hermiticity_residual() > tol.herm)
            throw NumericError("density matrix not Hermitian: residual " +
                               std::to_string(hermiticity_residual()));
        if (trace_error() > tol.trace)
            throw NumericError("density matrix trace error " + std::to_string(trace_error()));
        if (min_eigenvalue() < -tol.psd)
            throw NumericError("density matrix not positive semidefinite: min eigenvalue " +
                               std::to_string(min_eigenvalue()));
    }

  private:
    CMat elements_;
};

// Default truncation guard band: entries in the last ceil(dim/4) rows/columns
// are treated as contaminated by the cutoff.
inline int guard_band(int dim) { return (dim + 3) / 4; }

}  // namespace tomo

#endif
