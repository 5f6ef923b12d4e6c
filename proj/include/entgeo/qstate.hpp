#pragma once
// Validated quantum-state constructors and diagnostics: Bell states, the
// one-parameter psi/phi mixture family, Bell-diagonal states, maximally mixed
// states, fidelity and purity.
//
// Computational basis ordering |00>,|01>,|10>,|11> with the left qubit most
// significant, matching the matlib subsystem convention.

#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "entgeo/matlib.hpp"

namespace entgeo {

enum class Bell { phi_plus, phi_minus, psi_plus, psi_minus };

/// Normalized state vector with a declared subsystem partition.
class PureState {
 public:
  PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> dims)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    std::size_t prod = 1;
    for (std::size_t d : dims_) prod *= d;
    if (prod != amplitudes_.size())
      throw std::invalid_argument("PureState: dims product " + std::to_string(prod) +
                                  " does not match amplitude count " +
                                  std::to_string(amplitudes_.size()));
    double n2 = 0.0;
    for (const Complex& a : amplitudes_) n2 += std::norm(a);
    const double defect = std::abs(std::sqrt(n2) - 1.0);
    if (!(defect < 1e-12)) {
      std::ostringstream os;
      os << "PureState: not normalized (| ||v|| - 1 | = " << defect << " exceeds 1e-12)";
      throw std::invalid_argument(os.str());
    }
  }

  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return amplitudes_.size(); }

  ComplexMatrix projector() const { return outer(amplitudes_); }

 private:
  std::vector<Complex> amplitudes_;
  std::vector<std::size_t> dims_;
};

/// Quantum state: Hermitian, unit trace, positive semidefinite (all within
/// 1e-10), with a declared subsystem partition. Construction validates.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims)
      : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    detail::check_dims_product(matrix_, dims_, "DensityMatrix");

    const double herm = hermiticity_defect(matrix_);
    if (!(herm < 1e-10)) {
      std::ostringstream os;
      os << "DensityMatrix: not Hermitian (max |rho - rho^dagger| = " << herm
         << " exceeds 1e-10)";
      throw std::invalid_argument(os.str());
    }
    const double tr_defect = std::abs(trace(matrix_) - Complex(1.0));
    if (!(tr_defect < 1e-10)) {
      std::ostringstream os;
      os << "DensityMatrix: trace differs from 1 by " << tr_defect << " (exceeds 1e-10)";
      throw std::invalid_argument(os.str());
    }
    const double lam_min = hermitian_eig(matrix_, 1e-10).eigenvalues.front();
    if (lam_min < -1e-10) {
      std::ostringstream os;
      os << "DensityMatrix: not positive semidefinite (min eigenvalue " << lam_min
         << " below -1e-10)";
      throw std::invalid_argument(os.str());
    }
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return matrix_.dim(); }

  bool is_two_qubit() const { return dims_ == std::vector<std::size_t>{2, 2}; }

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

inline PureState bell(Bell label) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> v(4);
  switch (label) {
    case Bell::phi_plus:  v = {r, 0, 0, r};  break;
    case Bell::phi_minus: v = {r, 0, 0, -r}; break;
    case Bell::psi_plus:  v = {0, r, r, 0};  break;
    case Bell::psi_minus: v = {0, r, -r, 0}; break;
    default: throw std::invalid_argument("bell: unknown label");
  }
  return PureState(std::move(v), {2, 2});
}

/// The one-parameter family q |psi+><psi+| + (1-q) |phi+><phi+|.
inline DensityMatrix family_state(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("family_state: q must lie in [0,1], got " + std::to_string(q));
  ComplexMatrix m = q * bell(Bell::psi_plus).projector() +
                    (1.0 - q) * bell(Bell::phi_plus).projector();
  return DensityMatrix(std::move(m), {2, 2});
}

/// Mixture of the four Bell projectors with weights (phi+, phi-, psi+, psi-).
inline DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double w : p) {
    if (w < 0.0)
      throw std::invalid_argument("bell_diagonal: negative weight " + std::to_string(w));
    sum += w;
  }
  if (!(std::abs(sum - 1.0) < 1e-12)) {
    std::ostringstream os;
    os << "bell_diagonal: weights sum to " << sum << " (must be 1 within 1e-12)";
    throw std::invalid_argument(os.str());
  }
  ComplexMatrix m = p[0] * bell(Bell::phi_plus).projector() +
                    p[1] * bell(Bell::phi_minus).projector() +
                    p[2] * bell(Bell::psi_plus).projector() +
                    p[3] * bell(Bell::psi_minus).projector();
  return DensityMatrix(std::move(m), {2, 2});
}

/// I/d as a single-system state.
inline DensityMatrix maximally_mixed(std::size_t d) {
  if (d < 2) throw std::invalid_argument("maximally_mixed: d must be >= 2");
  ComplexMatrix m = (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d);
  return DensityMatrix(std::move(m), {d});
}

/// <psi|rho|psi>. Requires matching total dimension.
inline double fidelity_pure(const PureState& target, const DensityMatrix& rho) {
  if (target.dim() != rho.dim())
    throw std::invalid_argument("fidelity_pure: dimension mismatch (" +
                                std::to_string(target.dim()) + " vs " +
                                std::to_string(rho.dim()) + ")");
  return inner(target.amplitudes(), matvec(rho.matrix(), target.amplitudes())).real();
}

/// Tr(rho^2); 1/d for maximally mixed, 1 for pure.
inline double purity(const DensityMatrix& rho) {
  return trace(rho.matrix() * rho.matrix()).real();
}

}  // namespace entgeo
