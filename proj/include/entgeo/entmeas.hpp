#pragma once
// Entanglement quantifiers and witnesses for two qubits: PPT test,
// negativity, random robustness (closed form and geometric bisection),
// optimal witness construction, witness expectation values.
//
// Negativity normalization: this library reports twice the absolute sum of
// the negative partial-transpose eigenvalues, so a Bell state has negativity
// 1 and random robustness equals twice the negativity. The textbook value
// (half of this) is available as negativity_standard().
//
// All operations here require a two-qubit partition dims = [2,2]; PPT is a
// faithful separability test only in that case.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "entgeo/matlib.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo {

/// Hermitian observable normalized to trace 2.
class WitnessOperator {
 public:
  explicit WitnessOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    const double herm = hermiticity_defect(matrix_);
    if (!(herm < 1e-10)) {
      std::ostringstream os;
      os << "WitnessOperator: not Hermitian (defect " << herm << ")";
      throw std::invalid_argument(os.str());
    }
    const double tr_defect = std::abs(trace(matrix_) - Complex(2.0));
    if (!(tr_defect < 1e-10)) {
      std::ostringstream os;
      os << "WitnessOperator: trace differs from 2 by " << tr_defect;
      throw std::invalid_argument(os.str());
    }
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
};

enum class RobustnessMethod { closed_form, bisection };

/// Result of a random-robustness computation: the minimal noise weight s and
/// the separable mixture sitting on the boundary at that weight.
struct RobustnessResult {
  double value;
  RobustnessMethod method;
  DensityMatrix boundary_state;
};

enum class WitnessRegime { low_q, high_q };

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho, const char* where) {
  if (!rho.is_two_qubit())
    throw std::invalid_argument(std::string(where) +
                                ": requires a two-qubit state with dims [2,2]");
}

inline double pt_min_eigenvalue_raw(const ComplexMatrix& m) {
  return hermitian_eig(partial_transpose(m, {2, 2}, 1)).eigenvalues.front();
}

// (m + s*I/4) / (1+s): the state mixed with white noise at weight s.
inline ComplexMatrix noise_mix_raw(const ComplexMatrix& m, double s) {
  ComplexMatrix out = m + (s / 4.0) * ComplexMatrix::identity(4);
  out *= Complex(1.0 / (1.0 + s));
  return out;
}

}  // namespace detail

/// Smallest eigenvalue of the partial transpose over the second qubit.
inline double pt_min_eigenvalue(const DensityMatrix& rho) {
  detail::require_two_qubits(rho, "pt_min_eigenvalue");
  return detail::pt_min_eigenvalue_raw(rho.matrix());
}

/// Positive partial transpose (<=> separable for two qubits).
inline bool is_ppt(const DensityMatrix& rho, double tol = 1e-9) {
  return pt_min_eigenvalue(rho) >= -tol;
}

/// Twice the absolute sum of negative partial-transpose eigenvalues
/// (1 for a Bell state).
inline double negativity(const DensityMatrix& rho) {
  detail::require_two_qubits(rho, "negativity");
  const auto eig = hermitian_eig(partial_transpose(rho.matrix(), {2, 2}, 1));
  double neg_sum = 0.0;
  for (double lam : eig.eigenvalues)
    if (lam < 0.0) neg_sum += lam;
  return 2.0 * std::abs(neg_sum);
}

/// Textbook normalization: |sum of negative PT eigenvalues| (1/2 for a Bell
/// state); exactly half of negativity().
inline double negativity_standard(const DensityMatrix& rho) {
  return 0.5 * negativity(rho);
}

/// Random robustness from the two-qubit closed form 4*max(0, -lambda_min),
/// equal to twice the negativity.
inline RobustnessResult random_robustness_closed(const DensityMatrix& rho) {
  detail::require_two_qubits(rho, "random_robustness_closed");
  const double lam_min = detail::pt_min_eigenvalue_raw(rho.matrix());
  const double value = 4.0 * std::max(0.0, -lam_min);
  DensityMatrix boundary(detail::noise_mix_raw(rho.matrix(), value), rho.dims());
  return RobustnessResult{value, RobustnessMethod::closed_form, std::move(boundary)};
}

/// Random robustness by bisection on the noise weight, using PPT as the
/// separability oracle. Mixing more noise never breaks PPT along this ray,
/// so the membership predicate is monotone. Bracket by doubling from s = 1;
/// anything past s = 64 means corrupted input.
inline RobustnessResult random_robustness_bisect(const DensityMatrix& rho, double tol) {
  detail::require_two_qubits(rho, "random_robustness_bisect");
  if (!(tol > 0.0)) throw std::invalid_argument("random_robustness_bisect: tol must be > 0");

  // Tight internal PPT tolerance keeps the converged value close to the
  // exact crossing independently of the caller's tol.
  const auto separable_at = [&](double s) {
    return detail::pt_min_eigenvalue_raw(detail::noise_mix_raw(rho.matrix(), s)) >= -1e-13;
  };

  if (separable_at(0.0))
    return RobustnessResult{0.0, RobustnessMethod::bisection, rho};

  double hi = 1.0;
  while (!separable_at(hi)) {
    hi *= 2.0;
    if (hi > 64.0)
      throw std::runtime_error(
          "random_robustness_bisect: bracket expansion beyond s = 64; input is not a valid "
          "two-qubit state");
  }
  double lo = (hi == 1.0) ? 0.0 : hi / 2.0;

  const double width_goal = std::min(tol, 1e-12);
  for (int iter = 0; iter < 60 && (hi - lo) > width_goal; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (separable_at(mid))
      hi = mid;
    else
      lo = mid;
  }

  DensityMatrix boundary(detail::noise_mix_raw(rho.matrix(), hi), rho.dims());
  return RobustnessResult{hi, RobustnessMethod::bisection, std::move(boundary)};
}

/// Optimal witness for an entangled two-qubit state: the partial transpose of
/// the projector onto the negative-eigenvalue eigenspace of rho^{T2}, scaled
/// to trace 2. Satisfies Tr(W rho) = -R_R(rho)/2.
inline WitnessOperator optimal_witness(const DensityMatrix& rho) {
  detail::require_two_qubits(rho, "optimal_witness");
  const auto eig = hermitian_eig(partial_transpose(rho.matrix(), {2, 2}, 1));
  if (eig.eigenvalues.front() >= -1e-9) {
    std::ostringstream os;
    os << "optimal_witness: state is separable within tolerance (min PT eigenvalue "
       << eig.eigenvalues.front() << " >= -1e-9); no negative eigenspace";
    throw std::invalid_argument(os.str());
  }
  // A two-qubit partial transpose has at most one negative eigenvalue.
  if (eig.eigenvalues[1] < -1e-9)
    throw std::logic_error(
        "optimal_witness: more than one negative PT eigenvalue on a two-qubit state");

  const ComplexMatrix proj = outer(eig.eigenvector(0));
  ComplexMatrix w = partial_transpose(proj, {2, 2}, 1);
  w *= Complex(2.0 / trace(w).real());
  return WitnessOperator(std::move(w));
}

/// Tr(W rho); a negative value certifies entanglement.
inline double witness_value(const WitnessOperator& w, const DensityMatrix& rho) {
  if (w.dim() != rho.dim())
    throw std::invalid_argument("witness_value: dimension mismatch (" + std::to_string(w.dim()) +
                                " vs " + std::to_string(rho.dim()) + ")");
  return trace(w.matrix() * rho.matrix()).real();
}

/// The two optimal witnesses of the psi/phi mixture family:
/// I - 2|phi+><phi+| for the low-q regime (q <= 1/2) and
/// I - 2|psi+><psi+| for the high-q regime (q >= 1/2).
inline WitnessOperator family_witness(WitnessRegime regime) {
  const Bell label = (regime == WitnessRegime::low_q) ? Bell::phi_plus : Bell::psi_plus;
  ComplexMatrix w = ComplexMatrix::identity(4) - 2.0 * bell(label).projector();
  return WitnessOperator(std::move(w));
}

}  // namespace entgeo
