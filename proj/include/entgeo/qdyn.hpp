#pragma once
// Physical generators of the psi/phi mixture family: the four-qubit
// double-swap evolution and the single-qubit bit-flip channel.
//
// Swap model: qubits (a, b, A, B) with H = H^{aA} + H^{bB}, where
//   H^{mu nu} = (omega/2) sigma_z^mu + (omega/2) sigma_z^nu
//             + (g/2)(sigma_-^mu sigma_+^nu + sigma_+^mu sigma_-^nu).
// Starting from |phi+>_{ab} (x) |psi+>_{AB}, the flip-flop coupling g/2
// advances each pair's swap phase by g*t/2, so the evolved AB weight on
// |psi+> is q(t) = cos^2(g*t/2): the first swap completes at g*t = pi.
// (Resolved against a brute-force series-exponential propagator; the
// half-angle comes directly from the g/2 coupling strength.)
//
// evolve_swap returns the reduced AB state in the interaction picture (the
// frame rotating at omega): the free sigma_z phases are removed by a local
// rotation after the partial trace. In that frame the reduced state is the
// mixture q(t)|psi+><psi+| + (1-q(t))|phi+><phi+| for every omega; the local
// phases carry no entanglement, so negativity is omega-independent either
// way.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "entgeo/matlib.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo {

enum class Pauli { x, y, z, plus, minus };

/// The standard 2x2 matrices with the sigma_z|0> = +|0> convention;
/// sigma_± = (sigma_x ± i sigma_y)/2.
inline ComplexMatrix pauli(Pauli label) {
  switch (label) {
    case Pauli::x:     return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    case Pauli::y:     return ComplexMatrix::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}});
    case Pauli::z:     return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    case Pauli::plus:  return ComplexMatrix::from_rows({{0, 1}, {0, 0}});
    case Pauli::minus: return ComplexMatrix::from_rows({{0, 0}, {1, 0}});
  }
  throw std::invalid_argument("pauli: unknown label");
}

/// Level splitting omega, flip-flop coupling g, evolution time t.
struct SwapParams {
  double omega = 0.0;
  double g = 1.0;
  double t = 0.0;
};

/// Bit-flip probability q.
struct ChannelParams {
  double q = 0.0;
};

namespace detail {

inline void validate_swap(const SwapParams& p) {
  if (!std::isfinite(p.omega) || !std::isfinite(p.g) || !std::isfinite(p.t))
    throw std::invalid_argument("SwapParams: omega, g, t must be finite");
  if (p.t < 0.0)
    throw std::invalid_argument("SwapParams: t must be >= 0, got " + std::to_string(p.t));
}

}  // namespace detail

/// H^{mu nu} on one qubit pair (4x4, pair basis |mu nu> with mu most
/// significant). Block diagonal in the total-excitation sectors.
inline ComplexMatrix pair_hamiltonian(const SwapParams& p) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix sz = pauli(Pauli::z);
  const ComplexMatrix sp = pauli(Pauli::plus);
  const ComplexMatrix sm = pauli(Pauli::minus);
  return (0.5 * p.omega) * (kron(sz, i2) + kron(i2, sz)) +
         (0.5 * p.g) * (kron(sm, sp) + kron(sp, sm));
}

/// Embeds a two-qubit operator onto qubit positions (q1, q2) of an
/// n_qubits register; q1 maps to the more significant pair index.
inline ComplexMatrix embed_pair_operator(const ComplexMatrix& op, std::size_t q1, std::size_t q2,
                                         std::size_t n_qubits) {
  if (op.dim() != 4) throw std::invalid_argument("embed_pair_operator: operator must be 4x4");
  if (q1 >= n_qubits || q2 >= n_qubits || q1 == q2)
    throw std::invalid_argument("embed_pair_operator: invalid qubit positions");

  const std::size_t dim = std::size_t{1} << n_qubits;
  const auto bit = [n_qubits](std::size_t idx, std::size_t pos) {
    return (idx >> (n_qubits - 1 - pos)) & 1u;  // position 0 = most significant
  };
  const std::size_t rest_mask =
      (dim - 1) & ~((std::size_t{1} << (n_qubits - 1 - q1)) | (std::size_t{1} << (n_qubits - 1 - q2)));

  ComplexMatrix r(dim);
  for (std::size_t row = 0; row < dim; ++row)
    for (std::size_t col = 0; col < dim; ++col) {
      if ((row & rest_mask) != (col & rest_mask)) continue;
      const std::size_t m = 2 * bit(row, q1) + bit(row, q2);
      const std::size_t n = 2 * bit(col, q1) + bit(col, q2);
      r.at(row, col) = op.at(m, n);
    }
  return r;
}

/// H = H^{aA} + H^{bB} on the four-qubit register (a, b, A, B).
inline ComplexMatrix total_hamiltonian(const SwapParams& p) {
  const ComplexMatrix h_pair = pair_hamiltonian(p);
  return embed_pair_operator(h_pair, 0, 2, 4) + embed_pair_operator(h_pair, 1, 3, 4);
}

/// Evolves |phi+>_{ab} (x) |psi+>_{AB} under the double-swap Hamiltonian for
/// time t, traces out (a, b) and rotates the result into the interaction
/// picture. See the header comment for the q(t) = cos^2(g*t/2) map.
inline DensityMatrix evolve_swap(const SwapParams& p) {
  detail::validate_swap(p);

  const std::vector<Complex> psi0 =
      kron_vector(bell(Bell::phi_plus).amplitudes(), bell(Bell::psi_plus).amplitudes());

  const ComplexMatrix u = propagator(total_hamiltonian(p), p.t);
  const ComplexMatrix rho_full = u * outer(psi0) * adjoint(u);
  ComplexMatrix rho_ab = partial_trace(rho_full, {2, 2, 2, 2}, {2, 3});

  if (p.omega != 0.0) {
    // Undo the free sigma_z phases on A and B: conjugate by exp(+i H0 t).
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix sz = pauli(Pauli::z);
    const ComplexMatrix h0 = (0.5 * p.omega) * (kron(sz, i2) + kron(i2, sz));
    const ComplexMatrix rot = propagator(h0, -p.t);
    rho_ab = rot * rho_ab * adjoint(rot);
  }
  return DensityMatrix(std::move(rho_ab), {2, 2});
}

/// (1-q) rho + q (I (x) sigma_x) rho (I (x) sigma_x): bit flip on the second
/// qubit with probability q.
inline DensityMatrix bit_flip_channel(const DensityMatrix& rho, const ChannelParams& c) {
  if (!rho.is_two_qubit())
    throw std::invalid_argument("bit_flip_channel: requires dims [2,2]");
  if (!(c.q >= 0.0 && c.q <= 1.0))
    throw std::invalid_argument("bit_flip_channel: q must lie in [0,1], got " +
                                std::to_string(c.q));
  const ComplexMatrix flip = kron(ComplexMatrix::identity(2), pauli(Pauli::x));
  ComplexMatrix m = (1.0 - c.q) * rho.matrix() + c.q * (flip * rho.matrix() * flip);
  return DensityMatrix(std::move(m), {2, 2});
}

/// <psi+|rho|psi+>: the mixing parameter of the family.
inline double q_overlap(const DensityMatrix& rho) {
  if (!rho.is_two_qubit())
    throw std::invalid_argument("q_overlap: requires dims [2,2]");
  const auto psi = bell(Bell::psi_plus).amplitudes();
  return inner(psi, matvec(rho.matrix(), psi)).real();
}

}  // namespace entgeo
