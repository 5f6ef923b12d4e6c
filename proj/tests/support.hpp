#pragma once
// Shared test machinery: a deterministic RNG (so frozen expected values stay
// frozen), random state generators, and independent numerical oracles that
// deliberately avoid the library's eigensolver / tensor-index code paths:
//   - series matrix exponential (scaling and squaring),
//   - characteristic polynomial via Faddeev-LeVerrier,
//   - Durand-Kerner root finding + Newton refinement + inverse iteration
//     for an eigensolver-independent minimal eigenpair,
//   - direct index-sum partial trace / partial transpose.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entgeo/matlib.hpp"
#include "entgeo/qstate.hpp"

namespace testsupport {

using entgeo::Complex;
using entgeo::ComplexMatrix;

// ---------------------------------------------------------------------------
// Deterministic RNG. Distributions are hand-rolled on top of mt19937_64 so
// the stream does not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform on (0,1)
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
  }

  Complex cgaussian() { return Complex(gaussian(), gaussian()); }

 private:
  std::mt19937_64 eng_;
};

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.at(i, j) = rng.cgaussian();
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h.at(i, j) = 0.5 * (g.at(i, j) + std::conj(g.at(j, i)));
  return h;
}

// Ginibre-induced random two-qubit density matrix.
inline entgeo::DensityMatrix random_density2q(Rng& rng) {
  ComplexMatrix g(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g.at(i, j) = rng.cgaussian();
  ComplexMatrix rho = g * entgeo::adjoint(g);
  rho *= Complex(1.0 / entgeo::trace(rho).real());
  return entgeo::DensityMatrix(std::move(rho), {2, 2});
}

inline std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  double norm2 = 0.0;
  for (auto& a : v) {
    a = rng.cgaussian();
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : v) a *= inv;
  return v;
}

// |a> (x) |b> on two qubits.
inline std::vector<Complex> random_product_state(Rng& rng) {
  return entgeo::kron_vector(random_unit_vector(rng, 2), random_unit_vector(rng, 2));
}

// Uniform on the probability simplex (normalized exponentials).
inline std::array<double, 4> random_simplex4(Rng& rng) {
  std::array<double, 4> p{};
  double sum = 0.0;
  for (auto& w : p) {
    w = -std::log(rng.uniform());
    sum += w;
  }
  for (auto& w : p) w /= sum;
  return p;
}

// ---------------------------------------------------------------------------
// Oracle: exp(A) by scaling and squaring with a plain Taylor series.
inline ComplexMatrix expm_series(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  int squarings = 0;
  double norm = entgeo::max_abs(a) * static_cast<double>(n);
  ComplexMatrix b = a;
  while (norm > 0.5) {
    b *= Complex(0.5);
    norm *= 0.5;
    ++squarings;
  }

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 60; ++k) {
    term = term * b;
    term *= Complex(1.0 / k);
    result += term;
    if (entgeo::max_abs(term) < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// Oracle: exp(-i H t) through the series exponential.
inline ComplexMatrix propagator_series(const ComplexMatrix& h, double t) {
  ComplexMatrix a = h;
  a *= Complex(0.0, -t);
  return expm_series(a);
}

// ---------------------------------------------------------------------------
// Oracle: monic characteristic polynomial coefficients [1, c_{n-1}, ..., c_0]
// of det(lambda I - M) via Faddeev-LeVerrier.
inline std::vector<Complex> charpoly_leverrier(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Complex> coeffs(n + 1);
  coeffs[0] = 1.0;
  ComplexMatrix mk = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    const Complex c = -entgeo::trace(mk) / static_cast<double>(k);
    coeffs[k] = c;
    for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += c;
  }
  return coeffs;
}

inline Complex polyval(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc{};
  for (const Complex& c : coeffs) acc = acc * z + c;
  return acc;
}

// All roots of a monic polynomial by Durand-Kerner, then the minimal real
// part refined by Newton (Hermitian input: all roots real).
inline double min_root_hermitian(const std::vector<Complex>& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  std::vector<Complex> z(deg);
  const Complex seed(0.4, 0.9);
  z[0] = seed;
  for (std::size_t k = 1; k < deg; ++k) z[k] = z[k - 1] * seed;

  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) denom *= (z[k] - z[j]);
      const Complex delta = polyval(coeffs, z[k]) / denom;
      z[k] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }

  double min_root = z[0].real();
  for (const Complex& r : z) min_root = std::min(min_root, r.real());

  // Newton refinement on the (real) minimal root; it is simple for the
  // matrices this oracle sees.
  std::vector<Complex> deriv(coeffs.size() - 1);
  for (std::size_t k = 0; k + 1 < coeffs.size(); ++k)
    deriv[k] = coeffs[k] * static_cast<double>(coeffs.size() - 1 - k);
  double x = min_root;
  for (int it = 0; it < 50; ++it) {
    const double p = polyval(coeffs, x).real();
    const double dp = polyval(deriv, x).real();
    if (dp == 0.0) break;
    const double step = p / dp;
    x -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return x;
}

// Complex linear solve by Gaussian elimination with partial pivoting.
inline std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b) {
  const std::size_t n = a.dim();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a.at(r, col)) > std::abs(a.at(pivot, col))) pivot = r;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    const Complex diag = a.at(col, col);
    if (std::abs(diag) == 0.0) throw std::runtime_error("solve_linear: singular matrix");
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a.at(r, col) / diag;
      if (f == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
    x[i] = s / a.at(i, i);
  }
  return x;
}

// Eigensolver-independent minimal eigenpair of a Hermitian matrix:
// characteristic polynomial -> minimal root -> inverse iteration.
inline std::pair<double, std::vector<Complex>> min_eigenpair_oracle(const ComplexMatrix& m) {
  const double lambda = min_root_hermitian(charpoly_leverrier(m));
  const std::size_t n = m.dim();

  ComplexMatrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= Complex(lambda + 1e-11);

  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0 + static_cast<double>(i), 0.7 - 0.3 * static_cast<double>(i));
  for (int iter = 0; iter < 4; ++iter) {
    v = solve_linear(shifted, v);
    double norm2 = 0.0;
    for (const Complex& a : v) norm2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& a : v) a *= inv;
  }
  // Rayleigh quotient as the refined eigenvalue.
  const Complex rq = entgeo::inner(v, entgeo::matvec(m, v));
  return {rq.real(), v};
}

// ---------------------------------------------------------------------------
// Oracle: partial trace over the complement of `keep` by a direct sum over
// explicitly decomposed multi-indices (independent of matlib's stride logic).
inline ComplexMatrix partial_trace_direct(const ComplexMatrix& m,
                                          const std::vector<std::size_t>& dims,
                                          const std::vector<std::size_t>& keep) {
  const std::size_t ns = dims.size();
  const auto decompose = [&](std::size_t flat) {
    std::vector<std::size_t> digits(ns);
    for (std::size_t s = ns; s-- > 0;) {
      digits[s] = flat % dims[s];
      flat /= dims[s];
    }
    return digits;
  };

  std::size_t keep_dim = 1;
  for (std::size_t s : keep) keep_dim *= dims[s];
  ComplexMatrix out(keep_dim);

  for (std::size_t row = 0; row < m.dim(); ++row) {
    const auto rd = decompose(row);
    for (std::size_t col = 0; col < m.dim(); ++col) {
      const auto cd = decompose(col);
      bool traced_match = true;
      for (std::size_t s = 0; s < ns; ++s) {
        bool kept = false;
        for (std::size_t k : keep) kept |= (k == s);
        if (!kept && rd[s] != cd[s]) {
          traced_match = false;
          break;
        }
      }
      if (!traced_match) continue;
      std::size_t oi = 0, oj = 0;
      for (std::size_t k : keep) {
        oi = oi * dims[k] + rd[k];
        oj = oj * dims[k] + cd[k];
      }
      out.at(oi, oj) += m.at(row, col);
    }
  }
  return out;
}

// Oracle: partial transpose over the second factor by explicit entry swap.
inline ComplexMatrix partial_transpose_direct(const ComplexMatrix& m, std::size_t d0,
                                              std::size_t d1) {
  ComplexMatrix out(m.dim());
  for (std::size_t i0 = 0; i0 < d0; ++i0)
    for (std::size_t i1 = 0; i1 < d1; ++i1)
      for (std::size_t j0 = 0; j0 < d0; ++j0)
        for (std::size_t j1 = 0; j1 < d1; ++j1)
          out.at(i0 * d1 + j1, j0 * d1 + i1) = m.at(i0 * d1 + i1, j0 * d1 + j1);
  return out;
}

// ---------------------------------------------------------------------------
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return entgeo::max_abs(a - b);
}

// (1/2) * sum |eigenvalues(a - b)|.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto eig = entgeo::hermitian_eig(a - b, 1e-8);
  double s = 0.0;
  for (double lam : eig.eigenvalues) s += std::abs(lam);
  return 0.5 * s;
}

inline double trace_distance(const entgeo::DensityMatrix& a, const entgeo::DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

}  // namespace testsupport
