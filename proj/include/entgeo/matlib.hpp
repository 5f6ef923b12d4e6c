#pragma once
// Dense complex linear algebra sized for 2-, 4- and 16-dimensional Hilbert
// spaces: Hermitian eigendecomposition (cyclic Jacobi), unitary propagators,
// tensor products, partial trace and partial transpose.
//
// Subsystem convention used everywhere in this library: subsystem 0 is the
// leftmost tensor factor and the most significant digit of the
// computational-basis index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace entgeo {

using Complex = std::complex<double>;

/// Dense square matrix of complex entries with bounds-checked access.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  /// Builds a matrix from row lists; all rows must have the same length as
  /// the row count.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t n = rows.size();
    ComplexMatrix m(n);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n)
        throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows (expected " +
                                    std::to_string(n) + " entries, got " +
                                    std::to_string(row.size()) + ")");
      std::size_t j = 0;
      for (const Complex& v : row) m.at(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t dim() const { return dim_; }

  Complex& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return data_[i * dim_ + j];
  }
  const Complex& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_[i * dim_ + j];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    check_same_dim(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    check_same_dim(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s); }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same_dim(b);
    const std::size_t n = a.dim_;
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a.data_[i * n + k];
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) c.data_[i * n + j] += aik * b.data_[k * n + j];
      }
    return c;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_)
      throw std::out_of_range("ComplexMatrix: index (" + std::to_string(i) + "," +
                              std::to_string(j) + ") out of range for dim " +
                              std::to_string(dim_));
  }
  void check_same_dim(const ComplexMatrix& rhs) const {
    if (dim_ != rhs.dim_)
      throw std::invalid_argument("ComplexMatrix: dimension mismatch (" + std::to_string(dim_) +
                                  " vs " + std::to_string(rhs.dim_) + ")");
  }

  std::size_t dim_;
  std::vector<Complex> data_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.at(i, j) = std::conj(m.at(j, i));
  return r;
}

inline Complex trace(const ComplexMatrix& m) {
  Complex t{};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m.at(i, i);
  return t;
}

/// Entrywise max norm.
inline double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r = std::max(r, std::abs(m.at(i, j)));
  return r;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s += std::norm(m.at(i, j));
  return std::sqrt(s);
}

/// max |M - M^dagger|, zero for exactly Hermitian input.
inline double hermiticity_defect(const ComplexMatrix& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      r = std::max(r, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
  return r;
}

inline std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& v) {
  if (v.size() != m.dim())
    throw std::invalid_argument("matvec: vector length " + std::to_string(v.size()) +
                                " does not match matrix dim " + std::to_string(m.dim()));
  std::vector<Complex> r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < m.dim(); ++j) s += m.at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

/// <u|v> with the left argument conjugated.
inline Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: length mismatch");
  Complex s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

/// |v><v|.
inline ComplexMatrix outer(const std::vector<Complex>& v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m.at(i, j) = v[i] * std::conj(v[j]);
  return m;
}

inline std::vector<Complex> kron_vector(const std::vector<Complex>& a,
                                        const std::vector<Complex>& b) {
  std::vector<Complex> r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

/// Eigensystem of a Hermitian matrix. Eigenvalues ascending, eigenvectors
/// stored as the columns of `vectors` in the same order.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix vectors;

  std::vector<Complex> eigenvector(std::size_t k) const {
    std::vector<Complex> v(vectors.dim());
    for (std::size_t i = 0; i < vectors.dim(); ++i) v[i] = vectors.at(i, k);
    return v;
  }
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Convergence: off-diagonal Frobenius mass below 1e-14 * ||M||_F.
/// Rejects input whose Hermiticity defect exceeds `tol`.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol = 1e-10) {
  const double defect = hermiticity_defect(m);
  if (!(defect < tol)) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian within tol " << tol
       << " (max |M - M^dagger| = " << defect << ")";
    throw std::invalid_argument(os.str());
  }

  const std::size_t n = m.dim();
  // Symmetrize so the iteration works on an exactly Hermitian matrix.
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double fro = frobenius_norm(a);

  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off2 += std::norm(a.at(i, j));
    if (std::sqrt(off2) <= 1e-14 * fro) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex u = apq / r;  // e^{i arg(apq)}

        const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns: B = A * G with G = [[c, s*u], [-s*conj(u), c]] on (p,q).
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = c * aip - s * std::conj(u) * aiq;
          a.at(i, q) = s * u * aip + c * aiq;
        }
        // Rows: A' = G^dagger * B.
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a.at(p, j), aqj = a.at(q, j);
          a.at(p, j) = c * apj - s * u * aqj;
          a.at(q, j) = s * std::conj(u) * apj + c * aqj;
        }
        // Accumulate eigenvectors.
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = c * vip - s * std::conj(u) * viq;
          v.at(i, q) = s * u * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a.at(i, i).real() < a.at(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a.at(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
  }
  return out;
}

/// U = exp(-i H t) via eigendecomposition; exact unitarity up to rounding.
inline ComplexMatrix propagator(const ComplexMatrix& h, double t, double tol = 1e-10) {
  const EigenDecomposition eig = hermitian_eig(h, tol);
  const std::size_t n = h.dim();
  std::vector<Complex> phase(n);
  for (std::size_t k = 0; k < n; ++k)
    phase[k] = std::exp(Complex(0.0, -eig.eigenvalues[k] * t));
  ComplexMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k)
        s += eig.vectors.at(i, k) * phase[k] * std::conj(eig.vectors.at(j, k));
      u.at(i, j) = s;
    }
  return u;
}

/// Kronecker product; the left factor indexes the most significant subsystem.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ja = 0; ja < na; ++ja) {
      const Complex f = a.at(ia, ja);
      if (f == Complex{}) continue;
      for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t jb = 0; jb < nb; ++jb)
          r.at(ia * nb + ib, ja * nb + jb) = f * b.at(ib, jb);
    }
  return r;
}

namespace detail {

inline void check_dims_product(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                               const char* where) {
  std::size_t prod = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument(std::string(where) + ": zero subsystem dimension");
    prod *= d;
  }
  if (prod != m.dim())
    throw std::invalid_argument(std::string(where) + ": subsystem dims product " +
                                std::to_string(prod) + " does not match matrix dim " +
                                std::to_string(m.dim()));
}

// Offsets of every multi-index combination over `subset` of subsystems,
// with subsystem 0 most significant.
inline std::vector<std::size_t> subset_offsets(const std::vector<std::size_t>& dims,
                                               const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;) stride[s - 1] = stride[s] * dims[s];

  std::size_t count = 1;
  for (std::size_t s : subset) count *= dims[s];

  std::vector<std::size_t> offsets(count, 0);
  std::size_t repeat = count;
  for (std::size_t s : subset) {
    repeat /= dims[s];
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t digit = (i / repeat) % dims[s];
      offsets[i] += digit * stride[s];
    }
  }
  return offsets;
}

}  // namespace detail

/// Traces out every subsystem not listed in `keep`; kept subsystems retain
/// their original relative order. Trace-preserving.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
  detail::check_dims_product(m, dims, "partial_trace");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<std::size_t> kept(keep);
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate subsystem index in keep set");
  if (kept.back() >= dims.size())
    throw std::invalid_argument("partial_trace: keep index " + std::to_string(kept.back()) +
                                " out of range for " + std::to_string(dims.size()) +
                                " subsystems");

  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

  const auto keep_off = detail::subset_offsets(dims, kept);
  const auto trace_off = detail::subset_offsets(dims, traced);

  ComplexMatrix r(keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i)
    for (std::size_t j = 0; j < keep_off.size(); ++j) {
      Complex s{};
      for (std::size_t k : trace_off) s += m.at(keep_off[i] + k, keep_off[j] + k);
      r.at(i, j) = s;
    }
  return r;
}

/// Partial transpose of a bipartite operator over one subsystem.
/// Involutive, trace- and Hermiticity-preserving.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                       const std::vector<std::size_t>& dims,
                                       std::size_t subsystem) {
  if (dims.size() != 2)
    throw std::invalid_argument("partial_transpose: expected exactly two subsystem dims");
  detail::check_dims_product(m, dims, "partial_transpose");
  if (subsystem > 1)
    throw std::invalid_argument("partial_transpose: subsystem index must be 0 or 1");

  const std::size_t d0 = dims[0], d1 = dims[1];
  ComplexMatrix r(m.dim());
  for (std::size_t i0 = 0; i0 < d0; ++i0)
    for (std::size_t i1 = 0; i1 < d1; ++i1)
      for (std::size_t j0 = 0; j0 < d0; ++j0)
        for (std::size_t j1 = 0; j1 < d1; ++j1) {
          const Complex val = m.at(i0 * d1 + i1, j0 * d1 + j1);
          if (subsystem == 1)
            r.at(i0 * d1 + j1, j0 * d1 + i1) = val;
          else
            r.at(j0 * d1 + i1, i0 * d1 + j1) = val;
        }
  return r;
}

}  // namespace entgeo
