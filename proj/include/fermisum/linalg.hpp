#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "fermisum/errors.hpp"
#include "fermisum/util.hpp"

namespace fermisum::linalg {

/// Deviation threshold below which a matrix is classified as unitary.
inline constexpr double kUnitaryTol = 1e-10;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix scalar(Complex value) {
    ComplexMatrix m(1, 1);
    m(0, 0) = value;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw ArgumentError("matrix product: inner dimensions disagree");
    ComplexMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix r = a;
    for (Complex& z : r.data_) z *= s;
    return r;
  }

 private:
  static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw ArgumentError("matrix sum: shapes disagree");
  }

  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

}  // namespace detail

/// Determinant by pivoted Gaussian elimination.
inline Complex det(const ComplexMatrix& m) {
  if (!m.square()) throw ArgumentError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Complex(1.0, 0.0);
  ComplexMatrix a = m;
  Complex result(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(a(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return Complex(0.0, 0.0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      result = -result;
    }
    result *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return result;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
inline ComplexMatrix inverse(const ComplexMatrix& m) {
  if (!m.square()) throw ArgumentError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(a(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) throw SingularMatrixError("inverse: singular matrix");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    const Complex p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Measured unitarity: deviation is computed, never assumed.
struct UnitaryCheck {
  ComplexMatrix matrix;
  double deviation;  // max-norm of U†U − I
  bool unitary() const { return deviation <= kUnitaryTol; }
};

inline UnitaryCheck check_unitary(const ComplexMatrix& u) {
  if (!u.square()) throw ArgumentError("check_unitary: matrix is not square");
  const ComplexMatrix g = u.adjoint() * u - ComplexMatrix::identity(u.rows());
  return UnitaryCheck{u, g.max_abs()};
}

struct UnitaryEigen {
  std::vector<double> phases;  // ascending, in [0, 2pi); eigenvalue j is e^{-i phase_j}
  ComplexMatrix vectors;       // unitary; column j pairs with phases[j]
};

/// Eigenphases of a unitary matrix under the convention eigenvalue = e^{-i theta},
/// theta in [0, 2pi). Uses a complex Schur decomposition: for unitary input the
/// Schur factor is diagonal up to roundoff and the Schur basis is itself unitary.
inline UnitaryEigen eig_unitary_full(const ComplexMatrix& u) {
  const UnitaryCheck chk = check_unitary(u);
  if (!chk.unitary())
    throw ClassificationError("eig_unitary: input not unitary (deviation " +
                              std::to_string(chk.deviation) + ")");
  const std::size_t n = u.rows();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(detail::to_eigen(u));
  if (schur.info() != Eigen::Success)
    throw Error("eig_unitary: Schur decomposition failed");
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& q = schur.matrixU();

  std::vector<std::size_t> order(n);
  std::vector<double> phases(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex lambda = t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    double theta = -std::arg(lambda);  // lambda = e^{-i theta}
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    if (theta >= 2.0 * std::numbers::pi) theta -= 2.0 * std::numbers::pi;
    phases[j] = theta;
    order[j] = j;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });

  UnitaryEigen out;
  out.phases.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.phases[j] = phases[order[j]];
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(order[j]));
  }
  return out;
}

inline std::vector<double> eig_unitary(const ComplexMatrix& u) {
  return eig_unitary_full(u).phases;
}

namespace detail {

// Modified Gram-Schmidt, two passes; the positive-real-diagonal convention
// makes the QR factor of a Ginibre sample exactly Haar distributed.
inline void orthonormalize_columns(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(a(i, k)) * a(i, j);
        for (std::size_t i = 0; i < n; ++i) a(i, j) -= proj * a(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(a(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) a(i, j) /= norm;
  }
}

inline ComplexMatrix haar_unitary_rng(std::size_t n, CounterRng& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = Complex(rng.next_normal(), rng.next_normal());
  orthonormalize_columns(a);
  return a;
}

inline ComplexMatrix special_orthogonal_rng(std::size_t n, CounterRng& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(rng.next_normal(), 0.0);
  orthonormalize_columns(a);
  if (det(a).real() < 0.0)
    for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -a(i, n - 1);
  return a;
}

}  // namespace detail

/// Haar-distributed U(n) sample, deterministic in the seed.
inline ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("haar_unitary: n must be positive");
  CounterRng rng(seed);
  return detail::haar_unitary_rng(n, rng);
}

/// Haar-distributed SO(n) sample (real entries, determinant +1).
inline ComplexMatrix random_special_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("random_special_orthogonal: n must be positive");
  CounterRng rng(seed);
  return detail::special_orthogonal_rng(n, rng);
}

}  // namespace fermisum::linalg
