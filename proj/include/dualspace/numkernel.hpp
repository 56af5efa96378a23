#pragma once

// Dense real/complex matrix primitives shared by the rest of the library.
//
// Every matrix is stored with complex entries and carries a Field tag. Real
// matrices have identically zero imaginary parts; operations that depend on
// the field (SVD, eigen-decompositions, the exponential) dispatch to the real
// Eigen path so real inputs produce real factors.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualspace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Input outside the mathematical domain of an operation (not space-like,
// rank-deficient, unsupported family, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Computation lost the accuracy it promises (singular Gram-Schmidt step,
// coset too close to the boundary for double precision, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Field { Real, Complex };

const char* to_string(Field field);

struct Tolerances {
  static constexpr double kStructural = 1e-10;
  static constexpr double kReconstruction = 1e-12;
  static constexpr double kGramSchmidt = 1e-12;
};

class Matrix {
 public:
  Matrix() = default;
  // Throws std::invalid_argument on non-finite entries. A Real matrix drops
  // any imaginary part of `data`.
  Matrix(CMatrix data, Field field);
  explicit Matrix(const RMatrix& data);

  static Matrix identity(Eigen::Index n, Field field);
  static Matrix zero(Eigen::Index rows, Eigen::Index cols, Field field);

  Eigen::Index rows() const { return data_.rows(); }
  Eigen::Index cols() const { return data_.cols(); }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::Real; }
  bool is_square() const { return rows() == cols(); }

  const CMatrix& data() const { return data_; }
  RMatrix real() const { return data_.real(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  Matrix adjoint() const { return Matrix(data_.adjoint(), field_); }
  Matrix as_complex() const { return Matrix(data_, Field::Complex); }
  Matrix block(Eigen::Index r, Eigen::Index c, Eigen::Index nr, Eigen::Index nc) const {
    return Matrix(data_.block(r, c, nr, nc), field_);
  }

  double norm() const { return data_.norm(); }
  double max_abs() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a) { return Matrix(s * a.data_, a.field_); }
  Matrix operator-() const { return Matrix(-data_, field_); }

 private:
  CMatrix data_;
  Field field_ = Field::Real;
};

// Square block partition with a strictly lower block-triangular zero pattern:
// the shape of the parabolic subgroup {(U W; 0 V)}.
class BlockShape {
 public:
  BlockShape(std::vector<Eigen::Index> row_blocks, std::vector<Eigen::Index> col_blocks,
             std::vector<std::vector<bool>> zero_pattern);

  // All blocks strictly below the block diagonal are zero.
  static BlockShape parabolic(std::vector<Eigen::Index> blocks);

  const std::vector<Eigen::Index>& row_blocks() const { return row_blocks_; }
  const std::vector<Eigen::Index>& col_blocks() const { return col_blocks_; }
  const std::vector<std::vector<bool>>& zero_pattern() const { return zero_pattern_; }
  Eigen::Index size() const;

  // Largest magnitude found in a block that the pattern forces to zero.
  double violation(const Matrix& m) const;
  bool conforms(const Matrix& m, double tol = Tolerances::kStructural) const {
    return violation(m) <= tol;
  }

 private:
  std::vector<Eigen::Index> row_blocks_;
  std::vector<Eigen::Index> col_blocks_;
  std::vector<std::vector<bool>> zero_pattern_;
};

Matrix expm(const Matrix& x);

struct Svd {
  Matrix u;        // rows x k, orthonormal columns
  RVector s;       // k = min(rows, cols), descending, nonnegative
  Matrix v;        // cols x k, orthonormal columns
};

Svd svd(const Matrix& y);

struct BlockQr {
  Matrix q;     // in the compact group: Q^H Q = I
  Matrix rinv;  // Q = A * rinv; rinv^{-1} is upper triangular with positive diagonal
};

// Modified Gram-Schmidt, left to right, with one re-orthogonalization pass.
// The triangular factor is in particular block upper-triangular for `shape`.
// Throws NumericalError when a column is dependent on the previous ones.
BlockQr block_qr(const Matrix& a, const BlockShape& shape,
                 double singular_tol = Tolerances::kGramSchmidt);

bool is_positive_definite(const Matrix& s, double tol = Tolerances::kStructural);

// (S + S^H) / 2, exactly Hermitian in floating point.
Matrix hermitian_part(const Matrix& s);

// Frobenius distance between the orthogonal projectors onto the column spans.
double projector_distance(const Matrix& l1, const Matrix& l2);

// Orthonormal basis of the column span (thin SVD left factor).
Matrix orthonormal_basis(const Matrix& l);

// Smallest over largest singular value; 0 for the zero matrix.
double rank_ratio(const Matrix& l);

// Hermitian square root of the inverse of a positive definite matrix.
Matrix inverse_sqrt_pd(const Matrix& s);

// Square matrix whose first k columns are `u` (orthonormal columns); the
// remaining columns complete it to an orthogonal/unitary matrix.
Matrix complete_basis(const Matrix& u);

}  // namespace dualspace
