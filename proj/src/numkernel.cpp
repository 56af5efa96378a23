#include "dualspace/numkernel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace dualspace {

const char* to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

Matrix::Matrix(CMatrix data, Field field) : data_(std::move(data)), field_(field) {
  if (!data_.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
  if (field_ == Field::Real) {
    data_.imag().setZero();
  }
}

Matrix::Matrix(const RMatrix& data) : Matrix(data.cast<Complex>(), Field::Real) {}

Matrix Matrix::identity(Eigen::Index n, Field field) {
  return Matrix(CMatrix::Identity(n, n), field);
}

Matrix Matrix::zero(Eigen::Index rows, Eigen::Index cols, Field field) {
  return Matrix(CMatrix::Zero(rows, cols), field);
}

double Matrix::max_abs() const {
  return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) {
    throw std::invalid_argument("field mismatch between matrix operands");
  }
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("dimension mismatch in matrix product");
  }
  return Matrix(a.data_ * b.data_, a.field_);
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("dimension mismatch in matrix sum");
  }
  return Matrix(a.data_ + b.data_, a.field_);
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("dimension mismatch in matrix difference");
  }
  return Matrix(a.data_ - b.data_, a.field_);
}

// ---------------------------------------------------------------------------

BlockShape::BlockShape(std::vector<Eigen::Index> row_blocks, std::vector<Eigen::Index> col_blocks,
                       std::vector<std::vector<bool>> zero_pattern)
    : row_blocks_(std::move(row_blocks)),
      col_blocks_(std::move(col_blocks)),
      zero_pattern_(std::move(zero_pattern)) {
  if (row_blocks_.empty() || row_blocks_.size() != col_blocks_.size()) {
    throw std::invalid_argument("block shape needs matching, non-empty row and column blocks");
  }
  Eigen::Index rows = 0, cols = 0;
  for (auto b : row_blocks_) {
    if (b <= 0) throw std::invalid_argument("block sizes must be positive");
    rows += b;
  }
  for (auto b : col_blocks_) {
    if (b <= 0) throw std::invalid_argument("block sizes must be positive");
    cols += b;
  }
  if (rows != cols) {
    throw std::invalid_argument("block sizes must sum to the same matrix dimension");
  }
  const auto nb = row_blocks_.size();
  if (zero_pattern_.size() != nb) {
    throw std::invalid_argument("zero pattern has the wrong number of block rows");
  }
  for (std::size_t i = 0; i < nb; ++i) {
    if (zero_pattern_[i].size() != nb) {
      throw std::invalid_argument("zero pattern has the wrong number of block columns");
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (zero_pattern_[i][j] && j >= i) {
        throw std::invalid_argument("zero pattern must be strictly lower block-triangular");
      }
    }
  }
}

BlockShape BlockShape::parabolic(std::vector<Eigen::Index> blocks) {
  const auto nb = blocks.size();
  std::vector<std::vector<bool>> pattern(nb, std::vector<bool>(nb, false));
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < i; ++j) pattern[i][j] = true;
  }
  return BlockShape(blocks, blocks, std::move(pattern));
}

Eigen::Index BlockShape::size() const {
  Eigen::Index s = 0;
  for (auto b : row_blocks_) s += b;
  return s;
}

double BlockShape::violation(const Matrix& m) const {
  if (m.rows() != size() || m.cols() != size()) {
    throw std::invalid_argument("matrix does not match block shape");
  }
  double worst = 0.0;
  Eigen::Index r0 = 0;
  for (std::size_t i = 0; i < row_blocks_.size(); ++i) {
    Eigen::Index c0 = 0;
    for (std::size_t j = 0; j < col_blocks_.size(); ++j) {
      if (zero_pattern_[i][j]) {
        worst = std::max(worst, m.block(r0, c0, row_blocks_[i], col_blocks_[j]).max_abs());
      }
      c0 += col_blocks_[j];
    }
    r0 += row_blocks_[i];
  }
  return worst;
}

// ---------------------------------------------------------------------------

Matrix expm(const Matrix& x) {
  if (!x.is_square()) {
    throw std::invalid_argument("expm requires a square matrix");
  }
  if (x.is_real()) {
    RMatrix r = x.real();
    return Matrix(RMatrix(r.exp()));
  }
  CMatrix c = x.data();
  return Matrix(CMatrix(c.exp()), Field::Complex);
}

Svd svd(const Matrix& y) {
  if (y.is_real()) {
    Eigen::JacobiSVD<RMatrix> solver(y.real(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {Matrix(RMatrix(solver.matrixU())), solver.singularValues(),
            Matrix(RMatrix(solver.matrixV()))};
  }
  Eigen::JacobiSVD<CMatrix> solver(y.data(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {Matrix(solver.matrixU(), Field::Complex), solver.singularValues(),
          Matrix(solver.matrixV(), Field::Complex)};
}

BlockQr block_qr(const Matrix& a, const BlockShape& shape, double singular_tol) {
  if (!a.is_square()) {
    throw std::invalid_argument("block_qr requires a square matrix");
  }
  if (shape.size() != a.rows()) {
    throw std::invalid_argument("block shape does not match matrix size");
  }
  const Eigen::Index n = a.rows();
  const CMatrix& A = a.data();
  CMatrix q = CMatrix::Zero(n, n);
  CMatrix r = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXcd v = A.col(j);
    const double col_norm = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex c = q.col(i).dot(v);  // conjugates q
        r(i, j) += c;
        v -= c * q.col(i);
      }
    }
    const double len = v.norm();
    if (col_norm == 0.0 || len <= singular_tol * col_norm) {
      throw NumericalError("block_qr: matrix is singular (column " + std::to_string(j) +
                           " depends on the previous ones)");
    }
    r(j, j) = len;
    q.col(j) = v / len;
  }
  CMatrix rinv = r.triangularView<Eigen::Upper>().solve(CMatrix::Identity(n, n));
  return {Matrix(q, a.field()), Matrix(rinv, a.field())};
}

bool is_positive_definite(const Matrix& s, double tol) {
  if (!s.is_square()) {
    throw std::invalid_argument("is_positive_definite requires a square matrix");
  }
  if ((s - s.adjoint()).max_abs() > tol) {
    throw DomainError("is_positive_definite: matrix is not Hermitian within tolerance");
  }
  if (s.is_real()) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(s.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > tol;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.data(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol;
}

Matrix hermitian_part(const Matrix& s) {
  if (!s.is_square()) {
    throw std::invalid_argument("hermitian_part requires a square matrix");
  }
  return Matrix(CMatrix(0.5 * (s.data() + s.data().adjoint())), s.field());
}

double rank_ratio(const Matrix& l) {
  const RVector s = svd(l).s;
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

Matrix orthonormal_basis(const Matrix& l) {
  Svd d = svd(l);
  if (d.s.size() < l.cols() || d.s(0) == 0.0 ||
      d.s(d.s.size() - 1) <= Tolerances::kStructural * d.s(0)) {
    throw DomainError("subspace representative is rank-deficient");
  }
  return d.u;
}

double projector_distance(const Matrix& l1, const Matrix& l2) {
  if (l1.rows() != l2.rows() || l1.cols() != l2.cols()) {
    throw std::invalid_argument("projector_distance: shape mismatch");
  }
  const Matrix q1 = orthonormal_basis(l1);
  const Matrix q2 = orthonormal_basis(l2);
  const CMatrix p1 = q1.data() * q1.data().adjoint();
  const CMatrix p2 = q2.data() * q2.data().adjoint();
  return (p1 - p2).norm();
}

Matrix inverse_sqrt_pd(const Matrix& s) {
  if (s.is_real()) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(s.real());
    if (es.eigenvalues().minCoeff() <= 0.0) {
      throw DomainError("inverse_sqrt_pd: matrix is not positive definite");
    }
    return Matrix(RMatrix(es.operatorInverseSqrt()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.data());
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw DomainError("inverse_sqrt_pd: matrix is not positive definite");
  }
  return Matrix(CMatrix(es.operatorInverseSqrt()), Field::Complex);
}

Matrix complete_basis(const Matrix& u) {
  const Eigen::Index m = u.rows();
  const Eigen::Index k = u.cols();
  if (k > m) {
    throw std::invalid_argument("complete_basis: more columns than rows");
  }
  if (u.is_real()) {
    RMatrix full(m, m);
    full.leftCols(k) = u.real();
    if (k < m) {
      Eigen::HouseholderQR<RMatrix> qr(u.real());
      RMatrix qfull = qr.householderQ() * RMatrix::Identity(m, m);
      full.rightCols(m - k) = qfull.rightCols(m - k);
    }
    return Matrix(full);
  }
  CMatrix full(m, m);
  full.leftCols(k) = u.data();
  if (k < m) {
    Eigen::HouseholderQR<CMatrix> qr(u.data());
    CMatrix qfull = qr.householderQ() * CMatrix::Identity(m, m);
    full.rightCols(m - k) = qfull.rightCols(m - k);
  }
  return Matrix(full, Field::Complex);
}

}  // namespace dualspace
