#include "dualspace/numkernel.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dualspace;

namespace {

// Taylor series with scaling and squaring in long double.
Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> taylor_expm(
    const CMatrix& x) {
  using LMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  LMat a = x.cast<std::complex<long double>>();
  int squarings = 0;
  long double norm = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) norm = std::max(norm, std::abs(a.data()[i]));
  while (norm * a.rows() > 0.25L) {
    a /= 2.0L;
    norm /= 2.0L;
    ++squarings;
  }
  LMat sum = LMat::Identity(a.rows(), a.cols());
  LMat term = sum;
  for (int k = 1; k < 40; ++k) {
    term = term * a / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, bool complex) {
  std::normal_distribution<double> nd;
  CMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = Complex(nd(rng), complex ? nd(rng) : 0.0);
  }
  return a;
}

// Projector onto the column span, computed from the normal equations.
CMatrix projector(const CMatrix& a) {
  return a * (a.adjoint() * a).inverse() * a.adjoint();
}

}  // namespace

TEST_CASE("Matrix keeps its field and rejects bad input") {
  CMatrix c(1, 1);
  c(0, 0) = Complex(1.0, 2.0);
  const Matrix r(c, Field::Real);
  CHECK(r(0, 0) == Complex(1.0, 0.0));
  CHECK(r.is_real());
  CHECK_THROWS_AS(Matrix(CMatrix::Constant(1, 1, Complex(NAN, 0.0)), Field::Real),
                  std::invalid_argument);
  const Matrix cm(c, Field::Complex);
  CHECK_THROWS_AS(r + cm, std::invalid_argument);
  CHECK_THROWS_AS(Matrix::identity(2, Field::Real) * Matrix::identity(3, Field::Real),
                  std::invalid_argument);
}

TEST_CASE("expm of a plane rotation generator") {
  const double t = 0.7;
  RMatrix g(2, 2);
  g << 0, t, -t, 0;
  const RMatrix e = expm(Matrix(g)).real();
  CHECK(e(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-15));
  CHECK(e(0, 1) == doctest::Approx(std::sin(t)).epsilon(1e-15));
  CHECK(e(1, 0) == doctest::Approx(-std::sin(t)).epsilon(1e-15));
}

TEST_CASE("expm of a boost generator") {
  const double t = 2.5;
  RMatrix g(2, 2);
  g << 0, t, t, 0;
  const RMatrix e = expm(Matrix(g)).real();
  CHECK(e(0, 0) == doctest::Approx(std::cosh(t)).epsilon(1e-14));
  CHECK(e(1, 0) == doctest::Approx(std::sinh(t)).epsilon(1e-14));
}

TEST_CASE("expm agrees with a long double Taylor oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const bool complex = trial % 2 == 1;
    const int n = 2 + trial % 4;
    const CMatrix x = random_matrix(rng, n, n, complex);
    const Matrix e = expm(Matrix(x, complex ? Field::Complex : Field::Real));
    const CMatrix oracle = taylor_expm(x).cast<Complex>();
    CHECK((e.data() - oracle).norm() <= 1e-12 * oracle.norm());
    CHECK(e.is_real() == !complex);
  }
}

TEST_CASE("expm of the zero matrix is the identity") {
  CHECK((expm(Matrix::zero(3, 3, Field::Real)).data() - CMatrix::Identity(3, 3)).norm() == 0.0);
  CHECK_THROWS_AS(expm(Matrix::zero(2, 3, Field::Real)), std::invalid_argument);
}

TEST_CASE("svd of the diagonal example") {
  RMatrix y = RMatrix::Zero(3, 2);
  y(0, 0) = 0.6;
  y(1, 1) = 0.2;
  const Svd d = svd(Matrix(y));
  REQUIRE(d.s.size() == 2);
  CHECK(d.s(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(d.s(1) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("svd singular values match the characteristic polynomial of Y^T Y") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const CMatrix y = random_matrix(rng, 4, 2, trial % 2 == 1);
    const CMatrix g = y.adjoint() * y;
    const double tr = g.trace().real();
    const double det = g.determinant().real();
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    const double s0 = std::sqrt((tr + disc) / 2.0), s1 = std::sqrt((tr - disc) / 2.0);
    const Svd d = svd(Matrix(y, trial % 2 == 1 ? Field::Complex : Field::Real));
    CHECK(d.s(0) == doctest::Approx(s0).epsilon(1e-12));
    CHECK(d.s(1) == doctest::Approx(s1).epsilon(1e-10));
    const CMatrix rebuilt = d.u.data() * d.s.cast<Complex>().asDiagonal() * d.v.data().adjoint();
    CHECK((rebuilt - y).norm() <= 1e-13 * y.norm());
  }
}

TEST_CASE("block_qr matches the Cholesky factor of A^H A") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const bool complex = trial % 2 == 0;
    const int n = 2 + trial % 3, m = 1 + trial % 4;
    const CMatrix a = random_matrix(rng, n + m, n + m, complex);
    const Field field = complex ? Field::Complex : Field::Real;
    const BlockShape shape = BlockShape::parabolic({n, m});
    const BlockQr qr = block_qr(Matrix(a, field), shape);

    Eigen::LLT<CMatrix> llt(a.adjoint() * a);
    const CMatrix r_oracle = llt.matrixU();
    const CMatrix q_oracle = a * r_oracle.inverse();
    CHECK((qr.q.data() - q_oracle).norm() <= 1e-10);
    CHECK((qr.q.data().adjoint() * qr.q.data() - CMatrix::Identity(n + m, n + m)).norm() <=
          1e-13);
    const Matrix r = Matrix(CMatrix(qr.rinv.data().inverse()), field);
    CHECK(shape.conforms(r));
    for (int i = 0; i < n + m; ++i) CHECK(r(i, i).real() > 0.0);
  }
}

TEST_CASE("block_qr of the identity is the identity") {
  const BlockQr qr = block_qr(Matrix::identity(4, Field::Real), BlockShape::parabolic({2, 2}));
  CHECK((qr.q.data() - CMatrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("block_qr rejects singular input") {
  RMatrix a = RMatrix::Identity(3, 3);
  a.col(2) = a.col(0);
  CHECK_THROWS_AS(block_qr(Matrix(a), BlockShape::parabolic({1, 2})), NumericalError);
}

TEST_CASE("BlockShape validation and violation") {
  CHECK_THROWS_AS(BlockShape::parabolic({2, 0}), std::invalid_argument);
  const BlockShape shape = BlockShape::parabolic({1, 2});
  RMatrix a = RMatrix::Identity(3, 3);
  a(2, 0) = 0.25;
  CHECK(shape.violation(Matrix(a)) == doctest::Approx(0.25));
  CHECK_FALSE(shape.conforms(Matrix(a)));
}

TEST_CASE("positive definiteness") {
  RMatrix a(2, 2);
  a << 2, 1, 1, 2;
  CHECK(is_positive_definite(Matrix(a)));
  a << 1, 2, 2, 1;
  CHECK_FALSE(is_positive_definite(Matrix(a)));
  a << 1, 2, 0, 1;
  CHECK_THROWS_AS(is_positive_definite(Matrix(a)), DomainError);
}

TEST_CASE("projector distance") {
  std::mt19937_64 rng(9);
  const CMatrix a = random_matrix(rng, 5, 2, true);
  const CMatrix b = random_matrix(rng, 5, 2, true);
  const CMatrix g = random_matrix(rng, 2, 2, true);
  const Matrix ma(a, Field::Complex), mb(b, Field::Complex), mag(CMatrix(a * g), Field::Complex);
  CHECK(projector_distance(ma, mag) <= 1e-13);
  CHECK(projector_distance(ma, mb) ==
        doctest::Approx((projector(a) - projector(b)).norm()).epsilon(1e-12));

  RMatrix e1(2, 1), e2(2, 1);
  e1 << 1, 0;
  e2 << 0, 3;
  CHECK(projector_distance(Matrix(e1), Matrix(e2)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("orthonormal_basis and rank_ratio") {
  RMatrix a(3, 2);
  a << 1, 2, 0, 0, 0, 0;
  CHECK_THROWS_AS(orthonormal_basis(Matrix(a)), DomainError);
  CHECK(rank_ratio(Matrix(a)) <= 1e-16);
  a << 1, 0, 0, 2, 0, 0;
  CHECK(rank_ratio(Matrix(a)) == doctest::Approx(0.5));
  const Matrix q = orthonormal_basis(Matrix(a));
  CHECK((q.data().adjoint() * q.data() - CMatrix::Identity(2, 2)).norm() <= 1e-15);
  CHECK(projector_distance(q, Matrix(a)) <= 1e-15);
}

TEST_CASE("inverse_sqrt_pd") {
  std::mt19937_64 rng(13);
  const CMatrix b = random_matrix(rng, 3, 3, true);
  const CMatrix s = b.adjoint() * b + CMatrix::Identity(3, 3);
  const Matrix x = inverse_sqrt_pd(Matrix(s, Field::Complex));
  CHECK((x.data() * s * x.data() - CMatrix::Identity(3, 3)).norm() <= 1e-13);
  CHECK((x.data() - x.data().adjoint()).norm() <= 1e-14);
  CHECK_THROWS_AS(inverse_sqrt_pd(Matrix(RMatrix(-RMatrix::Identity(2, 2)))), DomainError);
}

TEST_CASE("complete_basis extends orthonormal columns") {
  std::mt19937_64 rng(17);
  for (bool complex : {false, true}) {
    const CMatrix a = random_matrix(rng, 5, 2, complex);
    const Matrix u = orthonormal_basis(Matrix(a, complex ? Field::Complex : Field::Real));
    const Matrix full = complete_basis(u);
    CHECK(full.rows() == 5);
    CHECK(full.cols() == 5);
    CHECK((full.data().leftCols(2) - u.data()).norm() <= 1e-15);
    CHECK((full.data().adjoint() * full.data() - CMatrix::Identity(5, 5)).norm() <= 1e-13);
    CHECK(full.is_real() == !complex);
  }
}
