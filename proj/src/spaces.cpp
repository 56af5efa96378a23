#include "dualspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dualspace {

using std::numbers::pi;

const char* to_string(Family family) {
  switch (family) {
    case Family::RealGrassmannian: return "gr-real";
    case Family::ComplexGrassmannian: return "gr-complex";
    case Family::OrientedTwoPlane: return "oriented";
    case Family::CircleSphere: return "sphere";
  }
  return "unknown";
}

const char* to_string(Side side) {
  return side == Side::Compact ? "compact" : "noncompact";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "gr-real" || text == "RealGrassmannian") return Family::RealGrassmannian;
  if (text == "gr-complex" || text == "ComplexGrassmannian") return Family::ComplexGrassmannian;
  if (text == "oriented" || text == "OrientedTwoPlane") return Family::OrientedTwoPlane;
  if (text == "sphere" || text == "CircleSphere") return Family::CircleSphere;
  return std::nullopt;
}

std::string SpaceDescriptor::label() const {
  return std::string(to_string(family)) + "(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

RVector SpaceDescriptor::cartan_to_lattice(const RVector& cartan) const {
  return lattice_in_cartan.partialPivLu().solve(cartan);
}

RVector SpaceDescriptor::lattice_to_cartan(const RVector& lattice_coords) const {
  return lattice_in_cartan * lattice_coords;
}

namespace {

Matrix generator(Eigen::Index dim, Eigen::Index i, Eigen::Index j, double sign, Field field) {
  CMatrix g = CMatrix::Zero(dim, dim);
  g(i, j) = 1.0;
  g(j, i) = sign;
  return Matrix(g, field);
}

double scaled_tol(double tol, const Matrix& a) {
  return tol * std::max(1.0, a.norm() * a.norm());
}

Complex det(const Matrix& a) {
  return a.data().determinant();
}

void require_dim(const SpaceDescriptor& space, const Matrix& a) {
  if (a.rows() != space.dim() || a.cols() != space.dim()) {
    throw std::invalid_argument("matrix size does not match " + space.label());
  }
}

Matrix in_field(const SpaceDescriptor& space, const Matrix& a) {
  if (a.field() == space.field) return a;
  if (space.field == Field::Complex) return a.as_complex();
  throw std::invalid_argument("complex matrix given for the real space " + space.label());
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a.data();
  out.bottomRightCorner(b.rows(), b.cols()) = b.data();
  return Matrix(out, a.field());
}

}  // namespace

SpaceDescriptor make_space(Family family, Eigen::Index n, Eigen::Index m) {
  if (n < 1) throw DomainError("make_space: n must be at least 1");
  if (m < n) throw DomainError("make_space: need m >= n");

  Field field = family == Family::ComplexGrassmannian ? Field::Complex : Field::Real;
  Eigen::Index rank = n;
  bool oriented = false;
  double scale = 1.0;
  RMatrix lattice_in_cartan;

  switch (family) {
    case Family::RealGrassmannian:
    case Family::ComplexGrassmannian:
      lattice_in_cartan = pi * RMatrix::Identity(n, n);
      break;
    case Family::CircleSphere:
      if (n != 1) throw DomainError("CircleSphere is parameterized by n = 1 (oriented lines)");
      [[fallthrough]];
    case Family::OrientedTwoPlane:
      oriented = true;
      if (n == 1) {
        // exp(t R_{1,2}) fixes the oriented line only at t in 2 pi Z. Lengths
        // are doubled so that the cut radius of the flat is 2 pi.
        lattice_in_cartan = RMatrix::Constant(1, 1, 2.0 * pi);
        scale = 2.0;
      } else if (n == 2) {
        lattice_in_cartan.resize(2, 2);
        lattice_in_cartan << pi, pi, pi, -pi;
      } else {
        throw DomainError("OrientedTwoPlane supports oriented lines and planes only (n = 1, 2)");
      }
      break;
  }

  const Eigen::Index dim = n + m;
  CMatrix j = CMatrix::Identity(dim, dim);
  j.bottomRightCorner(m, m) *= -1.0;
  CMatrix lo = CMatrix::Zero(dim, n);
  lo.topRows(n).setIdentity();

  std::vector<Matrix> compact, noncompact;
  for (Eigen::Index i = 0; i < rank; ++i) {
    compact.push_back(generator(dim, i, n + i, -1.0, field));
    noncompact.push_back(generator(dim, i, n + i, 1.0, field));
  }

  LatticeBasis lattice(RMatrix(scale * lattice_in_cartan));

  return SpaceDescriptor{family,
                         field,
                         n,
                         m,
                         rank,
                         oriented,
                         scale,
                         Matrix(j, field),
                         Matrix(lo, field),
                         std::move(compact),
                         std::move(noncompact),
                         std::move(lattice_in_cartan),
                         std::move(lattice),
                         BlockShape::parabolic({n, m})};
}

SubspacePoint base_point(const SpaceDescriptor& space) {
  return {space.base_point, space.oriented ? 1 : 0};
}

bool in_group(const SpaceDescriptor& space, const Matrix& a_in, Side side, double tol) {
  require_dim(space, a_in);
  const Matrix a = in_field(space, a_in);
  const Matrix j = side == Side::Compact ? Matrix::identity(space.dim(), space.field) : space.form_j;
  const double t = scaled_tol(tol, a);
  if ((a.adjoint() * j * a - j).max_abs() > t) return false;
  if (space.oriented) {
    if (std::abs(det(a) - 1.0) > t) return false;
    if (side == Side::Noncompact && det(a.block(0, 0, space.n, space.n)).real() <= 0.0) {
      return false;
    }
  }
  return true;
}

bool in_isotropy(const SpaceDescriptor& space, const Matrix& k_in, double tol) {
  require_dim(space, k_in);
  const Matrix k = in_field(space, k_in);
  const auto n = space.n, m = space.m;
  if (k.block(0, n, n, m).max_abs() > tol || k.block(n, 0, m, n).max_abs() > tol) return false;
  const Matrix k1 = k.block(0, 0, n, n);
  const Matrix k2 = k.block(n, n, m, m);
  if ((k1.adjoint() * k1 - Matrix::identity(n, k.field())).max_abs() > tol) return false;
  if ((k2.adjoint() * k2 - Matrix::identity(m, k.field())).max_abs() > tol) return false;
  if (space.oriented) {
    if (std::abs(det(k1) - 1.0) > tol || std::abs(det(k2) - 1.0) > tol) return false;
  }
  return true;
}

bool in_tangent_space(const SpaceDescriptor& space, const TangentVector& v, double tol) {
  require_dim(space, v.x);
  const Matrix x = in_field(space, v.x);
  const auto n = space.n, m = space.m;
  const double t = tol * std::max(1.0, x.norm());
  if (x.block(0, 0, n, n).max_abs() > t || x.block(n, n, m, m).max_abs() > t) return false;
  const Matrix top_right = x.block(0, n, n, m);
  const Matrix bottom_left_h = x.block(n, 0, m, n).adjoint();
  const Matrix mismatch =
      v.side == Side::Noncompact ? top_right - bottom_left_h : top_right + bottom_left_h;
  return mismatch.max_abs() <= t;
}

double metric_inner(const SpaceDescriptor& space, Side side, const Matrix& x, const Matrix& y) {
  const double sign = side == Side::Compact ? -0.5 : 0.5;
  const double tr = (in_field(space, x).data() * in_field(space, y).data()).trace().real();
  return space.metric_scale * space.metric_scale * sign * tr;
}

Matrix transitivity_element(const SpaceDescriptor& space, const Matrix& y_in) {
  if (y_in.rows() != space.m || y_in.cols() != space.n) {
    throw std::invalid_argument("transitivity_element: Y must be m x n");
  }
  const Matrix y = in_field(space, y_in);
  const Matrix in = Matrix::identity(space.n, space.field);
  const Matrix im = Matrix::identity(space.m, space.field);
  const Matrix top = in - y.adjoint() * y;
  if (!is_positive_definite(hermitian_part(top), 0.0)) {
    throw DomainError("transitivity_element: I - Y^H Y is not positive definite (not space-like)");
  }
  const Matrix a1 = inverse_sqrt_pd(top);
  const Matrix a4 = inverse_sqrt_pd(im - y * y.adjoint());
  CMatrix a(space.dim(), space.dim());
  a.topLeftCorner(space.n, space.n) = a1.data();
  a.topRightCorner(space.n, space.m) = (y.adjoint() * a4).data();
  a.bottomLeftCorner(space.m, space.n) = (y * a1).data();
  a.bottomRightCorner(space.m, space.m) = a4.data();
  return Matrix(a, space.field);
}

Matrix flat_matrix(const SpaceDescriptor& space, Side side, const RVector& cartan_coords) {
  if (cartan_coords.size() != space.rank) {
    throw std::invalid_argument("flat coordinates do not match the rank");
  }
  const auto& basis = side == Side::Compact ? space.cartan_basis : space.noncompact_basis;
  Matrix x = Matrix::zero(space.dim(), space.dim(), space.field);
  for (Eigen::Index i = 0; i < space.rank; ++i) x = x + cartan_coords(i) * basis[i];
  return x;
}

FlatDecomposition flat_decompose(const SpaceDescriptor& space, const TangentVector& v) {
  if (!in_tangent_space(space, v)) {
    throw DomainError("flat_decompose: matrix is not a tangent vector at the base point");
  }
  const auto n = space.n, m = space.m;
  const Matrix x = in_field(space, v.x);
  Matrix c = x.block(n, 0, m, n);
  if (v.side == Side::Compact) c = -c;

  Svd d = svd(c);
  CMatrix k1 = d.v.data();
  CMatrix k2 = complete_basis(d.u).data();
  RVector s = d.s;
  if (space.oriented) {
    if (k1.determinant().real() < 0.0) {
      k1.col(n - 1) *= -1.0;
      s(n - 1) *= -1.0;
    }
    if (k2.determinant().real() < 0.0) {
      if (m > n) {
        k2.col(m - 1) *= -1.0;
      } else {
        k2.col(n - 1) *= -1.0;
        s(n - 1) *= -1.0;
      }
    }
  }
  const Matrix k = block_diag(Matrix(k1, space.field), Matrix(k2, space.field));
  return {k, s, FlatCoordinates{space.cartan_to_lattice(s)}};
}

Matrix conjugate(const Matrix& k, const Matrix& x) {
  return k * x * k.adjoint();
}

SubspacePoint act(const Matrix& k, const SubspacePoint& point) {
  const Matrix kk = k.field() == point.rep.field() ? k : k.as_complex();
  return {kk * point.rep, point.orientation};
}

double point_distance(const SubspacePoint& a, const SubspacePoint& b) {
  const Matrix ra = a.rep.field() == b.rep.field() ? a.rep : a.rep.as_complex();
  const Matrix rb = a.rep.field() == b.rep.field() ? b.rep : b.rep.as_complex();
  const double d = projector_distance(ra, rb);
  if (a.orientation == 0 || b.orientation == 0 || d > 0.5) return d;
  // Change of basis G with rb ~ ra G.
  const CMatrix g = (ra.data().adjoint() * ra.data()).ldlt().solve(ra.data().adjoint() * rb.data());
  const double sign = g.determinant().real() * a.orientation * b.orientation;
  return sign > 0.0 ? d : std::numeric_limits<double>::infinity();
}

bool same_point(const SubspacePoint& a, const SubspacePoint& b, double tol) {
  return point_distance(a, b) <= tol;
}

}  // namespace dualspace
