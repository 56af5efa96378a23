#include "dualspace/embeddings.hpp"

#include <cmath>
#include <numbers>

namespace dualspace {

using std::numbers::pi;

const char* to_string(Embedding e) {
  switch (e) {
    case Embedding::P: return "p";
    case Embedding::G: return "g";
    case Embedding::F: return "f";
    case Embedding::B: return "b";
  }
  return "?";
}

std::optional<Embedding> parse_embedding(std::string_view text) {
  if (text == "p") return Embedding::P;
  if (text == "g") return Embedding::G;
  if (text == "f") return Embedding::F;
  if (text == "b") return Embedding::B;
  return std::nullopt;
}

namespace {

Matrix in_field(const SpaceDescriptor& space, const Matrix& a) {
  if (a.field() == space.field) return a;
  if (space.field == Field::Complex) return a.as_complex();
  throw std::invalid_argument("complex matrix given for the real space " + space.label());
}

void require_rep(const SpaceDescriptor& space, const SubspacePoint& l) {
  if (l.rep.rows() != space.dim() || l.rep.cols() != space.n) {
    throw std::invalid_argument("subspace representative must be (n+m) x n for " + space.label());
  }
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a.data();
  out.bottomRightCorner(b.rows(), b.cols()) = b.data();
  return Matrix(out, a.field());
}

SubspacePoint point_from_frame(const SpaceDescriptor& space, const Matrix& frame) {
  return {frame, space.oriented ? 1 : 0};
}

}  // namespace

GroupElement make_group_element(const SpaceDescriptor& space, const Matrix& a, Side side) {
  const Matrix aa = in_field(space, a);
  if (!in_group(space, aa, side)) {
    throw DomainError(std::string("matrix is not in the ") + to_string(side) + " group of " +
                      space.label());
  }
  return {side, aa};
}

double h_coordinate(double x) {
  return -std::atan(std::tanh(pi * x)) / pi;
}

HMapImage h_flat(const FlatCoordinates& noncompact) {
  RVector out = noncompact.coords.unaryExpr([](double x) { return h_coordinate(x); });
  return {FlatCoordinates{std::move(out)}};
}

Matrix lower_block_normalized(const SpaceDescriptor& space, const SubspacePoint& l) {
  require_rep(space, l);
  const Matrix rep = in_field(space, l.rep);
  const CMatrix top = rep.data().topRows(space.n);
  const CMatrix bottom = rep.data().bottomRows(space.m);
  Eigen::FullPivLU<CMatrix> lu(top);
  if (!lu.isInvertible()) {
    throw DomainError("subspace meets the orthogonal complement of the base point");
  }
  return Matrix(CMatrix(bottom * lu.inverse()), space.field);
}

bool space_like(const SpaceDescriptor& space, const SubspacePoint& l) {
  require_rep(space, l);
  const Matrix q = orthonormal_basis(in_field(space, l.rep));
  return is_positive_definite(hermitian_part(q.adjoint() * space.form_j * q), 0.0);
}

TangentVector log_noncompact(const SpaceDescriptor& space, const SubspacePoint& l) {
  if (!space_like(space, l)) {
    throw DomainError("log_noncompact: subspace is not space-like");
  }
  const Matrix y = lower_block_normalized(space, l);
  const Svd d = svd(y);
  if (d.s.size() > 0 && d.s(0) >= kBoundaryLimit) {
    throw NumericalError("coset too close to the boundary of the space-like region");
  }
  const RVector s = d.s.unaryExpr([](double t) { return std::atanh(t); });
  CMatrix c = d.u.data() * s.cast<Complex>().asDiagonal() * d.v.data().adjoint();
  CMatrix x = CMatrix::Zero(space.dim(), space.dim());
  x.bottomLeftCorner(space.m, space.n) = c;
  x.topRightCorner(space.n, space.m) = c.adjoint();
  return {Side::Noncompact, Matrix(x, space.field)};
}

SubspacePoint exp_point(const SpaceDescriptor& space, const TangentVector& x) {
  return point_from_frame(space, expm(in_field(space, x.x)) * space.base_point);
}

FEmbedding f_embed_detailed(const SpaceDescriptor& space, const SubspacePoint& noncompact_point) {
  TangentVector log = log_noncompact(space, noncompact_point);
  FlatDecomposition flat = flat_decompose(space, log);
  HMapImage image = h_flat(flat.h);
  RVector compact_cartan = space.lattice_to_cartan(image.coords.coords);
  TangentVector compact{Side::Compact,
                        conjugate(flat.k, flat_matrix(space, Side::Compact, compact_cartan))};
  SubspacePoint point = exp_point(space, compact);
  return {std::move(point), std::move(log),          std::move(flat),
          std::move(image), std::move(compact_cartan), std::move(compact)};
}

SubspacePoint f_embed(const SpaceDescriptor& space, const SubspacePoint& noncompact_point) {
  return f_embed_detailed(space, noncompact_point).point;
}

SubspacePoint f_embed(const SpaceDescriptor& space, const GroupElement& a) {
  return f_embed(space, p_embed(space, a));
}

GroupElement g_embed(const SpaceDescriptor& space, const GroupElement& a) {
  if (a.side != Side::Noncompact) {
    throw std::invalid_argument("g_embed expects a noncompact group element");
  }
  BlockQr qr = block_qr(in_field(space, a.a), space.parabolic);
  return {Side::Compact, qr.q};
}

SubspacePoint g_embed_point(const SpaceDescriptor& space, const GroupElement& a) {
  return point_from_frame(space, g_embed(space, a).a * space.base_point);
}

SubspacePoint p_embed(const SpaceDescriptor& space, const GroupElement& a) {
  if (a.side != Side::Noncompact) {
    throw std::invalid_argument("p_embed expects a noncompact group element");
  }
  return point_from_frame(space, in_field(space, a.a) * space.base_point);
}

double b_embed_rank1(double t) {
  return 2.0 * std::atan(std::tanh(0.5 * t));
}

SubspacePoint b_embed(const SpaceDescriptor& space, const SubspacePoint& noncompact_point) {
  if (!(space.oriented && space.n == 1)) {
    throw DomainError("b embedding is only defined on the oriented-line spaces, not " +
                      space.label());
  }
  const FlatDecomposition flat = flat_decompose(space, log_noncompact(space, noncompact_point));
  const double s = flat.cartan_coords(0);
  const double t = space.metric_scale * std::abs(s);
  const double sign = s < 0.0 ? 1.0 : -1.0;
  RVector theta = RVector::Constant(1, sign * b_embed_rank1(t) / space.metric_scale);
  const TangentVector x{Side::Compact,
                        conjugate(flat.k, flat_matrix(space, Side::Compact, theta))};
  return exp_point(space, x);
}

FlatDecomposition log_compact(const SpaceDescriptor& space, const SubspacePoint& l) {
  require_rep(space, l);
  const auto n = space.n, m = space.m;
  const Field field = space.field;

  if (space.oriented && n == 1) {
    // Oriented line: rotate e_1 by the angle to the unit vector u.
    RVector u = (l.orientation < 0 ? -1.0 : 1.0) * l.rep.real().col(0);
    u.normalize();
    const double tail = u.tail(m).norm();
    const double psi = std::atan2(tail, u(0));
    if (psi >= pi - 1e-12) {
      throw DomainError("log_compact: point is the antipode (cut locus)");
    }
    RMatrix k2 = RMatrix::Identity(m, m);
    double theta = psi;
    if (tail > 0.0) {
      RVector w = -u.tail(m) / tail;
      k2 = complete_basis(Matrix(RMatrix(w))).real();
      if (k2.determinant() < 0.0) {
        if (m > 1) {
          k2.col(m - 1) *= -1.0;
        } else {
          k2.col(0) *= -1.0;
          theta = -theta;
        }
      }
    }
    const Matrix k = block_diag(Matrix(RMatrix::Identity(1, 1)), Matrix(k2));
    RVector cartan = RVector::Constant(1, theta);
    return {k, cartan, FlatCoordinates{space.cartan_to_lattice(cartan)}};
  }

  const Matrix frame = in_field(space, l.rep);
  const CMatrix top = frame.data().topRows(n);
  const Matrix q = orthonormal_basis(frame);
  if (rank_ratio(q.block(0, 0, n, n)) <= Tolerances::kStructural) {
    throw DomainError("log_compact: point lies on the cut locus of the base point");
  }
  if (space.oriented) {
    const double sign = top.determinant().real() * (l.orientation < 0 ? -1.0 : 1.0);
    if (sign <= 0.0) {
      throw DomainError("log_compact: oriented plane outside the positively oriented cell");
    }
  }
  // frame ~ [cos; -U sin V^H] up to right factors, so -L2 L1^{-1} = U tan V^H.
  const Matrix z = -lower_block_normalized(space, l);
  Svd d = svd(z);
  CMatrix k1 = d.v.data();
  CMatrix k2 = complete_basis(d.u).data();
  RVector theta = d.s.unaryExpr([](double t) { return std::atan(t); });
  if (space.oriented) {
    if (k1.determinant().real() < 0.0) {
      k1.col(n - 1) *= -1.0;
      theta(n - 1) *= -1.0;
    }
    if (k2.determinant().real() < 0.0) {
      if (m > n) {
        k2.col(m - 1) *= -1.0;
      } else {
        k2.col(n - 1) *= -1.0;
        theta(n - 1) *= -1.0;
      }
    }
  }
  const Matrix k = block_diag(Matrix(k1, field), Matrix(k2, field));
  return {k, theta, FlatCoordinates{space.cartan_to_lattice(theta)}};
}

double region_fraction(const SpaceDescriptor& space, const FlatCoordinates& x) {
  const double len = space.lattice.to_metric(x.coords).norm();
  if (len == 0.0) return 0.0;
  const FlatCoordinates unit{x.coords / len};
  return len / cut_radius(space.lattice, unit).radius;
}

}  // namespace dualspace
