#include "dualspace/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dualspace {

namespace {

constexpr double kUnitTol = 1e-9;

void require_unit(const LatticeBasis& basis, const FlatCoordinates& unit) {
  if (unit.coords.size() != basis.rank()) {
    throw std::invalid_argument("flat coordinates do not match lattice rank");
  }
  const double len = basis.to_metric(unit.coords).norm();
  if (std::abs(len - 1.0) > kUnitTol) {
    throw DomainError("cut radius needs a unit direction (|X| = " + std::to_string(len) + ")");
  }
}

// Calls visit(m) for every integer vector with |m|_1 == shell whose first
// nonzero entry is positive.
template <typename Visit>
void enumerate_shell(Eigen::Index rank, std::int64_t shell, Visit&& visit) {
  std::vector<std::int64_t> m(static_cast<std::size_t>(rank), 0);
  auto rec = [&](auto&& self, Eigen::Index pos, std::int64_t remaining, bool leading) -> void {
    if (pos == rank) {
      if (remaining == 0) visit(m);
      return;
    }
    if (pos == rank - 1) {
      if (remaining == 0) {
        if (!leading) {
          m[pos] = 0;
          visit(m);
        }
        return;
      }
      m[pos] = remaining;
      visit(m);
      if (!leading) {
        m[pos] = -remaining;
        visit(m);
      }
      m[pos] = 0;
      return;
    }
    for (std::int64_t a = 0; a <= remaining; ++a) {
      if (a == 0) {
        m[pos] = 0;
        self(self, pos + 1, remaining, leading);
        continue;
      }
      m[pos] = a;
      self(self, pos + 1, remaining - a, false);
      if (!leading) {
        m[pos] = -a;
        self(self, pos + 1, remaining - a, false);
      }
    }
    m[pos] = 0;
  };
  rec(rec, 0, shell, true);
}

}  // namespace

LatticeBasis::LatticeBasis(RMatrix generators) : generators_(std::move(generators)) {
  if (generators_.rows() != generators_.cols() || generators_.cols() == 0) {
    throw std::invalid_argument("lattice generators must form a square, nonempty matrix");
  }
  if (!generators_.allFinite()) {
    throw std::invalid_argument("lattice generators must be finite");
  }
  gram_ = generators_.transpose() * generators_;
  Eigen::JacobiSVD<RMatrix> sv(generators_);
  const RVector s = sv.singularValues();
  if (s(s.size() - 1) <= Tolerances::kStructural * s(0)) {
    throw DomainError("lattice generators are linearly dependent");
  }
}

LatticeBasis LatticeBasis::from_gram(const RMatrix& gram) {
  Eigen::LLT<RMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw DomainError("Gram matrix is not positive definite");
  }
  return LatticeBasis(RMatrix(llt.matrixL().transpose()));
}

RVector LatticeBasis::norms() const {
  return generators_.colwise().norm().transpose();
}

RVector LatticeBasis::to_lattice(const RVector& metric) const {
  return generators_.partialPivLu().solve(metric);
}

bool is_orthonormal(const LatticeBasis& basis, double tol) {
  const RMatrix& g = basis.gram();
  const double alpha2 = g.diagonal().mean();
  const RMatrix diff = g - alpha2 * RMatrix::Identity(g.rows(), g.cols());
  return diff.cwiseAbs().maxCoeff() <= tol * alpha2;
}

double cut_ratio(const LatticeBasis& basis, const FlatCoordinates& unit,
                 const std::vector<std::int64_t>& m) {
  RVector mv(basis.rank());
  for (Eigen::Index i = 0; i < basis.rank(); ++i) mv(i) = static_cast<double>(m[i]);
  const RVector a = basis.to_metric(mv);
  const RVector x = basis.to_metric(unit.coords);
  return a.squaredNorm() / (2.0 * std::abs(x.dot(a)));
}

double naive_cut_radius(const LatticeBasis& basis, const FlatCoordinates& unit) {
  require_unit(basis, unit);
  const double m = unit.coords.cwiseAbs().maxCoeff();
  if (m == 0.0) {
    throw DomainError("cut radius of the zero vector");
  }
  return 1.0 / (2.0 * m);
}

double cut_radius_closed(const LatticeBasis& basis, const FlatCoordinates& unit) {
  if (!is_orthonormal(basis)) {
    throw DomainError("closed-form cut radius needs an orthonormal unit lattice");
  }
  require_unit(basis, unit);
  const double m = unit.coords.cwiseAbs().maxCoeff();
  if (m == 0.0) {
    throw DomainError("cut radius of the zero vector");
  }
  return 1.0 / (2.0 * m);
}

CutRadiusResult cut_radius_brute(const LatticeBasis& basis, const FlatCoordinates& unit) {
  require_unit(basis, unit);
  const Eigen::Index r = basis.rank();
  const RVector x = basis.to_metric(unit.coords);
  const RMatrix& gens = basis.generators();

  CutRadiusResult best;
  best.radius = std::numeric_limits<double>::infinity();
  const double tie_tol = 1e-13;

  auto consider = [&](const std::vector<std::int64_t>& m) {
    RVector a = RVector::Zero(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (m[i] != 0) a += static_cast<double>(m[i]) * gens.col(i);
    }
    const double len = a.norm();
    if (len >= 2.0 * best.radius * (1.0 + tie_tol)) return;
    const double proj = std::abs(x.dot(a));
    if (proj <= 1e-14 * len) return;
    const double value = a.squaredNorm() / (2.0 * proj);
    if (value < best.radius * (1.0 - tie_tol)) {
      best.radius = value;
      best.minimizer = m;
    } else if (value <= best.radius * (1.0 + tie_tol) && m < best.minimizer) {
      best.minimizer = m;
    }
  };

  for (Eigen::Index i = 0; i < r; ++i) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(r), 0);
    e[i] = 1;
    consider(e);
  }
  if (!std::isfinite(best.radius)) {
    throw DomainError("direction is orthogonal to the unit lattice (infinite cut radius)");
  }

  // |A|^2 >= lambda_min |m|_2^2 >= lambda_min |m|_1^2 / r.
  Eigen::SelfAdjointEigenSolver<RMatrix> es(basis.gram(), Eigen::EigenvaluesOnly);
  const double shell_scale = std::sqrt(es.eigenvalues().minCoeff() / static_cast<double>(r));
  for (std::int64_t shell = 1;; ++shell) {
    if (shell_scale * static_cast<double>(shell) >= 2.0 * best.radius * (1.0 + tie_tol)) break;
    enumerate_shell(r, shell, consider);
  }
  best.used_closed_form = false;
  return best;
}

CutRadiusResult cut_radius(const LatticeBasis& basis, const FlatCoordinates& unit) {
  if (!is_orthonormal(basis)) {
    return cut_radius_brute(basis, unit);
  }
  CutRadiusResult res;
  res.radius = cut_radius_closed(basis, unit);
  res.used_closed_form = true;
  Eigen::Index imax = 0;
  unit.coords.cwiseAbs().maxCoeff(&imax);
  res.minimizer.assign(static_cast<std::size_t>(basis.rank()), 0);
  res.minimizer[imax] = 1;
  return res;
}

bool in_half_region(const LatticeBasis& basis, const FlatCoordinates& x, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("region fraction must lie in (0, 1]");
  }
  if (x.coords.size() != basis.rank()) {
    throw std::invalid_argument("flat coordinates do not match lattice rank");
  }
  const double len = basis.to_metric(x.coords).norm();
  if (len == 0.0) return true;
  const FlatCoordinates unit{x.coords / len};
  return len < fraction * cut_radius(basis, unit).radius;
}

std::vector<Matrix> su3_torus_generators() {
  using std::numbers::pi;
  const Complex i2pi(0.0, 2.0 * pi);
  CMatrix h1 = CMatrix::Zero(3, 3);
  h1(0, 0) = i2pi;
  h1(1, 1) = -i2pi;
  CMatrix h2 = CMatrix::Zero(3, 3);
  h2(1, 1) = i2pi;
  h2(2, 2) = -i2pi;
  return {Matrix(h1, Field::Complex), Matrix(h2, Field::Complex)};
}

LatticeBasis su3_integral_lattice() {
  // Frame: e1 along the first generator, e2 completing it inside the torus.
  const auto gens = su3_torus_generators();
  auto inner = [](const Matrix& a, const Matrix& b) {
    return -0.5 * (a.data() * b.data()).trace().real();
  };
  RMatrix gram(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) gram(i, j) = inner(gens[i], gens[j]);
  }
  return LatticeBasis::from_gram(gram);
}

}  // namespace dualspace
