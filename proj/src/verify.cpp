#include "dualspace/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace dualspace {

using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix block_diag(const Matrix& a, const Matrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a.data();
  out.bottomRightCorner(b.rows(), b.cols()) = b.data();
  return Matrix(out, a.field());
}

bool is_grassmannian(const SpaceDescriptor& space) {
  return space.family == Family::RealGrassmannian || space.family == Family::ComplexGrassmannian;
}

void add_detail(PropertyReport& r, std::string name, double value) {
  r.details.emplace_back(std::move(name), value);
}

// Runs `residual(i)` for every sample, reducing in index order. Exceptions
// from the library count as failures with infinite residual.
void run_samples(PropertyReport& r, std::size_t samples,
                 const std::function<double(std::size_t)>& residual) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    double res = kInf;
    try {
      res = residual(i);
    } catch (const DomainError&) {
      ++errors;
    } catch (const NumericalError&) {
      ++errors;
    }
    r.worst_residual = std::max(r.worst_residual, res);
    if (!(res <= r.tolerance)) ++r.failures;
  }
  r.samples = samples;
  add_detail(r, "errors", static_cast<double>(errors));
}

PropertyReport make_report(std::string name, std::uint64_t seed, double tol) {
  PropertyReport r;
  r.property_name = std::move(name);
  r.seed = seed;
  r.tolerance = tol;
  return r;
}

SubspacePoint embed(const SpaceDescriptor& space, Embedding e, const GroupElement& a) {
  switch (e) {
    case Embedding::P: return p_embed(space, a);
    case Embedding::G: return g_embed_point(space, a);
    case Embedding::F: return f_embed(space, a);
    case Embedding::B: return b_embed(space, p_embed(space, a));
  }
  throw std::invalid_argument("unknown embedding");
}

}  // namespace

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Sampler::normal() {
  return normal_(engine_);
}

Matrix Sampler::haar(Eigen::Index n, Field field, bool special) {
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal();
      g(i, j) = field == Field::Real ? Complex(re, 0.0) : Complex(re, normal()) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  if (special && q.determinant().real() < 0.0) q.col(0) *= -1.0;
  return Matrix(q, field);
}

Matrix Sampler::isotropy(const SpaceDescriptor& space) {
  return block_diag(haar(space.n, space.field, space.oriented),
                    haar(space.m, space.field, space.oriented));
}

Matrix Sampler::y_block(const SpaceDescriptor& space, double sigma_hi) {
  return y_block_with_top(space, uniform(0.0, sigma_hi));
}

Matrix Sampler::y_block_with_top(const SpaceDescriptor& space, double sigma_top) {
  const Eigen::Index n = space.n;
  RVector sigma(n);
  sigma(0) = sigma_top;
  for (Eigen::Index i = 1; i < n; ++i) sigma(i) = uniform(0.0, sigma_top);
  std::sort(sigma.data(), sigma.data() + n, std::greater<>());
  const CMatrix u = haar(space.m, space.field, false).data().leftCols(n);
  const CMatrix v = haar(n, space.field, false).data();
  return Matrix(CMatrix(u * sigma.cast<Complex>().asDiagonal() * v.adjoint()), space.field);
}

GroupElement Sampler::coset(const SpaceDescriptor& space, const Matrix& y) {
  return {Side::Noncompact, transitivity_element(space, y) * isotropy(space)};
}

RVector Sampler::unit_vector(Eigen::Index r) {
  RVector v(r);
  do {
    for (Eigen::Index i = 0; i < r; ++i) v(i) = normal();
  } while (v.norm() < 1e-12);
  return v.normalized();
}

PropertyReport check_triple_equality(const SpaceDescriptor& space, std::size_t samples,
                                     std::uint64_t seed, double tol) {
  PropertyReport r = make_report("triple-equality", seed, tol);
  Sampler rng(seed);
  double pg = 0.0, pf = 0.0, gf = 0.0;
  run_samples(r, samples, [&](std::size_t) {
    const GroupElement a = rng.coset(space, rng.y_block(space));
    const SubspacePoint p = p_embed(space, a);
    const SubspacePoint g = g_embed_point(space, a);
    const SubspacePoint f = f_embed(space, a);
    const double d_pg = point_distance(p, g);
    const double d_pf = point_distance(p, f);
    const double d_gf = point_distance(g, f);
    pg = std::max(pg, d_pg);
    pf = std::max(pf, d_pf);
    gf = std::max(gf, d_gf);
    return std::max({d_pg, d_pf, d_gf});
  });
  add_detail(r, "worst_p_g", pg);
  add_detail(r, "worst_p_f", pf);
  add_detail(r, "worst_g_f", gf);
  return r;
}

PropertyReport check_equivariance(const SpaceDescriptor& space, Embedding embedding,
                                  std::size_t samples, std::uint64_t seed, double tol) {
  if (embedding == Embedding::B) {
    throw std::invalid_argument("equivariance is checked for p, g and f only");
  }
  PropertyReport r = make_report(std::string("equivariance-") + to_string(embedding), seed, tol);
  Sampler rng(seed);
  run_samples(r, samples, [&](std::size_t) {
    const GroupElement a = rng.coset(space, rng.y_block(space));
    const Matrix k = rng.isotropy(space);
    const GroupElement ka{Side::Noncompact, k * a.a};
    return point_distance(embed(space, embedding, ka), act(k, embed(space, embedding, a)));
  });
  return r;
}

double expected_image_fraction(const SpaceDescriptor& space, Embedding embedding) {
  const bool line = space.oriented && space.n == 1;
  if (embedding == Embedding::B) {
    if (!line) throw DomainError("b embedding is only defined on the oriented-line spaces");
    return 0.25;
  }
  if (line && embedding != Embedding::F) return 0.25;
  return 0.5;
}

PropertyReport check_image_region(const SpaceDescriptor& space, Embedding embedding,
                                  std::size_t samples, std::uint64_t seed, double near_sigma,
                                  double approach_tol) {
  const double fraction = expected_image_fraction(space, embedding);
  if (!is_orthonormal(space.lattice)) {
    throw DomainError("image region check needs an orthonormal unit lattice");
  }
  PropertyReport r = make_report(std::string("image-region-") + to_string(embedding), seed,
                                 fraction);
  Sampler rng(seed);
  const double bound = fraction / 2.0;  // max |x_i| on the region boundary
  // Off the Grassmannians the f image is larger than the space-like region.
  const bool must_be_space_like = embedding != Embedding::F || is_grassmannian(space);
  double min_gap = kInf, worst_near_gap = 0.0;
  std::size_t not_space_like = 0, far_from_boundary = 0;
  run_samples(r, samples, [&](std::size_t i) {
    const bool near = i % 2 == 1;
    const Matrix y = near ? rng.y_block_with_top(space, near_sigma) : rng.y_block(space);
    const SubspacePoint point = embed(space, embedding, rng.coset(space, y));
    if (must_be_space_like && !space_like(space, point)) {
      ++not_space_like;
      return kInf;
    }
    const FlatDecomposition log = log_compact(space, point);
    const double frac = region_fraction(space, log.h);
    const double gap = bound - log.h.coords.cwiseAbs().maxCoeff();
    min_gap = std::min(min_gap, gap);
    if (frac >= fraction) return kInf;
    if (near) {
      worst_near_gap = std::max(worst_near_gap, gap);
      if (approach_tol > 0.0 && gap > approach_tol) {
        ++far_from_boundary;
        return kInf;
      }
    }
    return frac;
  });
  add_detail(r, "expected_fraction", fraction);
  add_detail(r, "min_gap", min_gap);
  add_detail(r, "worst_near_boundary_gap", worst_near_gap);
  add_detail(r, "not_space_like", static_cast<double>(not_space_like));
  add_detail(r, "near_samples_far_from_boundary", static_cast<double>(far_from_boundary));
  return r;
}

PropertyReport check_cut_loci_grassmannian(const SpaceDescriptor& space, std::size_t samples,
                                           std::uint64_t seed, double tol, double step_back) {
  if (!is_grassmannian(space)) {
    throw DomainError("cut locus check is defined for Grassmannians, not " + space.label());
  }
  PropertyReport r = make_report("cut-loci", seed, tol);
  Sampler rng(seed);
  double min_before = kInf;
  std::size_t still_full_rank = 0, early_drop = 0;
  auto sigma_min_top = [&](const Matrix& x, double t) {
    const Matrix l = expm(t * x) * space.base_point;
    const RVector s = svd(l.block(0, 0, space.n, space.n)).s;
    return s(s.size() - 1);
  };
  run_samples(r, samples, [&](std::size_t) {
    const RVector c = rng.unit_vector(space.rank);
    const Matrix x = conjugate(rng.isotropy(space), flat_matrix(space, Side::Compact, c));
    const FlatCoordinates unit{space.cartan_to_lattice(c / space.metric_scale)};
    const double t0 = cut_radius(space.lattice, unit).radius / space.metric_scale;
    const double at = sigma_min_top(x, t0);
    const double before = sigma_min_top(x, t0 - step_back);
    min_before = std::min(min_before, before);
    if (at > tol) ++still_full_rank;
    if (before <= tol) {
      ++early_drop;
      return kInf;
    }
    return at;
  });
  add_detail(r, "min_sigma_before_cut", min_before);
  add_detail(r, "full_rank_at_cut", static_cast<double>(still_full_rank));
  add_detail(r, "rank_drop_before_cut", static_cast<double>(early_drop));
  return r;
}

PropertyReport check_cut_radius(const SpaceDescriptor& space, std::size_t samples,
                                std::uint64_t seed, double tol) {
  PropertyReport r = make_report("cut-radius", seed, tol);
  Sampler rng(seed);
  run_samples(r, samples, [&](std::size_t) {
    const RVector u = rng.unit_vector(space.rank);
    const FlatCoordinates unit{space.lattice.to_lattice(u)};
    return std::abs(cut_radius_brute(space.lattice, unit).radius -
                    cut_radius_closed(space.lattice, unit));
  });
  return r;
}

PropertyReport check_restriction(Eigen::Index n, Eigen::Index m, std::size_t samples,
                                 std::uint64_t seed, double tol) {
  const SpaceDescriptor real = make_space(Family::RealGrassmannian, n, m);
  const SpaceDescriptor complex = make_space(Family::ComplexGrassmannian, n, m);
  PropertyReport r = make_report("restriction", seed, tol);
  Sampler rng(seed);
  run_samples(r, samples, [&](std::size_t) {
    const GroupElement a = rng.coset(real, rng.y_block(real));
    const GroupElement ac{Side::Noncompact, a.a.as_complex()};
    return point_distance(f_embed(real, a), f_embed(complex, ac));
  });
  return r;
}

PropertyReport check_h_independence(const SpaceDescriptor& space, std::size_t samples,
                                    std::uint64_t seed, double tol) {
  PropertyReport r = make_report("h-independence", seed, tol);
  Sampler rng(seed);
  const auto n = space.n, m = space.m;
  run_samples(r, samples, [&](std::size_t) {
    const double s = rng.uniform(0.05, 2.0);
    const RVector flat = RVector::Constant(space.rank, s);
    const Matrix k0 = rng.isotropy(space);
    const Matrix w = rng.haar(n, space.field, space.oriented);
    CMatrix rot = CMatrix::Identity(n + m, n + m);
    rot.topLeftCorner(n, n) = w.data();
    rot.block(n, n, n, n) = w.data();
    const Matrix k1 = k0 * Matrix(rot, space.field);

    const Matrix x = conjugate(k0, flat_matrix(space, Side::Noncompact, flat));
    const double same_x = (conjugate(k1, flat_matrix(space, Side::Noncompact, flat)) - x).max_abs();
    const SubspacePoint point = exp_point(space, {Side::Noncompact, x});

    const RVector lattice = space.cartan_to_lattice(flat);
    const RVector theta = space.lattice_to_cartan(h_flat(FlatCoordinates{lattice}).coords.coords);
    const Matrix compact = flat_matrix(space, Side::Compact, theta);
    const SubspacePoint via_k0 = exp_point(space, {Side::Compact, conjugate(k0, compact)});
    const SubspacePoint via_k1 = exp_point(space, {Side::Compact, conjugate(k1, compact)});
    const SubspacePoint library = f_embed(space, point);
    return std::max({same_x, point_distance(via_k0, via_k1), point_distance(via_k0, library)});
  });
  return r;
}

PropertyReport check_round_trip(const SpaceDescriptor& space, std::size_t samples,
                                std::uint64_t seed, double tol) {
  PropertyReport r = make_report("round-trip", seed, tol);
  Sampler rng(seed);
  double worst_nc = 0.0, worst_c = 0.0;
  run_samples(r, samples, [&](std::size_t) {
    const SubspacePoint l = p_embed(space, rng.coset(space, rng.y_block(space)));
    const double d_nc = point_distance(exp_point(space, log_noncompact(space, l)), l);
    const FlatDecomposition log = log_compact(space, l);
    const TangentVector xc{Side::Compact,
                           conjugate(log.k, flat_matrix(space, Side::Compact, log.cartan_coords))};
    const double d_c = point_distance(exp_point(space, xc), l);
    worst_nc = std::max(worst_nc, d_nc);
    worst_c = std::max(worst_c, d_c);
    return std::max(d_nc, d_c);
  });
  add_detail(r, "worst_noncompact", worst_nc);
  add_detail(r, "worst_compact", worst_c);
  return r;
}

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

Mat3 expm3(const Mat3& x) {
  return expm(Matrix(RMatrix(x))).real();
}

Mat3 rotation_12(double t) {
  Mat3 g = Mat3::Zero();
  g(0, 1) = 1.0;
  g(1, 0) = -1.0;
  return expm3(t * g);
}

Mat3 rotation_13(double t) {
  Mat3 g = Mat3::Zero();
  g(0, 2) = 1.0;
  g(2, 0) = -1.0;
  return expm3(t * g);
}

Mat3 boost_13(double t) {
  Mat3 g = Mat3::Zero();
  g(0, 2) = 1.0;
  g(2, 0) = 1.0;
  return expm3(t * g);
}

struct Surface {
  // Inner product, distance and tangent projection at p.
  std::function<double(const Vec3&, const Vec3&)> inner;
  std::function<double(const Vec3&, const Vec3&)> distance;
  std::function<Mat3(double)> push;  // moves o a distance t along e1
};

double vertex_angle(const Surface& s, const Vec3& p, const Vec3& q, const Vec3& w) {
  const double pp = s.inner(p, p);
  const Vec3 tq = q - (s.inner(p, q) / pp) * p;
  const Vec3 tw = w - (s.inner(p, w) / pp) * p;
  Mat3 m;
  m << p, tq, tw;
  return std::atan2(std::abs(m.determinant()), s.inner(tq, tw));
}

// Vertex A = o, B at distance c along e1, C at distance b rotated by the
// angle alpha, with alpha bisected until |BC| = a.
std::array<Vec3, 3> build_triangle(const Surface& s, const std::array<double, 3>& sides) {
  const auto [a, b, c] = sides;
  const Vec3 o(0.0, 0.0, 1.0);
  const Vec3 pb = s.push(c) * o;
  const Vec3 pc0 = s.push(b) * o;
  auto side_a = [&](double alpha) { return s.distance(pb, rotation_12(alpha) * pc0); };
  double lo = 0.0, hi = pi;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    (side_a(mid) < a ? lo : hi) = mid;
  }
  return {o, pb, rotation_12(0.5 * (lo + hi)) * pc0};
}

template <typename Trig>
TriangleResiduals laws(const std::array<double, 3>& sides, const std::array<double, 3>& ang,
                       Trig sin_side, Trig cos_side, double sign) {
  TriangleResiduals out;
  out.angles = ang;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    out.sines = std::max(out.sines, std::abs(std::sin(ang[i]) * sin_side(sides[j]) -
                                             std::sin(ang[j]) * sin_side(sides[i])));
    const double rhs = cos_side(sides[j]) * cos_side(sides[k]) +
                       sign * sin_side(sides[j]) * sin_side(sides[k]) * std::cos(ang[i]);
    out.cosines = std::max(out.cosines, std::abs(cos_side(sides[i]) - rhs));
    const double printed = cos_side(sides[j]) * cos_side(sides[k]) +
                           sin_side(sides[j]) * sin_side(sides[k]) * std::cos(ang[i]);
    out.cosines_printed = std::max(out.cosines_printed, std::abs(cos_side(sides[i]) - printed));
  }
  return out;
}

std::array<double, 3> triangle_angles(const Surface& s, const std::array<Vec3, 3>& v) {
  return {vertex_angle(s, v[0], v[1], v[2]), vertex_angle(s, v[1], v[2], v[0]),
          vertex_angle(s, v[2], v[0], v[1])};
}

void require_triangle(const std::array<double, 3>& x) {
  for (int i = 0; i < 3; ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) throw DomainError("triangle sides must be positive");
    if (!(x[i] < x[(i + 1) % 3] + x[(i + 2) % 3])) throw DomainError("degenerate triangle");
  }
}

const Surface& sphere_surface() {
  static const Surface s{
      [](const Vec3& x, const Vec3& y) { return x.dot(y); },
      [](const Vec3& x, const Vec3& y) { return std::atan2(x.cross(y).norm(), x.dot(y)); },
      [](double t) { return rotation_13(t); }};
  return s;
}

const Surface& hyperbolic_surface() {
  static const auto lorentz = [](const Vec3& x, const Vec3& y) {
    return x(0) * y(0) + x(1) * y(1) - x(2) * y(2);
  };
  static const Surface s{lorentz,
                         [](const Vec3& x, const Vec3& y) {
                           return std::acosh(std::max(1.0, -lorentz(x, y)));
                         },
                         [](double t) { return boost_13(t); }};
  return s;
}

}  // namespace

TriangleResiduals spherical_triangle(const std::array<double, 3>& sides) {
  require_triangle(sides);
  if (sides[0] + sides[1] + sides[2] >= 2.0 * pi ||
      std::max({sides[0], sides[1], sides[2]}) >= pi) {
    throw DomainError("degenerate triangle: spherical sides need a+b+c < 2 pi and each < pi");
  }
  const Surface& s = sphere_surface();
  const auto angles = triangle_angles(s, build_triangle(s, sides));
  auto sin_side = [](double x) { return std::sin(x); };
  auto cos_side = [](double x) { return std::cos(x); };
  TriangleResiduals out = laws(sides, angles, +sin_side, +cos_side, 1.0);
  out.cosines_printed = out.cosines;
  return out;
}

TriangleResiduals hyperbolic_triangle(const std::array<double, 3>& sides) {
  require_triangle(sides);
  const Surface& s = hyperbolic_surface();
  const auto angles = triangle_angles(s, build_triangle(s, sides));
  auto sinh_side = [](double x) { return std::sinh(x); };
  auto cosh_side = [](double x) { return std::cosh(x); };
  return laws(sides, angles, +sinh_side, +cosh_side, -1.0);
}

TrigReport check_trig_duality(const std::array<double, 3>& sides) {
  return {spherical_triangle(sides), hyperbolic_triangle(sides)};
}

PropertyReport check_trig_suite(std::size_t samples, std::uint64_t seed, double tol) {
  PropertyReport r = make_report("trig-duality", seed, tol);
  Sampler rng(seed);
  double sph = 0.0, hyp = 0.0, printed = 0.0;
  auto draw = [&](double hi, bool spherical) {
    for (;;) {
      const double b = rng.uniform(0.2, hi), c = rng.uniform(0.2, hi);
      const double lo_a = std::abs(b - c) + 0.05;
      const double hi_a = (spherical ? std::min(b + c, 2.0 * pi - b - c) : b + c) - 0.05;
      if (hi_a > lo_a) return std::array<double, 3>{rng.uniform(lo_a, hi_a), b, c};
    }
  };
  run_samples(r, samples, [&](std::size_t) {
    const TriangleResiduals s = spherical_triangle(draw(2.8, true));
    const TriangleResiduals h = hyperbolic_triangle(draw(2.5, false));
    sph = std::max({sph, s.sines, s.cosines});
    hyp = std::max({hyp, h.sines, h.cosines});
    printed = std::max(printed, h.cosines_printed);
    return std::max({s.sines, s.cosines, h.sines, h.cosines});
  });
  add_detail(r, "worst_spherical", sph);
  add_detail(r, "worst_hyperbolic_standard_sign", hyp);
  add_detail(r, "worst_hyperbolic_printed_sign", printed);
  return r;
}

double default_approach_tol(const SpaceDescriptor& space, Embedding embedding) {
  if (is_grassmannian(space)) return 1e-5;
  if (space.oriented && space.n == 1 && embedding != Embedding::F) return 1e-5;
  return 0.0;
}

std::vector<PropertyReport> run_space_suite(const SpaceDescriptor& space, std::size_t samples,
                                            std::uint64_t seed, double tol) {
  auto pick = [tol](double fallback) { return tol > 0.0 ? tol : fallback; };
  std::vector<PropertyReport> out;
  const bool grassmannian = is_grassmannian(space);
  if (grassmannian) out.push_back(check_triple_equality(space, samples, seed, pick(1e-9)));
  for (Embedding e : {Embedding::P, Embedding::G, Embedding::F}) {
    out.push_back(check_equivariance(space, e, samples, seed, pick(1e-9)));
  }
  std::vector<Embedding> images{Embedding::P, Embedding::G, Embedding::F};
  if (space.oriented && space.n == 1) images.push_back(Embedding::B);
  for (Embedding e : images) {
    out.push_back(
        check_image_region(space, e, samples, seed, 1.0 - 1e-6, default_approach_tol(space, e)));
  }
  out.push_back(check_cut_radius(space, samples, seed, pick(1e-12)));
  out.push_back(check_round_trip(space, samples, seed, pick(1e-9)));
  out.push_back(check_h_independence(space, samples, seed, pick(1e-9)));
  if (grassmannian) {
    out.push_back(check_cut_loci_grassmannian(space, samples, seed, pick(1e-9)));
  }
  if (space.family == Family::RealGrassmannian) {
    out.push_back(check_restriction(space.n, space.m, samples, seed, pick(1e-9)));
  }
  return out;
}

}  // namespace dualspace
