// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "dualspace/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

using namespace dualspace;
using std::numbers::pi;

namespace {

constexpr double kTolTanh = 1e-10;
constexpr double kTolTriple = 1e-9;
constexpr double kTolCutRadius = 1e-12;
constexpr double kSu3Disagreement = 1e-6;
constexpr double kNearSigma = 1.0 - 1e-6;
constexpr double kApproachTol = 1e-5;
constexpr double kSupT = 20.0;
constexpr double kBfGap = 1e-3;
constexpr double kTolEquivariance = 1e-9;
constexpr double kTolCutLoci = 1e-9;
constexpr double kTolRestriction = 1e-9;
constexpr double kTolTrig = 1e-8;
constexpr double kTolRoundTrip = 1e-9;

constexpr double kRuntime1 = 1.0;
constexpr double kRuntime2 = 30.0;

struct Outcome {
  bool passed = true;
  std::string summary;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

struct Worst {
  double residual = 0.0;
  std::size_t failures = 0;
  std::size_t samples = 0;

  void add(const PropertyReport& r) {
    residual = std::max(residual, r.worst_residual);
    failures += r.failures;
    samples += r.samples;
  }
};

std::vector<SpaceDescriptor> grassmannians() {
  std::vector<SpaceDescriptor> out;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 4}}) {
    out.push_back(make_space(Family::RealGrassmannian, n, m));
  }
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
    out.push_back(make_space(Family::ComplexGrassmannian, n, m));
  }
  return out;
}

std::vector<SpaceDescriptor> all_spaces() {
  std::vector<SpaceDescriptor> out = grassmannians();
  out.push_back(make_space(Family::CircleSphere, 1, 2));
  out.push_back(make_space(Family::CircleSphere, 1, 3));
  out.push_back(make_space(Family::OrientedTwoPlane, 2, 2));
  out.push_back(make_space(Family::OrientedTwoPlane, 2, 3));
  return out;
}

Outcome criterion1() {
  const auto start = Clock::now();
  const auto s = make_space(Family::RealGrassmannian, 1, 1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = -5.0 + 10.0 * i / 99.0;
    RMatrix boost(2, 2);
    boost << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
    const GroupElement a = make_group_element(s, Matrix(boost), Side::Noncompact);
    for (const SubspacePoint& p : {p_embed(s, a), g_embed_point(s, a), f_embed(s, a)}) {
      const RMatrix r = p.rep.real();
      const double tan_theta = -r(1, 0) / r(0, 0);
      worst = std::max(worst, std::abs(tan_theta + std::tanh(t)));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= kTolTanh && elapsed < kRuntime1,
          fmt("O(1,1) p,g,f at 100 t in [-5,5]: max|tan(theta)+tanh(t)| = %.3e (tol %.0e), %.3f s",
              worst, kTolTanh, elapsed)};
}

Outcome criterion2() {
  const auto start = Clock::now();
  Worst w;
  for (const auto& s : grassmannians()) w.add(check_triple_equality(s, 200, kDefaultSeed, kTolTriple));
  const double elapsed = seconds_since(start);
  return {w.failures == 0 && elapsed < kRuntime2,
          fmt("p = g = f on 8 Grassmannians x 200 cosets: worst projector distance %.3e "
              "(tol %.0e), %zu failures, %.2f s",
              w.residual, kTolTriple, w.failures, elapsed)};
}

Outcome criterion3() {
  Worst w;
  for (const auto& s : grassmannians()) w.add(check_cut_radius(s, 1000, kDefaultSeed, kTolCutRadius));

  const LatticeBasis su3 = su3_integral_lattice();
  Sampler sampler(kDefaultSeed);
  double biggest = 0.0;
  int disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    const FlatCoordinates unit{su3.to_lattice(sampler.unit_vector(2))};
    const double gap =
        std::abs(naive_cut_radius(su3, unit) - cut_radius_brute(su3, unit).radius);
    biggest = std::max(biggest, gap);
    if (gap > kSu3Disagreement) ++disagreements;
  }
  return {w.failures == 0 && disagreements > 0,
          fmt("cut radius brute vs closed form, 8 spaces x 1000 directions: worst %.3e "
              "(tol %.0e); SU(3) naive formula off on %d/200 directions (max gap %.4f)",
              w.residual, kTolCutRadius, disagreements, biggest)};
}

Outcome criterion4() {
  std::size_t failures = 0, samples = 0;
  double worst_gap = 0.0, min_gap = 1.0;
  for (const auto& s : grassmannians()) {
    for (Embedding e : {Embedding::F, Embedding::P}) {
      const PropertyReport r = check_image_region(s, e, 500, kDefaultSeed, kNearSigma, kApproachTol);
      failures += r.failures;
      samples += r.samples;
      for (const auto& [name, value] : r.details) {
        if (name == "worst_near_boundary_gap") worst_gap = std::max(worst_gap, value);
        if (name == "min_gap") min_gap = std::min(min_gap, value);
      }
    }
  }
  return {failures == 0,
          fmt("f and p images space-like and strictly inside 1/2 region, %zu samples: "
              "%zu violations, min gap %.3e, worst near-boundary gap %.3e (tol %.0e)",
              samples, failures, min_gap, worst_gap, kApproachTol)};
}

Outcome criterion5() {
  const auto s = make_space(Family::CircleSphere, 1, 2);
  double sup_b = 0.0, sup_f = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = kSupT * i / 2000.0;
    sup_b = std::max(sup_b, b_embed_rank1(t));
  }
  auto f_flat = [&](double t) {
    RMatrix y = RMatrix::Zero(2, 1);
    y(0, 0) = std::tanh(t / s.metric_scale);
    const GroupElement a{Side::Noncompact, transitivity_element(s, Matrix(y))};
    return s.metric_scale * std::abs(log_compact(s, f_embed(s, a)).cartan_coords(0));
  };
  for (int i = 0; i <= 200; ++i) sup_f = std::max(sup_f, f_flat(kSupT * i / 200.0));
  const double gap = std::abs(b_embed_rank1(1.0) - f_flat(1.0));
  const double fb = expected_image_fraction(s, Embedding::B);
  const double ff = expected_image_fraction(s, Embedding::F);
  const bool ok = sup_b <= pi / 2 && sup_f <= pi && std::abs(sup_f - 2 * sup_b) < 1e-3 &&
                  gap > kBfGap && ff == 2 * fb;
  return {ok, fmt("sphere: sup b = %.12f <= pi/2, sup f = %.12f <= pi (ratio %.6f), "
                  "|b(1)-f(1)| = %.6f > %.0e, image fractions %.2f vs %.2f",
                  sup_b, sup_f, sup_f / sup_b, gap, kBfGap, fb, ff)};
}

Outcome criterion6() {
  Worst w;
  const auto spaces = all_spaces();
  for (const auto& s : spaces) {
    for (Embedding e : {Embedding::P, Embedding::G, Embedding::F}) {
      w.add(check_equivariance(s, e, 200, kDefaultSeed, kTolEquivariance));
    }
  }
  return {w.failures == 0, fmt("K-equivariance of p,g,f on %zu spaces x 200 pairs: worst %.3e "
                               "(tol %.0e), %zu failures",
                               spaces.size(), w.residual, kTolEquivariance, w.failures)};
}

Outcome criterion7() {
  const PropertyReport r =
      check_cut_loci_grassmannian(make_space(Family::RealGrassmannian, 2, 3), 100, kDefaultSeed,
                                  kTolCutLoci, 0.01);
  return {r.passed(), fmt("Gr(2,3) cut loci on 100 directions: %zu violations, worst %.3e",
                          r.failures, r.worst_residual)};
}

Outcome criterion8() {
  Worst w;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
    w.add(check_restriction(n, m, 100, kDefaultSeed, kTolRestriction));
  }
  return {w.failures == 0, fmt("real f vs complex f on real cosets, 4 shapes x 100: worst %.3e "
                               "(tol %.0e)",
                               w.residual, kTolRestriction)};
}

Outcome criterion9() {
  const PropertyReport r = check_trig_suite(100, kDefaultSeed, kTolTrig);
  double sph = 0.0, hyp = 0.0, printed = 0.0;
  for (const auto& [name, value] : r.details) {
    if (name == "worst_spherical") sph = value;
    if (name == "worst_hyperbolic_standard_sign") hyp = value;
    if (name == "worst_hyperbolic_printed_sign") printed = value;
  }
  return {r.passed(), fmt("100+100 triangles: spherical %.3e, hyperbolic %.3e (tol %.0e); "
                          "printed-sign hyperbolic residual %.3e (reported only)",
                          sph, hyp, kTolTrig, printed)};
}

Outcome criterion10() {
  Worst w;
  const auto spaces = all_spaces();
  for (const auto& s : spaces) w.add(check_round_trip(s, 500, kDefaultSeed, kTolRoundTrip));
  return {w.failures == 0, fmt("exp(log L) = L on %zu spaces x 500 points: worst %.3e (tol %.0e)",
                               spaces.size(), w.residual, kTolRoundTrip)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2zu  %s\n", o.passed ? "PASS" : "FAIL", i + 1, o.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
