#pragma once

// Property suites: each check draws reproducible random samples, evaluates a
// pointwise identity and reports the worst residual.

#include "dualspace/embeddings.hpp"
#include "dualspace/lattice.hpp"
#include "dualspace/spaces.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dualspace {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct PropertyReport {
  std::string property_name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 0.0;
  // Named auxiliary quantities (margins, counts) in insertion order.
  std::vector<std::pair<std::string, double>> details;

  bool passed() const { return failures == 0; }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double normal();

  // Haar-distributed orthogonal/unitary matrix; det +1 when `special`.
  Matrix haar(Eigen::Index n, Field field, bool special);
  // Random element of K (block diagonal).
  Matrix isotropy(const SpaceDescriptor& space);
  // Y = U diag(sigma) V^H with sigma_max uniform in [0, sigma_hi] and the
  // other singular values uniform below it.
  Matrix y_block(const SpaceDescriptor& space, double sigma_hi = 0.95);
  // Same, but with the largest singular value fixed.
  Matrix y_block_with_top(const SpaceDescriptor& space, double sigma_top);
  // transitivity_element(y) k for a random k in K.
  GroupElement coset(const SpaceDescriptor& space, const Matrix& y);
  // Uniform unit vector of R^r.
  RVector unit_vector(Eigen::Index r);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// p, g and f compared pairwise by projector distance on random cosets.
PropertyReport check_triple_equality(const SpaceDescriptor& space, std::size_t samples,
                                     std::uint64_t seed = kDefaultSeed, double tol = 1e-9);

// distance(embed(k x), k embed(x)) for random (k, x); embedding in {p, g, f}.
PropertyReport check_equivariance(const SpaceDescriptor& space, Embedding embedding,
                                  std::size_t samples, std::uint64_t seed = kDefaultSeed,
                                  double tol = 1e-9);

// Expected image fraction of the cut region: 1/2, or 1/4 for p, g and b on
// the oriented-line spaces.
double expected_image_fraction(const SpaceDescriptor& space, Embedding embedding);

// Every image point is strictly inside the expected fraction of the cut
// region (through its compact log) and is space-like; f images are only
// required to be space-like on the Grassmannians. Half of the samples put the
// largest singular value at `near_sigma`; when `approach_tol` > 0 those
// samples must also end within approach_tol (lattice units) of the boundary.
PropertyReport check_image_region(const SpaceDescriptor& space, Embedding embedding,
                                  std::size_t samples, std::uint64_t seed = kDefaultSeed,
                                  double near_sigma = 1.0 - 1e-6, double approach_tol = 0.0);

// Rank drop of the top block exactly at the cut radius and full rank just
// before it, along random flat directions of a Grassmannian.
PropertyReport check_cut_loci_grassmannian(const SpaceDescriptor& space, std::size_t samples,
                                           std::uint64_t seed = kDefaultSeed,
                                           double tol = 1e-9, double step_back = 0.01);

// Brute-force cut radius against the closed form on random unit directions.
PropertyReport check_cut_radius(const SpaceDescriptor& space, std::size_t samples,
                                std::uint64_t seed = kDefaultSeed, double tol = 1e-12);

// Real Grassmannian f against complex Grassmannian f on real cosets.
PropertyReport check_restriction(Eigen::Index n, Eigen::Index m, std::size_t samples,
                                 std::uint64_t seed = kDefaultSeed, double tol = 1e-9);

// Tangent vectors with all flat coordinates equal admit many decompositions
// X = Ad k (flat); f computed through k0 and through k0 diag(W, W + I) (W
// random) must agree with the library's own choice.
PropertyReport check_h_independence(const SpaceDescriptor& space, std::size_t samples,
                                    std::uint64_t seed = kDefaultSeed, double tol = 1e-9);

// exp(log L) = L through both the noncompact and the compact logarithm.
PropertyReport check_round_trip(const SpaceDescriptor& space, std::size_t samples,
                                std::uint64_t seed = kDefaultSeed, double tol = 1e-9);

// Every property that applies to `space`, with default tolerances: triple
// equality (Grassmannians), equivariance and image region for each
// embedding, cut radius, round trip, h-independence, cut loci
// (Grassmannians) and restriction (real Grassmannians). A positive `tol`
// replaces the default tolerance of every check that takes one.
std::vector<PropertyReport> run_space_suite(const SpaceDescriptor& space, std::size_t samples,
                                            std::uint64_t seed = kDefaultSeed, double tol = 0.0);

// Boundary-approach tolerance used by the suite, 0 where the image does not
// reach the region boundary along a single singular value.
double default_approach_tol(const SpaceDescriptor& space, Embedding embedding);

struct TriangleResiduals {
  std::array<double, 3> angles{};  // A, B, C opposite a, b, c
  double sines = 0.0;
  double cosines = 0.0;
  double cosines_printed = 0.0;    // hyperbolic only: "+ sinh b sinh c cos A"
};

struct TrigReport {
  TriangleResiduals spherical;
  TriangleResiduals hyperbolic;
};

// Builds the triangle with sides (a, b, c) on S^2 with SO(3) rotations and on
// H^2 with SO(2,1) boosts, measures its angles and evaluates both laws. A
// side triple that fits on only one of the two surfaces throws DomainError.
TrigReport check_trig_duality(const std::array<double, 3>& sides);

// One surface at a time.
TriangleResiduals spherical_triangle(const std::array<double, 3>& sides);
TriangleResiduals hyperbolic_triangle(const std::array<double, 3>& sides);

// Random triangles; worst residual over both laws on both surfaces (standard
// sign). The printed-sign residual is reported in the details only.
PropertyReport check_trig_suite(std::size_t samples, std::uint64_t seed = kDefaultSeed,
                                double tol = 1e-8);

}  // namespace dualspace
