#pragma once

// Unit lattices {A in a : exp A in K} of a maximal flat and the cut radius
// they determine along a flat direction.
//
// A lattice is stored by its generators written in an orthonormal frame of
// the flat, so it is independent of any matrix realization (the SU(3) integral
// lattice below has none in this library).

#include "dualspace/numkernel.hpp"

#include <cstdint>
#include <vector>

namespace dualspace {

class LatticeBasis {
 public:
  // Columns of `generators` are the Z-basis vectors A_1..A_r in an
  // orthonormal frame of the flat. Must be square and of full rank.
  explicit LatticeBasis(RMatrix generators);

  // Realizes a lattice from its Gram matrix (lower Cholesky factor, transposed).
  static LatticeBasis from_gram(const RMatrix& gram);

  Eigen::Index rank() const { return generators_.cols(); }
  const RMatrix& generators() const { return generators_; }
  const RMatrix& gram() const { return gram_; }
  RVector norms() const;

  // Lattice-unit coordinates <-> metric vector in the orthonormal frame.
  RVector to_metric(const RVector& lattice_coords) const { return generators_ * lattice_coords; }
  RVector to_lattice(const RVector& metric) const;

 private:
  RMatrix generators_;
  RMatrix gram_;
};

// A vector of the flat written in the lattice basis, X = sum x_i A_i.
struct FlatCoordinates {
  RVector coords;
};

struct CutRadiusResult {
  double radius = 0.0;
  std::vector<std::int64_t> minimizer;
  bool used_closed_form = false;
};

// Gram matrix equals alpha^2 I (relative tolerance) for the given generators.
// No lattice reduction is attempted.
bool is_orthonormal(const LatticeBasis& basis, double tol = Tolerances::kStructural);

// 1 / (2 max|x_i|) for a unit vector X = sum x_i A_i of an orthonormal lattice.
double cut_radius_closed(const LatticeBasis& basis, const FlatCoordinates& unit);

// 1 / (2 max|x_i|) without checking that the lattice is orthonormal. Only
// meaningful for orthonormal lattices; kept to exhibit where it goes wrong.
double naive_cut_radius(const LatticeBasis& basis, const FlatCoordinates& unit);

// Exact min over nonzero lattice vectors A of <A,A> / (2|<X,A>|), enumerated in
// shells of increasing |m|_1 and pruned with |A| < 2 * best. The minimizer is
// returned with its first nonzero entry positive; ties go to the
// lexicographically smallest integer vector.
CutRadiusResult cut_radius_brute(const LatticeBasis& basis, const FlatCoordinates& unit);

// Closed form when the generators are orthonormal, brute force otherwise.
CutRadiusResult cut_radius(const LatticeBasis& basis, const FlatCoordinates& unit);

// |X| < fraction * cut_radius(X / |X|). The zero vector is inside.
bool in_half_region(const LatticeBasis& basis, const FlatCoordinates& x, double fraction);

// Value of <A,A> / (2|<X,A>|) for the lattice vector A = sum m_i A_i.
double cut_ratio(const LatticeBasis& basis, const FlatCoordinates& unit,
                 const std::vector<std::int64_t>& m);

// Integral lattice of SU(3) ({A : exp A = e} in a maximal torus), the A2
// coroot lattice with Gram 2 pi^2 [[2, -1], [-1, 2]] under -1/2 tr(XY).
LatticeBasis su3_integral_lattice();

// The two SU(3) torus generators as diagonal anti-Hermitian 3x3 matrices, in
// the same order as su3_integral_lattice().
std::vector<Matrix> su3_torus_generators();

}  // namespace dualspace
