#pragma once

// Catalog of the classical symmetric spaces handled by the library.
//
// Every space is realized on R^{n+m} (or C^{n+m}) with base point
// L_o = [I_n; 0_m]. The compact side is G^c/K with G^c orthogonal/unitary,
// the noncompact side is G^n/K with G^n preserving J = diag(I_n, -I_m), and
// K is block diagonal. The maximal flat is spanned by the first `rank`
// generators R_{i,n+i} (compact) and R~_{i,n+i} (noncompact):
//
//   R_{i,j}  = E_{i,j} - E_{j,i},    R~_{i,j} = E_{i,j} + E_{j,i}.
//
// Families:
//   RealGrassmannian(n, m)     O(n+m)/O(n)O(m), dual O(n,m)/O(n)O(m)
//   ComplexGrassmannian(n, m)  U(n+m)/U(n)U(m), dual U(n,m)/U(n)U(m)
//   OrientedTwoPlane(n, m)     oriented n-planes, n in {1, 2}:
//                              SO(n+m)/SO(n)SO(m), dual SO_0(n,m)/SO(n)SO(m)
//   CircleSphere(1, m)         S^m = SO(1+m)/SO(m), dual SO_0(1,m)/SO(m)
//
// OrientedTwoPlane with n = 1 is the same space as CircleSphere(1, m).

#include "dualspace/lattice.hpp"
#include "dualspace/numkernel.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualspace {

enum class Family { RealGrassmannian, ComplexGrassmannian, OrientedTwoPlane, CircleSphere };
enum class Side { Compact, Noncompact };

const char* to_string(Family family);
const char* to_string(Side side);
// Accepts "gr-real", "gr-complex", "oriented", "sphere" (and the enum names).
std::optional<Family> parse_family(std::string_view text);

struct SpaceDescriptor {
  Family family;
  Field field;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  Eigen::Index rank = 0;
  bool oriented = false;
  // Length of each R_{i,n+i} in the metric: <X,Y> = scale^2 * (-1/2) Re tr(XY)
  // on the compact side and scale^2 * (+1/2) Re tr(XY) on the noncompact side.
  double metric_scale = 1.0;
  Matrix form_j;
  Matrix base_point;
  std::vector<Matrix> cartan_basis;     // R_{i,n+i}, i < rank
  std::vector<Matrix> noncompact_basis; // R~_{i,n+i}, i < rank
  // Lattice generator j is sum_i lattice_in_cartan(i, j) R_{i,n+i}.
  RMatrix lattice_in_cartan;
  LatticeBasis lattice;
  BlockShape parabolic;

  Eigen::Index dim() const { return n + m; }
  std::string label() const;

  // Cartan-basis coordinates (coefficients of R_{i,n+i}) <-> lattice units.
  RVector cartan_to_lattice(const RVector& cartan) const;
  RVector lattice_to_cartan(const RVector& lattice_coords) const;
};

struct TangentVector {
  Side side;
  Matrix x;
};

// Column span of `rep`. Oriented families also carry an orientation sign
// relative to the column order of `rep`; unoriented points keep 0.
struct SubspacePoint {
  Matrix rep;
  int orientation = 0;
};

SpaceDescriptor make_space(Family family, Eigen::Index n, Eigen::Index m);

// A^H J A = J (J = I on the compact side); oriented families additionally
// need det A = +1 and, on the noncompact side, the identity component.
bool in_group(const SpaceDescriptor& space, const Matrix& a, Side side,
              double tol = Tolerances::kStructural);

// Block diagonal (n|m) with each block in the compact group of its size
// (special orthogonal blocks for oriented families).
bool in_isotropy(const SpaceDescriptor& space, const Matrix& k,
                 double tol = Tolerances::kStructural);

bool in_tangent_space(const SpaceDescriptor& space, const TangentVector& v,
                      double tol = Tolerances::kReconstruction);

// Metric inner product on the tangent space of the given side.
double metric_inner(const SpaceDescriptor& space, Side side, const Matrix& x, const Matrix& y);

// The group element ((I-Y^H Y)^{-1/2}, Y^H (I-Y Y^H)^{-1/2}; Y (I-Y^H Y)^{-1/2}, (I-Y Y^H)^{-1/2})
// carrying L_o to span [I; Y]. Y is m x n with I - Y^H Y positive definite.
Matrix transitivity_element(const SpaceDescriptor& space, const Matrix& y);

// X = sum_i c_i B_i with B the Cartan basis of the given side.
Matrix flat_matrix(const SpaceDescriptor& space, Side side, const RVector& cartan_coords);

struct FlatDecomposition {
  Matrix k;               // in K
  RVector cartan_coords;  // coefficients of the flat generators, descending |.|
  FlatCoordinates h;      // same vector in lattice units
};

// X = Ad k (sum_i h_i A_i). Singular values are nonnegative and descending;
// oriented families may carry a sign on the last coordinate so that k stays
// in SO x SO.
FlatDecomposition flat_decompose(const SpaceDescriptor& space, const TangentVector& v);

Matrix conjugate(const Matrix& k, const Matrix& x);  // k x k^H

// k . L for k in K (orientation sign unchanged).
SubspacePoint act(const Matrix& k, const SubspacePoint& point);

// Frobenius distance of projectors; +infinity when two oriented points span
// the same subspace with opposite orientations.
double point_distance(const SubspacePoint& a, const SubspacePoint& b);

// Same point up to tolerance (projector distance and orientation).
bool same_point(const SubspacePoint& a, const SubspacePoint& b, double tol = 1e-9);

SubspacePoint base_point(const SpaceDescriptor& space);

}  // namespace dualspace
