#pragma once

// Embeddings of a noncompact symmetric space M^n = G^n/K into its compact
// dual M^c = G^c/K:
//
//   p  space-like embedding:   A K  ->  span(A L_o)
//   g  parabolic factorization: A K -> A B K with B block upper-triangular
//      and A B in the compact group (Gram-Schmidt)
//   f  exp^c_o o h o (exp^n_o)^{-1}, with h acting on lattice coordinates of
//      a maximal flat by x -> -arctan(tanh(pi x)) / pi and extended by Ad K
//   b  Borel/stereographic embedding on the rank-one flat, t -> 2 arctan(tanh(t/2))

#include "dualspace/lattice.hpp"
#include "dualspace/spaces.hpp"

#include <optional>
#include <string_view>

namespace dualspace {

enum class Embedding { P, G, F, B };

const char* to_string(Embedding e);
std::optional<Embedding> parse_embedding(std::string_view text);

struct GroupElement {
  Side side;
  Matrix a;
};

// Validates membership in G^c or G^n; throws DomainError otherwise.
GroupElement make_group_element(const SpaceDescriptor& space, const Matrix& a, Side side);

// Image of h on a flat, in lattice units of the compact flat. Every
// coordinate lies in (-1/4, 1/4).
struct HMapImage {
  FlatCoordinates coords;
};

double h_coordinate(double x);
HMapImage h_flat(const FlatCoordinates& noncompact);

// Intermediate stages of f for one point.
struct FEmbedding {
  SubspacePoint point;         // f(x) in M^c
  TangentVector noncompact;    // log of x
  FlatDecomposition flat;      // noncompact tangent = Ad k (flat)
  HMapImage image;             // h on the flat, lattice units
  RVector compact_cartan;      // same, as coefficients of R_{i,n+i}
  TangentVector compact;       // Ad k (compact flat vector)
};

FEmbedding f_embed_detailed(const SpaceDescriptor& space, const SubspacePoint& noncompact_point);
SubspacePoint f_embed(const SpaceDescriptor& space, const SubspacePoint& noncompact_point);
SubspacePoint f_embed(const SpaceDescriptor& space, const GroupElement& a);

// Q from block_qr(A, parabolic shape); Q in the compact group.
GroupElement g_embed(const SpaceDescriptor& space, const GroupElement& a);
SubspacePoint g_embed_point(const SpaceDescriptor& space, const GroupElement& a);

SubspacePoint p_embed(const SpaceDescriptor& space, const GroupElement& a);

// L^H J L positive definite.
bool space_like(const SpaceDescriptor& space, const SubspacePoint& l);

double b_embed_rank1(double t);

// b on the oriented-line spaces: the flat of length t through the noncompact
// point goes to the compact flat point at distance b_embed_rank1(t), along the
// same K-direction. DomainError for every other family.
SubspacePoint b_embed(const SpaceDescriptor& space, const SubspacePoint& noncompact_point);

// Rejects cosets whose normalized lower block has a singular value at or
// above this bound.
inline constexpr double kBoundaryLimit = 1.0 - 1e-13;

// X in m_n with exp(X) L_o = L. Throws DomainError when L is not space-like
// and NumericalError near the boundary of the space-like region.
TangentVector log_noncompact(const SpaceDescriptor& space, const SubspacePoint& l);

// exp(X) L_o (orientation +1 for oriented families).
SubspacePoint exp_point(const SpaceDescriptor& space, const TangentVector& x);

// Inverse of the compact exponential on the interior of the cut locus:
// L = exp(Ad k (sum theta_i R_{i,n+i})) L_o with the lattice coordinates of
// theta inside the cut region. Oriented planes (n = 2) are handled in the
// positively oriented cell only.
FlatDecomposition log_compact(const SpaceDescriptor& space, const SubspacePoint& l);

// |X| / cut_radius(X / |X|) for a flat vector given in lattice units: the
// smallest fraction f with the vector on the boundary of f * R.
double region_fraction(const SpaceDescriptor& space, const FlatCoordinates& x);

// Y = L_2 L_1^{-1}, the affine chart of span L around the base point.
Matrix lower_block_normalized(const SpaceDescriptor& space, const SubspacePoint& l);

}  // namespace dualspace
