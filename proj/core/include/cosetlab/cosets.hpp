#pragma once

#include "cosetlab/blockmat.hpp"
#include "cosetlab/random_stream.hpp"

#include <string>
#include <string_view>

namespace cosetlab {

/// Which pair (G_N, K_N) is under study.
enum class FamilyKind {
  unitary_orthogonal,   // G = U(alpha + m(k+N)), K = O(k+N) on m diagonal copies; double cosets
  unitary_conjugation,  // G = U(alpha + k + N), K = U(k+N); K-conjugacy classes
  symmetric,            // G = S(alpha + m(k+N)), K = S(k+N) on m diagonal copies; double cosets
};

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

struct GroupFamily {
  FamilyKind kind = FamilyKind::unitary_orthogonal;
  BlockSpec spec;

  /// Validates the spec; the conjugation family requires m == 1.
  void validate() const;
};

/// The double coset K r K (or the K-conjugacy class of r for the
/// conjugation family) named by its representative r.
struct CosetTarget {
  BlockMatrix representative;
  GroupFamily family;

  void validate() const;
};

/// Infinite-limit product of g, h in U(alpha + k) (spec m = 1, N = 0).
/// Returns the (alpha + 2k)-representative with blocks
///   [ ap  b  aq ]
///   [ cp  d  cq ]
///   [ r   0  t  ]
/// laid out as BlockSpec{alpha, k, k, 1}.
BlockMatrix circ_infinite(const BlockMatrix& g, const BlockMatrix& h);

/// Product of operator colligations. The representative formula is the same
/// as circ_infinite; only the equivalence relation (conjugation) differs.
BlockMatrix circ_colligation(const BlockMatrix& g, const BlockMatrix& h);

/// Finite-N product. g, h are elements of the embedded subgroup
/// U(alpha + m k) (size spec.small_dim()). The representative is
/// embed(g) J_N embed(h), or embed(g) J_N embed(h) J_N^{-1} for the
/// conjugation family. Throws if N < k.
CosetTarget circ_n(const BlockMatrix& g, const BlockMatrix& h, const BlockSpec& spec, FamilyKind kind);

/// Draws one element of K_N for the family, returned as its (k+N)-square
/// block (real orthogonal, unitary, or a permutation matrix).
Matrix draw_k_block(const GroupFamily& family, RandomStream& rng);

/// One sample from a convolution measure, kept in factored form:
///   value == outer_left * core * outer_right
/// where core = G X H (double-coset families) or G X H X^{-1} (conjugation),
/// G = embed(g), H = embed(h), X = embed_k(middle_block).
/// For the reduced measure the outer factors are identities.
struct ConvolutionDraw {
  BlockMatrix value;
  BlockMatrix outer_left;
  BlockMatrix outer_right;
  Matrix middle_block;
};

/// delta_g * kappa_N * delta_h (or x -> g x h x^{-1} for conjugation).
ConvolutionDraw draw_tau_tilde(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                               RandomStream& rng);
/// kappa_N * delta_g * kappa_N * delta_h * kappa_N, or (x, z) -> z g x h x^{-1} z^{-1}.
/// The middle draw is taken first, so the core agrees with draw_tau_tilde on
/// the same stream.
ConvolutionDraw draw_tau_full(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                              RandomStream& rng);

BlockMatrix sample_tau_tilde(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                             RandomStream& rng);
BlockMatrix sample_tau_full(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                            RandomStream& rng);

/// Embedding of a K_N block for the family (exact for permutations).
BlockMatrix embed_k_element(const Matrix& block, const GroupFamily& family);

}  // namespace cosetlab
