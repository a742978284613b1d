#include "cosetlab/cosets.hpp"

#include "cosetlab/errors.hpp"
#include "cosetlab/haar.hpp"

namespace cosetlab {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::unitary_orthogonal:
      return "unitary_orthogonal";
    case FamilyKind::unitary_conjugation:
      return "unitary_conjugation";
    case FamilyKind::symmetric:
      return "symmetric";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "unitary_orthogonal" || name == "orthogonal") return FamilyKind::unitary_orthogonal;
  if (name == "unitary_conjugation" || name == "conjugation") return FamilyKind::unitary_conjugation;
  if (name == "symmetric") return FamilyKind::symmetric;
  throw InvalidArgument("unknown family '" + std::string(name) +
                        "' (expected unitary_orthogonal, unitary_conjugation or symmetric)");
}

void GroupFamily::validate() const {
  spec.validate();
  if (kind == FamilyKind::unitary_conjugation && spec.m != 1) {
    throw InvalidArgument("the conjugation family requires m = 1");
  }
}

void CosetTarget::validate() const {
  family.validate();
  if (representative.dim() != family.spec.dim()) {
    throw DimensionError("CosetTarget: representative has size " + std::to_string(representative.dim()) +
                         ", family needs " + std::to_string(family.spec.dim()));
  }
  if (family.kind == FamilyKind::symmetric && !representative.is_permutation()) {
    throw InvalidArgument("CosetTarget: symmetric family needs an exact permutation representative");
  }
}

namespace {

// Dense 0-1 inputs are promoted to exact permutations.
BlockMatrix exact_if_possible(const BlockMatrix& x) {
  if (x.is_permutation()) return x;
  if (auto p = Permutation::from_matrix(x.entries())) return BlockMatrix(*p, x.spec());
  return x;
}

BlockMatrix require_permutation(const BlockMatrix& x, const char* what) {
  auto exact = exact_if_possible(x);
  if (!exact.is_permutation()) {
    throw InvalidArgument(std::string(what) + ": symmetric family needs permutation inputs");
  }
  return exact;
}

BlockSpec infinite_input_spec(const BlockMatrix& g, const BlockMatrix& h, const char* what) {
  const auto& gs = g.require_spec();
  const auto& hs = h.require_spec();
  if (!(gs == hs)) throw DimensionError(std::string(what) + ": g and h carry different block specs");
  if (gs.m != 1 || gs.n_tail != 0) {
    throw DimensionError(std::string(what) + ": inputs must be laid out as alpha + k (m = 1, N = 0)");
  }
  return gs;
}

BlockMatrix circ_blocks(const BlockMatrix& g, const BlockMatrix& h, const char* what) {
  const auto spec = infinite_input_spec(g, h, what);
  const int a = spec.alpha;
  const int k = spec.k;
  const auto& G = g.entries();
  const auto& H = h.entries();

  const auto ga = G.topLeftCorner(a, a);
  const auto gb = G.topRightCorner(a, k);
  const auto gc = G.bottomLeftCorner(k, a);
  const auto gd = G.bottomRightCorner(k, k);
  const auto hp = H.topLeftCorner(a, a);
  const auto hq = H.topRightCorner(a, k);
  const auto hr = H.bottomLeftCorner(k, a);
  const auto ht = H.bottomRightCorner(k, k);

  Matrix out = Matrix::Zero(a + 2 * k, a + 2 * k);
  out.block(0, 0, a, a) = ga * hp;
  out.block(0, a, a, k) = gb;
  out.block(0, a + k, a, k) = ga * hq;
  out.block(a, 0, k, a) = gc * hp;
  out.block(a, a, k, k) = gd;
  out.block(a, a + k, k, k) = gc * hq;
  out.block(a + k, 0, k, a) = hr;
  out.block(a + k, a + k, k, k) = ht;

  const BlockSpec out_spec{a, k, k, 1};
  if (g.is_permutation() && h.is_permutation()) {
    if (auto p = Permutation::from_matrix(out)) return BlockMatrix(*p, out_spec);
  }
  return BlockMatrix(std::move(out), out_spec);
}

BlockMatrix core_product(const BlockMatrix& G, const BlockMatrix& X, const BlockMatrix& H, FamilyKind kind) {
  if (kind == FamilyKind::unitary_conjugation) return G * X * H * X.inverse();
  return G * X * H;
}

}  // namespace

BlockMatrix circ_infinite(const BlockMatrix& g, const BlockMatrix& h) {
  return circ_blocks(g, h, "circ_infinite");
}

BlockMatrix circ_colligation(const BlockMatrix& g, const BlockMatrix& h) {
  return circ_blocks(g, h, "circ_colligation");
}

CosetTarget circ_n(const BlockMatrix& g, const BlockMatrix& h, const BlockSpec& spec, FamilyKind kind) {
  GroupFamily family{kind, spec};
  family.validate();
  BlockMatrix gg = exact_if_possible(g);
  BlockMatrix hh = exact_if_possible(h);
  if (kind == FamilyKind::symmetric) {
    gg = require_permutation(g, "circ_n");
    hh = require_permutation(h, "circ_n");
  }
  const auto G = embed(gg, spec);
  const auto H = embed(hh, spec);
  const auto J = build_jn(spec);
  CosetTarget target{core_product(G, J, H, kind), family};
  target.validate();
  return target;
}

Matrix draw_k_block(const GroupFamily& family, RandomStream& rng) {
  const int n = family.spec.copy_size();
  switch (family.kind) {
    case FamilyKind::unitary_orthogonal:
      return haar_orthogonal(n, rng).cast<std::complex<double>>();
    case FamilyKind::unitary_conjugation:
      return haar_unitary(n, rng);
    case FamilyKind::symmetric:
      return uniform_permutation(n, rng).matrix();
  }
  return {};
}

BlockMatrix embed_k_element(const Matrix& block, const GroupFamily& family) {
  if (family.kind == FamilyKind::symmetric) {
    auto p = Permutation::from_matrix(block);
    if (!p) throw InvalidArgument("embed_k_element: symmetric family needs a permutation block");
    return embed_k(*p, family.spec);
  }
  return embed_k(block, family.spec);
}

namespace {

struct Factors {
  BlockMatrix G;
  BlockMatrix H;
};

Factors embedded_factors(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family) {
  family.validate();
  if (family.kind == FamilyKind::symmetric) {
    return {embed(require_permutation(g, "sampler"), family.spec),
            embed(require_permutation(h, "sampler"), family.spec)};
  }
  return {embed(exact_if_possible(g), family.spec), embed(exact_if_possible(h), family.spec)};
}

}  // namespace

ConvolutionDraw draw_tau_tilde(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                               RandomStream& rng) {
  const auto [G, H] = embedded_factors(g, h, family);
  Matrix x = draw_k_block(family, rng);
  const auto X = embed_k_element(x, family);
  const auto identity = BlockMatrix::identity(family.spec);
  return ConvolutionDraw{core_product(G, X, H, family.kind), identity, identity, std::move(x)};
}

ConvolutionDraw draw_tau_full(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                              RandomStream& rng) {
  const auto [G, H] = embedded_factors(g, h, family);
  Matrix x = draw_k_block(family, rng);
  const auto X = embed_k_element(x, family);
  const auto core = core_product(G, X, H, family.kind);
  if (family.kind == FamilyKind::unitary_conjugation) {
    const auto Z = embed_k_element(draw_k_block(family, rng), family);
    const auto Zinv = Z.inverse();
    return ConvolutionDraw{Z * core * Zinv, Z, Zinv, std::move(x)};
  }
  const auto left = embed_k_element(draw_k_block(family, rng), family);
  const auto right = embed_k_element(draw_k_block(family, rng), family);
  return ConvolutionDraw{left * core * right, left, right, std::move(x)};
}

BlockMatrix sample_tau_tilde(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                             RandomStream& rng) {
  return draw_tau_tilde(g, h, family, rng).value;
}

BlockMatrix sample_tau_full(const BlockMatrix& g, const BlockMatrix& h, const GroupFamily& family,
                            RandomStream& rng) {
  return draw_tau_full(g, h, family, rng).value;
}

}  // namespace cosetlab
