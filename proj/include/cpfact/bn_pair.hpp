// Split BN-pair data for small matrix groups and the unipotent
// factorizations G = (UU^-)^2 and G = UU^-U.
//
// U is the upper unitriangular subgroup, H the diagonal subgroup, n0 an
// antidiagonal matrix and U^- = U^{n0}. SU(3,3) uses the antidiagonal
// hermitian form, so its U is upper triangular as well.

#ifndef CPFACT_BN_PAIR_HPP_
#define CPFACT_BN_PAIR_HPP_

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "factorize.hpp"
#include "spec_parser.hpp"

namespace cpfact {

struct BNDatum {
  std::string spec;
  GroupPtr group;
  SubgroupSet u, u_minus, h, b;
  Index n0 = 0;
  Index n1 = 0;              // simple reflection; equals n0 in rank 1
  std::size_t weyl_order = 0; // number of (B,B) double cosets
};

namespace impl {

inline const MatrixBackend& matrix_backend(const GroupTable& g) {
  auto* mb = dynamic_cast<const MatrixBackend*>(&g.backend());
  if (!mb)
    throw DomainMismatch("group is not a matrix group");
  return *mb;
}

// Members selected by a predicate on the matrix.
template <class Pred>
SubgroupSet matrix_subgroup(const GroupPtr& g, Pred pred) {
  const auto& mb = matrix_backend(*g);
  Bitset bits(g->order());
  for (Index x = 0; x < g->order(); ++x)
    if (pred(mb.matrix(x)))
      bits.set(x);
  return subgroup_from_bits(g, bits);
}

inline bool upper_unitriangular(const MatrixGF& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j <= i; ++j)
      if (m.at(i, j) != (i == j ? 1 : 0))
        return false;
  return true;
}

inline bool diagonal(const MatrixGF& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (i != j && m.at(i, j) != 0)
        return false;
  return true;
}

inline std::size_t count_double_cosets(const SubgroupSet& b) {
  // sizes only; the support table is not needed
  const GroupTable& G = b.group();
  std::vector<char> seen(G.order(), 0);
  std::size_t count = 0;
  std::vector<Index> stack;
  for (Index x = 0; x < G.order(); ++x) {
    if (seen[x])
      continue;
    ++count;
    seen[x] = 1;
    stack.assign(1, x);
    while (!stack.empty()) {
      Index y = stack.back();
      stack.pop_back();
      for (Index s : b.generators())
        for (Index z : {G.mult(s, y), G.mult(y, s)})
          if (!seen[z]) {
            seen[z] = 1;
            stack.push_back(z);
          }
    }
  }
  return count;
}

inline BNDatum finish_datum(std::string spec, GroupPtr g, SubgroupSet u, SubgroupSet h, Index n0) {
  BNDatum d;
  d.spec = std::move(spec);
  d.group = g;
  d.u = std::move(u);
  d.h = std::move(h);
  d.n0 = d.n1 = n0;
  d.u_minus = conjugate_subgroup(d.u, n0);
  d.b = join(d.h, d.u);
  const std::string where = " (" + d.spec + ")";
  if (d.b.order() != d.h.order() * d.u.order() || !intersection(d.h, d.u).is_trivial())
    throw VerificationFailed("B is not H x| U" + where);
  if (!intersection(d.b, d.u_minus).is_trivial())
    throw VerificationFailed("B meets U^-" + where);
  for (Index x : d.h.generators())
    if (!normalizes(d.u, x) || !normalizes(d.u_minus, x))
      throw VerificationFailed("H does not normalize U and U^-" + where);
  d.weyl_order = count_double_cosets(d.b);
  return d;
}

} // namespace impl

inline BNDatum build_sl2(int q) {
  static const int supported[] = {2, 3, 4, 5, 7, 8, 9};
  if (std::find(std::begin(supported), std::end(supported), q) == std::end(supported))
    throw UnsupportedParameter("SL(2," + std::to_string(q) + ") is not among the supported fields");
  std::string spec = "sl:2," + std::to_string(q);
  auto g = make_group(spec);
  auto u = impl::matrix_subgroup(g, impl::upper_unitriangular);
  auto h = impl::matrix_subgroup(g, impl::diagonal);
  const auto& f = *impl::matrix_backend(*g).field();
  auto n0 = g->index_of({0, 1, f.neg(1), 0});
  if (!n0)
    throw VerificationFailed("antidiagonal element missing from " + spec);
  return impl::finish_datum(spec, g, u, h, *n0);
}

inline BNDatum build_su3_3() {
  auto d = su33_data();
  auto g = make_group("su:3,3");
  auto lookup = [&](const MatrixGF& m) {
    std::vector<int> enc(m.entries().begin(), m.entries().end());
    auto x = g->index_of(enc);
    if (!x)
      throw VerificationFailed("SU(3,3) element missing from the enumeration");
    return *x;
  };
  std::vector<Index> ug, hg;
  for (const auto& m : d.unipotent)
    ug.push_back(lookup(m));
  for (const auto& m : d.torus)
    hg.push_back(lookup(m));
  return impl::finish_datum("su:3,3", g, subgroup_closure(g, ug), subgroup_closure(g, hg),
                            lookup(d.n0));
}

inline BNDatum build_sl3_2() {
  auto g = make_group("sl:3,2");
  auto u = impl::matrix_subgroup(g, impl::upper_unitriangular);
  auto h = impl::matrix_subgroup(g, impl::diagonal);
  auto n0 = g->index_of({0, 0, 1, 0, 1, 0, 1, 0, 0});
  return impl::finish_datum("sl:3,2", g, u, h, *n0);
}

// Elements h of H whose double coset U n1 h U meets U^- minus the identity.
struct HTilde {
  std::vector<Index> members;
};

struct Rank1Report {
  HTilde h_tilde;
  bool cond_a = false; // H~ = H
  bool cond_b = false; // U (U^-)* U = U n1 H U
  bool cond_c = false; // (U U^-)^2 = G
  bool agree() const { return cond_a == cond_b && cond_b == cond_c; }
};

inline ElementSet alternating_product(const SubgroupSet& u, const SubgroupSet& um, unsigned k) {
  ElementSet acc = u.as_set();
  for (unsigned i = 1; i < k; ++i)
    acc = setwise_product(acc, i % 2 ? um : u);
  return acc;
}

inline Rank1Report rank1_criterion(const BNDatum& d) {
  if (d.weyl_order != 2)
    throw NotRankOne(d.spec + " has Weyl group of order " + std::to_string(d.weyl_order));
  const GroupTable& G = *d.group;
  // (U,U)-double cosets by closure; the support table is not needed here
  std::vector<std::uint32_t> coset(G.order(), impl::kNoCoset);
  std::uint32_t next = 0;
  std::vector<Index> stack;
  auto id_of = [&](Index x) {
    if (coset[x] != impl::kNoCoset)
      return coset[x];
    std::uint32_t id = next++;
    coset[x] = id;
    stack.assign(1, x);
    while (!stack.empty()) {
      Index y = stack.back();
      stack.pop_back();
      for (Index s : d.u.generators())
        for (Index z : {G.mult(s, y), G.mult(y, s)})
          if (coset[z] == impl::kNoCoset) {
            coset[z] = id;
            stack.push_back(z);
          }
    }
    return id;
  };
  std::set<std::uint32_t> from_minus, from_h;
  for (Index x : d.u_minus.members())
    if (x != 0)
      from_minus.insert(id_of(x));
  Rank1Report r;
  for (Index h : d.h.members()) {
    auto id = id_of(G.mult(d.n1, h));
    from_h.insert(id);
    if (from_minus.count(id))
      r.h_tilde.members.push_back(h);
  }
  r.cond_a = r.h_tilde.members.size() == d.h.order();
  r.cond_b = from_minus == from_h;
  r.cond_c = alternating_product(d.u, d.u_minus, 4).is_full();
  if (!r.agree())
    throw VerificationFailed("rank-one conditions disagree on " + d.spec);
  return r;
}

struct UnipotentReport {
  bool four = false;        // (UU^-)^2 = G
  bool three = false;       // UU^-U = G
  bool h_meets_trivially = false; // H and UU^-U share only the identity
  bool carter = false;      // U self-normalizing
  std::optional<unsigned> gamma; // exact value from the double coset search
  FactorizationWitness witness;
  bool witness_ok = false;
  bool minimal = false;     // witness length equals gamma
};

inline UnipotentReport verify_unipotent_factorization(const BNDatum& d) {
  UnipotentReport r;
  auto uuu = alternating_product(d.u, d.u_minus, 3);
  r.three = uuu.is_full();
  r.four = r.three || setwise_product(uuu, d.u_minus).is_full();
  r.h_meets_trivially = true;
  for (Index x : d.h.members())
    if (x != 0 && uuu.contains(x))
      r.h_meets_trivially = false;
  r.carter = normalizer(d.u) == d.u;
  if (!r.four)
    throw VerificationFailed("(UU^-)^2 is not all of " + d.spec);
  if (!r.h_meets_trivially)
    throw VerificationFailed("H meets UU^-U nontrivially in " + d.spec);
  std::vector<Index> conj{0, d.n0, 0};
  if (!r.three)
    conj.push_back(d.n0);
  r.witness = FactorizationWitness{d.group, d.u, conj, true, "bn-pair"};
  r.witness_ok = verify_witness(r.witness).ok;
  if (!r.witness_ok)
    throw VerificationFailed("unipotent witness does not cover " + d.spec);
  r.gamma = gamma_cp_exact(d.u, "bn-pair").k;
  r.minimal = r.gamma && *r.gamma == r.witness.length();
  return r;
}

} // namespace cpfact

#endif
