// Factorizations of solvable groups by conjugates of a Carter subgroup, and
// coordinatewise products for direct powers of a simple group.
//
// The recursion takes a minimal normal subgroup N and a factorization
// G/N = C^{y_1} ... C^{y_k} (mod N). For k > 1 the tail C^{y_k} N is a
// proper subgroup with Carter subgroup C^{y_k} and is factorized in turn.
// For k = 1, G = CN; dividing out core(C) either shrinks G or leaves an
// affine group N x| C with C irreducible and core-free.

#ifndef CPFACT_CARTER_FACTOR_HPP_
#define CPFACT_CARTER_FACTOR_HPP_

#include <string>
#include <vector>

#include "affine.hpp"
#include "structure.hpp"

namespace cpfact {

struct CarterTraceNode {
  unsigned depth = 0;
  std::string step; // nilpotent, quotient, descend, core, affine
  std::size_t group_order = 0;
  std::size_t base_order = 0;
  std::size_t length = 0;
};

struct CarterFactorization {
  FactorizationWitness witness;
  double bound = 0; // 1 + (3 / log2 5) log2 |G:C|
  bool verified = false;
  std::vector<CarterTraceNode> trace;
};

namespace impl {

inline std::vector<Index> carter_fact(const GroupPtr& g, const SubgroupSet& c, unsigned depth,
                                      std::vector<CarterTraceNode>& trace) {
  const GroupTable& G = *g;
  std::size_t slot = trace.size();
  trace.push_back({depth, "", G.order(), c.order(), 0});
  auto finish = [&](const char* step, std::vector<Index> conj) {
    trace[slot].step = step;
    trace[slot].length = conj.size();
    return conj;
  };
  if (c.is_whole())
    return finish("nilpotent", {0});
  SubgroupSet n = minimal_normal_subgroups(g).front();
  Quotient q = quotient_group(g, n);
  auto ybar = carter_fact(q.group, image_in_quotient(c, q), depth + 1, trace);
  std::vector<Index> y;
  for (Index x : ybar)
    y.push_back(q.section[x]);
  if (y.size() > 1) {
    // G = C^{y_1} ... C^{y_{k-1}} D with D = C^{y_k} N
    SubgroupSet ck = conjugate_subgroup(c, y.back());
    SubgroupSet d = join(ck, n);
    auto e = subgroup_as_group(d);
    auto z = carter_fact(e.group, restrict_to(ck, e), depth + 1, trace);
    std::vector<Index> conj(y.begin(), y.end() - 1);
    for (Index zj : z)
      conj.push_back(G.mult(y.back(), e.to_parent[zj]));
    return finish("descend", conj);
  }
  SubgroupSet l = core(c);
  if (!l.is_trivial()) {
    Quotient ql = quotient_group(g, l);
    auto x = carter_fact(ql.group, image_in_quotient(c, ql), depth + 1, trace);
    std::vector<Index> conj;
    for (Index xi : x)
      conj.push_back(ql.section[xi]);
    return finish("core", conj);
  }
  auto a = affine_factorization(make_affine_datum(g, n, c));
  return finish("affine", a.witness.conjugators);
}

} // namespace impl

inline CarterFactorization carter_factorization(const GroupPtr& g, std::uint64_t seed = 0) {
  if (!is_solvable(whole_group(g)))
    throw NotSolvable(g->label() + " is not solvable");
  CarterFactorization r;
  SubgroupSet c = carter_subgroup(g, seed).subgroup;
  r.witness = FactorizationWitness{g, c, impl::carter_fact(g, c, 0, r.trace), true, "carter"};
  r.bound = 1 + affine_constant() * std::log2(static_cast<double>(g->order() / c.order()));
  r.verified = verify_witness(r.witness).ok;
  if (!r.verified)
    throw VerificationFailed("Carter witness does not cover " + g->label());
  return r;
}

inline bool is_simple_nonabelian(const GroupPtr& t) {
  auto whole = whole_group(t);
  return !is_abelian(whole) && normal_lattice(t).entries.size() == 2;
}

struct DirectPowerFactorization {
  FactorizationWitness witness;
  std::size_t base_length = 0;
  bool verified = false;
};

// T^r = B^r (B^r)^{x_2} ... with diagonal conjugators (x_j, ..., x_j). The
// factor list is padded with the identity up to pad_to.
inline DirectPowerFactorization special_direct_power(const GroupPtr& t, int r,
                                                     const FactorizationWitness& base,
                                                     std::size_t pad_to = 0) {
  if (!is_simple_nonabelian(t))
    throw NotSimple(t->label() + " is not a nonabelian simple group");
  check_same_parent(t, base.group);
  auto tr = direct_power(t, r);
  const auto& be = dynamic_cast<const DirectPowerBackend&>(tr->backend());
  std::vector<Index> gens;
  for (int i = 0; i < r; ++i)
    for (Index s : base.base.generators()) {
      std::vector<Index> c(r, 0);
      c[i] = s;
      gens.push_back(be.from_coords(c));
    }
  DirectPowerFactorization out;
  out.base_length = base.length();
  std::vector<Index> conj;
  for (Index x : base.conjugators)
    conj.push_back(be.from_coords(std::vector<Index>(r, x)));
  while (conj.size() < pad_to)
    conj.push_back(0);
  out.witness = FactorizationWitness{tr, subgroup_closure(tr, gens), conj, true, "direct-power"};
  out.verified = verify_witness(out.witness).ok;
  if (!out.verified)
    throw VerificationFailed("direct power witness does not cover " + tr->label());
  return out;
}

} // namespace cpfact

#endif
