// Factorizations of affine groups G = V x| H by conjugates of H, with V an
// elementary abelian normal subgroup written additively.
//
// H acts on V by conjugation, v^h = h^-1 v h. For u in V the element
// u^-1 h u acts as x -> x^h + (u - u^h), so
//   (a^-1 h a)(b^-1 h^-1 b) = translation by T(a - b),  T(y) = y^{h^-1} - y.
// With conjugators c_t = (2^k - 2^t) v, t = 0..k, the product of the
// k+1 conjugates H^{c_t} contains s T(v) for every 0 <= s < 2^k: each run of
// ones b_a..b_{b-1} in the binary digits of s contributes 2^b - 2^a.

#ifndef CPFACT_AFFINE_HPP_
#define CPFACT_AFFINE_HPP_

#include <bit>
#include <cmath>
#include <vector>

#include "factorize.hpp"
#include "spec_parser.hpp"

namespace cpfact {

// 3 / log2(5): the maximum of ceil(log2 p) / log2 p over primes p.
inline double affine_constant() { return 3.0 / std::log2(5.0); }

struct AffineDatum {
  int p = 0, n = 0;
  GroupPtr group;
  SubgroupSet v, h;
  std::vector<Index> basis;
  std::vector<Index> vector_index;  // coordinate number sum d_i p^i -> element
  std::vector<std::uint32_t> coords; // element -> coordinate number, or ~0 outside V

  Index add(Index a, Index b) const { return group->mult(a, b); }
  Index sub(Index a, Index b) const { return group->mult(a, group->inverse(b)); }
  Index scale(Index a, long long s) const { return group->power(a, s); }
  Index act(Index a, Index h_) const { return group->conjugate(a, h_); }
  std::vector<int> coordinates(Index a) const {
    std::vector<int> d(n);
    std::uint32_t c = coords.at(a);
    for (int i = 0; i < n; ++i) {
      d[i] = static_cast<int>(c % p);
      c /= p;
    }
    return d;
  }
};

inline AffineDatum make_affine_datum(const GroupPtr& g, const SubgroupSet& v, const SubgroupSet& h) {
  check_same_parent(g, v.parent());
  check_same_parent(g, h.parent());
  if (v.order() < 2 || !is_abelian(v) || !is_normal(v))
    throw HypothesisFailed("V must be a nontrivial abelian normal subgroup");
  auto primes = prime_factors(v.order());
  if (primes.size() != 1)
    throw HypothesisFailed("V is not a p-group");
  int p = static_cast<int>(primes[0]);
  for (Index x : v.members())
    if (x != 0 && g->element_order(x) != static_cast<std::uint32_t>(p))
      throw HypothesisFailed("V is not elementary abelian");
  if (v.order() * h.order() != g->order() || !intersection(v, h).is_trivial())
    throw HypothesisFailed("H is not a complement to V");
  AffineDatum d;
  d.p = p;
  d.group = g;
  d.v = v;
  d.h = h;
  SubgroupSet span = trivial_subgroup(g);
  for (Index x : v.members())
    if (!span.contains(x)) {
      d.basis.push_back(x);
      span = extend_subgroup(span, x);
    }
  d.n = static_cast<int>(d.basis.size());
  d.vector_index.assign(v.order(), 0);
  d.coords.assign(g->order(), ~std::uint32_t(0));
  for (std::uint32_t c = 0; c < v.order(); ++c) {
    Index x = 0;
    std::uint32_t rest = c;
    for (int i = 0; i < d.n; ++i) {
      x = g->mult(x, g->power(d.basis[i], rest % p));
      rest /= p;
    }
    d.vector_index[c] = x;
    d.coords[x] = c;
  }
  return d;
}

// From an "affine:p,n,[...]" spec: translations first, then the matrices.
inline AffineDatum affine_datum_from_spec(const std::string& spec) {
  auto s = parse_group(spec);
  if (s.family != "affine")
    throw UnsupportedParameter("not an affine spec: " + spec);
  const auto& gens = s.group->generators();
  std::vector<Index> vg(gens.begin(), gens.begin() + static_cast<long>(s.affine_translations));
  std::vector<Index> hg(gens.begin() + static_cast<long>(s.affine_translations), gens.end());
  return make_affine_datum(s.group, subgroup_closure(s.group, vg), subgroup_closure(s.group, hg));
}

// True when every nonzero vector's H-orbit spans V.
inline bool is_irreducible(const AffineDatum& d) {
  const auto& hg = d.h.generators();
  for (Index x : d.v.members()) {
    if (x == 0)
      continue;
    std::vector<Index> orbit{x};
    Bitset seen(d.group->order());
    seen.set(x);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Index s : hg) {
        Index y = d.act(orbit[i], s);
        if (seen.insert(y))
          orbit.push_back(y);
      }
    if (subgroup_closure(d.group, orbit).order() != d.v.order())
      return false;
  }
  return true;
}

struct LemmaTrick {
  Index w = 0;                      // v^{h^-1} - v
  unsigned k = 0;                   // ceil(log2 p)
  std::vector<Index> conjugators;   // (2^k - 2^t) v, t = 0..k
  std::vector<unsigned> scalars;
  bool covered = false;             // every s w lies in the product
  bool elements_ok = false;         // the explicit factor elements multiply to s w
};

inline unsigned ceil_log2(unsigned long long x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

// Runs of ones in the binary digits of s, as (a, b) with bits a..b-1 set.
inline std::vector<std::pair<unsigned, unsigned>> binary_runs(unsigned long long s) {
  std::vector<std::pair<unsigned, unsigned>> runs;
  unsigned bit = 0;
  while (s >> bit) {
    if (!((s >> bit) & 1U)) {
      ++bit;
      continue;
    }
    unsigned a = bit;
    while ((s >> bit) & 1U)
      ++bit;
    runs.emplace_back(a, bit);
  }
  return runs;
}

inline std::vector<Index> trick_conjugators(const AffineDatum& d, Index v, unsigned k, Index shift = 0) {
  std::vector<Index> c;
  for (unsigned t = 0; t <= k; ++t)
    c.push_back(d.add(d.scale(v, (1LL << k) - (1LL << t)), shift));
  return c;
}

inline LemmaTrick lemma_trick(const AffineDatum& d, Index v, Index h, std::vector<unsigned> scalars = {}) {
  const GroupTable& G = *d.group;
  if (!d.v.contains(v) || !d.h.contains(h))
    throw DomainMismatch("lemma_trick needs v in V and h in H");
  LemmaTrick r;
  Index hi = G.inverse(h);
  r.w = d.sub(d.act(v, hi), v);
  if (r.w == 0)
    throw FixedVector("h fixes v");
  r.k = ceil_log2(static_cast<unsigned long long>(d.p));
  r.conjugators = trick_conjugators(d, v, r.k);
  if (scalars.empty())
    for (int s = 0; s < d.p; ++s)
      scalars.push_back(static_cast<unsigned>(s));
  r.scalars = scalars;
  auto prod = conjugate_product(d.h, r.conjugators);
  r.covered = r.elements_ok = true;
  for (unsigned s : scalars) {
    Index target = d.scale(r.w, s);
    r.covered = r.covered && prod.contains(target);
    if (s >= (1U << r.k)) {
      r.elements_ok = false;
      continue;
    }
    std::vector<Index> e(r.k + 1, 0);
    for (auto [a, b] : binary_runs(s)) {
      e[a] = G.conjugate(h, r.conjugators[a]);
      e[b] = G.conjugate(hi, r.conjugators[b]);
    }
    Index x = 0;
    for (Index y : e)
      x = G.mult(x, y);
    r.elements_ok = r.elements_ok && x == target;
  }
  return r;
}

struct AffineFactorization {
  FactorizationWitness witness;
  unsigned k = 0;
  Index v = 0, h = 0, w = 0;
  std::vector<Index> spread;       // the H-conjugates of w forming a basis
  std::vector<Index> spread_by;    // the conjugating elements of H
  std::size_t bound = 0;           // 1 + n ceil(log2 p)
  double constant_bound = 0;       // 1 + (3 / log2 5) log2 |G:H|
  bool verified = false;
};

inline AffineFactorization affine_factorization(const AffineDatum& d) {
  const GroupTable& G = *d.group;
  if (d.h.is_trivial())
    throw HypothesisFailed("complement is trivial");
  if (!core(d.h).is_trivial())
    throw NotCoreFree("H contains a nontrivial normal subgroup of G");
  if (!is_irreducible(d))
    throw NotIrreducible("H leaves a proper nonzero subspace of V invariant");
  AffineFactorization r;
  r.k = ceil_log2(static_cast<unsigned long long>(d.p));
  r.v = d.basis[0];
  auto hm = d.h.members();
  for (Index x : hm)
    if (d.act(r.v, G.inverse(x)) != r.v) {
      r.h = x;
      break;
    }
  r.w = d.sub(d.act(r.v, G.inverse(r.h)), r.v);
  // extend while some w^x lies outside the span, scanning H in index order
  SubgroupSet span = trivial_subgroup(d.group);
  for (Index x : hm) {
    if (span.order() == d.v.order())
      break;
    Index wx = d.act(r.w, x);
    if (!span.contains(wx)) {
      r.spread.push_back(wx);
      r.spread_by.push_back(x);
      span = extend_subgroup(span, wx);
    }
  }
  if (span.order() != d.v.order())
    throw VerificationFailed("conjugates of w do not span V");
  // block i uses v_i = v^{x_i}; shifts u_i chain the blocks so that the last
  // conjugate of one block is the first of the next
  std::size_t n = r.spread.size();
  std::vector<Index> vi(n), u(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    vi[i] = d.act(r.v, r.spread_by[i]);
  for (std::size_t i = n; i-- > 1;)
    u[i - 1] = d.add(d.scale(vi[i], (1LL << r.k) - 1), u[i]);
  auto& conj = r.witness.conjugators;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = trick_conjugators(d, vi[i], r.k, u[i]);
    conj.insert(conj.end(), c.begin() + (i ? 1 : 0), c.end());
  }
  r.witness.group = d.group;
  r.witness.base = d.h;
  r.witness.provenance = "affine";
  r.bound = 1 + static_cast<std::size_t>(d.n) * r.k;
  r.constant_bound =
      1 + affine_constant() * std::log2(static_cast<double>(G.order() / d.h.order()));
  r.verified = verify_witness(r.witness).ok;
  if (!r.verified)
    throw VerificationFailed("affine witness does not cover the group");
  return r;
}

struct LogCeilingScan {
  unsigned long long limit = 0;
  std::size_t primes = 0;
  bool pass = true;
  unsigned long long worst = 0; // prime maximizing ceil(log2 p) / log2 p
};

// ceil(log2 p) <= (3 / log2 5) log2 p, checked exactly as 5^c <= p^3.
inline LogCeilingScan log_ceiling_scan(unsigned long long limit) {
  if (limit > 2000000)
    throw UnsupportedParameter("scan limit above 2e6");
  LogCeilingScan s;
  s.limit = limit;
  std::vector<char> composite(limit + 1, 0);
  double worst_ratio = 0;
  for (unsigned long long p = 2; p <= limit; ++p) {
    if (composite[p])
      continue;
    for (unsigned long long q = p * p; q <= limit; q += p)
      composite[q] = 1;
    ++s.primes;
    unsigned c = ceil_log2(p);
    unsigned long long five = 1;
    for (unsigned i = 0; i < c; ++i)
      five *= 5;
    if (five > p * p * p)
      s.pass = false;
    double ratio = c / std::log2(static_cast<double>(p));
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      s.worst = p;
    }
  }
  return s;
}

} // namespace cpfact

#endif
