// Normal structure: normal lattice, solvable radical, socle, the non-abelian
// socle series and Carter subgroups.

#ifndef CPFACT_STRUCTURE_HPP_
#define CPFACT_STRUCTURE_HPP_

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "subgroup.hpp"

namespace cpfact {

constexpr std::size_t kNormalLatticeBound = 100000;

struct NormalLattice {
  GroupPtr group;
  // sorted by order, then lexicographically
  std::vector<SubgroupSet> entries;
  std::vector<bool> solvable;
  std::vector<bool> minimal;
};

namespace impl {

inline void sort_subgroups(std::vector<SubgroupSet>& v) {
  std::sort(v.begin(), v.end(), [](const SubgroupSet& a, const SubgroupSet& b) {
    if (a.order() != b.order())
      return a.order() < b.order();
    return Bitset::lex_less(a.bits(), b.bits());
  });
}

// Distinct normal closures of the nontrivial conjugacy classes.
inline std::vector<SubgroupSet> class_closures(const GroupPtr& g) {
  auto cc = conjugacy_classes(*g);
  std::vector<SubgroupSet> out;
  std::unordered_map<Hash128, std::vector<std::size_t>, Hash128Hasher> seen;
  for (std::size_t i = 1; i < cc.classes.size(); ++i) {
    Index x = cc.classes[i][0];
    auto c = normal_closure(subgroup_closure(g, {x}));
    auto& bucket = seen[c.hash()];
    bool dup = false;
    for (std::size_t j : bucket)
      dup = dup || out[j].bits() == c.bits();
    if (!dup) {
      bucket.push_back(out.size());
      out.push_back(std::move(c));
    }
  }
  return out;
}

} // namespace impl

inline NormalLattice normal_lattice(const GroupPtr& g, std::size_t bound = kNormalLatticeBound) {
  if (g->order() > bound)
    throw BoundExceeded("group order " + std::to_string(g->order()) +
                        " exceeds normal lattice bound " + std::to_string(bound));
  NormalLattice lat;
  lat.group = g;
  std::vector<SubgroupSet> items{trivial_subgroup(g)};
  auto gens = impl::class_closures(g);
  items.insert(items.end(), gens.begin(), gens.end());
  std::unordered_map<Hash128, std::vector<std::size_t>, Hash128Hasher> seen;
  for (std::size_t i = 0; i < items.size(); ++i)
    seen[items[i].hash()].push_back(i);
  auto add = [&](SubgroupSet s) {
    auto& bucket = seen[s.hash()];
    for (std::size_t j : bucket)
      if (items[j].bits() == s.bits())
        return;
    bucket.push_back(items.size());
    items.push_back(std::move(s));
  };
  // close under joins with the class closures, which generate every entry
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      add(join(items[i], gens[j]));
  impl::sort_subgroups(items);
  lat.entries = std::move(items);
  std::size_t n = lat.entries.size();
  lat.solvable.resize(n);
  lat.minimal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lat.solvable[i] = is_solvable(lat.entries[i]);
    bool minimal = !lat.entries[i].is_trivial();
    for (std::size_t j = 0; j < n && minimal; ++j)
      if (j != i && !lat.entries[j].is_trivial() && lat.entries[j].order() < lat.entries[i].order() &&
          lat.entries[j].bits().is_subset_of(lat.entries[i].bits()))
        minimal = false;
    lat.minimal[i] = minimal;
  }
  return lat;
}

// Minimal normal subgroups in the selection order: least order, then least
// bit-vector. Cheaper than the full lattice: each one is the normal closure
// of any of its nontrivial elements.
inline std::vector<SubgroupSet> minimal_normal_subgroups(const GroupPtr& g) {
  auto c = impl::class_closures(g);
  std::vector<SubgroupSet> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < c.size() && minimal; ++j)
      if (j != i && c[j].order() < c[i].order() && c[j].bits().is_subset_of(c[i].bits()))
        minimal = false;
    if (minimal)
      out.push_back(c[i]);
  }
  impl::sort_subgroups(out);
  return out;
}

inline SubgroupSet solvable_radical(const NormalLattice& lat) {
  SubgroupSet r = lat.entries.front();
  for (std::size_t i = 0; i < lat.entries.size(); ++i)
    if (lat.solvable[i])
      r = join(r, lat.entries[i]);
  return r;
}

inline SubgroupSet socle(const NormalLattice& lat) {
  SubgroupSet s = lat.entries.front();
  for (std::size_t i = 0; i < lat.entries.size(); ++i)
    if (lat.minimal[i])
      s = join(s, lat.entries[i]);
  return s;
}

inline SubgroupSet solvable_radical(const GroupPtr& g) { return solvable_radical(normal_lattice(g)); }
inline SubgroupSet socle(const GroupPtr& g) { return socle(normal_lattice(g)); }

struct SocleLayer {
  std::size_t order = 0;                  // |N_i|
  std::size_t n = 0;                      // number of simple factors
  std::vector<std::size_t> factor_orders; // ascending
  std::vector<GroupPtr> factors;          // the simple factors, same order
};

struct SocleSeriesReport {
  GroupPtr group;
  std::vector<SubgroupSet> chain;      // H_1 .. H_t
  std::vector<std::string> labels;     // "radical" or "socle" per term
  std::vector<SocleLayer> layers;      // N_1 .. N_m
  std::size_t t = 0;
  std::size_t m = 0;
  double nab_order = 2;                // |G|_nab
  // product of the orders of the radical layers H_1, H_3/H_2, ...
  double solvable_part = 1;
};

namespace impl {

// Subgroup of G mapping onto the given subgroup of G/H.
inline SubgroupSet lift_through(const SubgroupSet& img, const Quotient* q, const GroupPtr& g) {
  if (!q)
    return img;
  return preimage(img, *q, g);
}

// Counts the simple direct factors of a direct product S of non-abelian
// simple groups, checking that description on the way.
inline SocleLayer analyse_layer(const GroupPtr& s) {
  SocleLayer layer;
  layer.order = s->order();
  auto mins = minimal_normal_subgroups(s);
  double prod = 1;
  for (const auto& t : mins) {
    if (is_abelian(t))
      throw VerificationFailed("socle layer has an abelian factor");
    auto e = subgroup_as_group(t);
    auto inner = minimal_normal_subgroups(e.group);
    if (inner.size() != 1 || !inner[0].is_whole())
      throw VerificationFailed("socle layer factor is not simple");
    layer.factors.push_back(e.group);
    prod *= static_cast<double>(t.order());
  }
  for (std::size_t i = 0; i < mins.size(); ++i)
    for (std::size_t j = i + 1; j < mins.size(); ++j)
      for (Index a : mins[i].generators())
        for (Index b : mins[j].generators())
          if (s->mult(a, b) != s->mult(b, a))
            throw VerificationFailed("socle layer factors do not commute");
  if (prod != static_cast<double>(s->order()))
    throw VerificationFailed("socle layer factor orders do not multiply to its order");
  layer.n = mins.size();
  std::stable_sort(layer.factors.begin(), layer.factors.end(),
                   [](const GroupPtr& a, const GroupPtr& b) { return a->order() < b->order(); });
  for (const auto& f : layer.factors)
    layer.factor_orders.push_back(f->order());
  return layer;
}

} // namespace impl

inline SocleSeriesReport socle_series(const GroupPtr& g, std::size_t bound = kNormalLatticeBound) {
  SocleSeriesReport rep;
  rep.group = g;
  SubgroupSet h = trivial_subgroup(g);
  bool radical_step = true;
  double nab = 1;
  while (true) {
    std::unique_ptr<Quotient> q;
    GroupPtr qg = g;
    if (!h.is_trivial()) {
      q = std::make_unique<Quotient>(quotient_group(g, h));
      qg = q->group;
    }
    auto lat = normal_lattice(qg, bound);
    SubgroupSet img = radical_step ? solvable_radical(lat) : socle(lat);
    SubgroupSet next = impl::lift_through(img, q.get(), g);
    if (radical_step) {
      rep.solvable_part *= static_cast<double>(img.order());
    } else {
      if (img.is_trivial())
        throw VerificationFailed("socle of a quotient with trivial radical is trivial");
      auto e = subgroup_as_group(img);
      auto layer = impl::analyse_layer(e.group);
      nab *= static_cast<double>(layer.order);
      rep.layers.push_back(std::move(layer));
    }
    rep.chain.push_back(next);
    rep.labels.push_back(radical_step ? "radical" : "socle");
    h = next;
    radical_step = !radical_step;
    if (h.is_whole())
      break;
    if (rep.chain.size() > 64)
      throw VerificationFailed("socle series did not terminate");
  }
  rep.t = rep.chain.size();
  rep.m = rep.t / 2;
  if (rep.m != rep.layers.size())
    throw VerificationFailed("socle layer count differs from floor(t/2)");
  rep.nab_order = rep.m == 0 ? 2.0 : nab;
  return rep;
}

struct MBoundReport {
  std::size_t m = 0;
  double bound = 0;       // log2 log2 |G|_nab / log2 5
  bool m_pass = true;
  bool layers_pass = true; // 5 n_i <= n_{i-1}
  bool pass() const { return m_pass && layers_pass; }
};

inline MBoundReport check_m_bound(const SocleSeriesReport& s) {
  MBoundReport r;
  r.m = s.m;
  r.bound = std::log2(std::log2(s.nab_order)) / std::log2(5.0);
  r.m_pass = s.m == 0 || static_cast<double>(s.m) < r.bound;
  for (std::size_t i = 1; i < s.layers.size(); ++i)
    if (5 * s.layers[i].n > s.layers[i - 1].n)
      r.layers_pass = false;
  return r;
}

struct CarterSubgroup {
  SubgroupSet subgroup;
  // Sylow subgroups of C, one per prime, each normal in C
  std::vector<std::pair<unsigned long long, std::size_t>> sylow_orders;
  bool self_normalizing = false;
  bool used_fallback = false;
};

namespace impl {

inline SubgroupSet carter_rec(const GroupPtr& g, std::mt19937_64* rng, bool& fallback) {
  SubgroupSet whole = whole_group(g);
  if (is_nilpotent(whole))
    return whole;
  auto mins = minimal_normal_subgroups(g);
  std::size_t pick = 0;
  if (rng)
    pick = std::uniform_int_distribution<std::size_t>(0, mins.size() - 1)(*rng);
  const SubgroupSet& n = mins[pick];
  Quotient q = quotient_group(g, n);
  SubgroupSet cq = carter_rec(q.group, rng, fallback);
  SubgroupSet d = preimage(cq, q, g);
  if (d.order() < g->order()) {
    auto e = subgroup_as_group(d);
    SubgroupSet c = carter_rec(e.group, rng, fallback);
    return lift_from(c, e, g);
  }
  // G/N is nilpotent: search the nilpotent classes, largest first
  fallback = true;
  auto nil = enumerate_subgroups(g, SubgroupFilter::Nilpotent, true);
  for (auto it = nil.rbegin(); it != nil.rend(); ++it)
    if (normalizer(*it) == *it)
      return *it;
  throw VerificationFailed("no self-normalizing nilpotent subgroup found");
}

} // namespace impl

// seed 0 always takes the first minimal normal subgroup; other seeds pick one
// at random at every level of the recursion.
inline CarterSubgroup carter_subgroup(const GroupPtr& g, std::uint64_t seed = 0) {
  if (!is_solvable(whole_group(g)))
    throw NotSolvable("Carter subgroups are only computed for solvable groups");
  CarterSubgroup out;
  std::mt19937_64 rng(seed);
  out.subgroup = impl::carter_rec(g, seed ? &rng : nullptr, out.used_fallback);
  const SubgroupSet& c = out.subgroup;
  if (!is_nilpotent(c))
    throw VerificationFailed("Carter candidate is not nilpotent");
  for (auto p : prime_factors(c.order())) {
    std::size_t pk = p_part(c.order(), p);
    out.sylow_orders.emplace_back(p, pk);
  }
  out.self_normalizing = normalizer(c) == c;
  if (!out.self_normalizing)
    throw VerificationFailed("Carter candidate is not self-normalizing");
  return out;
}

} // namespace cpfact

#endif
