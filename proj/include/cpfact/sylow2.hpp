// Products of Sylow 2-subgroups covering S_n and A_n.
//
// A Sylow 2-subgroup of Sym(X) is described by an ordering of X. Positions
// split into blocks of decreasing powers of two (the binary digits of |X|);
// on each block of size 2^b it is the iterated wreath product generated by
// swapping the two halves of the first 2^{l+1} positions, l < b.
//
// S_{n+1} = A P Q for n even, with A the stabilizer of a point and P, Q
// Sylow subgroups whose top blocks overlap; S_{2m} = B A B with A a Young
// subgroup S_m x S_m and B generated by the m transpositions pairing them.

#ifndef CPFACT_SYLOW2_HPP_
#define CPFACT_SYLOW2_HPP_

#include <cmath>
#include <numeric>
#include <vector>

#include "factorize.hpp"
#include "spec_parser.hpp"

namespace cpfact {

using Ordering = std::vector<int>;

// Generators of the Sylow subgroup described by `o`, as permutations of n points.
inline std::vector<Permutation> ordering_generators(const Ordering& o, int n) {
  std::vector<Permutation> gens;
  std::size_t off = 0, len = o.size();
  while (off < len) {
    std::size_t size = std::bit_floor(len - off);
    for (std::size_t half = 1; half < size; half *= 2) {
      std::vector<int> img(n);
      std::iota(img.begin(), img.end(), 0);
      for (std::size_t i = 0; i < half; ++i) {
        img[o[off + i]] = o[off + half + i];
        img[o[off + half + i]] = o[off + i];
      }
      gens.emplace_back(img);
    }
    off += size;
  }
  return gens;
}

namespace impl {

inline void sylow_plan(const Ordering& pts, std::vector<Ordering>& out) {
  std::size_t m = pts.size();
  if (m <= 2) {
    out.push_back(pts);
    return;
  }
  if (m % 2) {
    // Sym(pts) = Stab(pts[0]) P Q
    Ordering rest(pts.begin() + 1, pts.end());
    std::vector<Ordering> sub;
    sylow_plan(rest, sub);
    for (auto& o : sub) {
      o.push_back(pts[0]);
      out.push_back(std::move(o));
    }
    std::size_t top = std::bit_floor(m);
    out.push_back(pts);
    Ordering q(pts.begin() + static_cast<long>(m - top), pts.end());
    q.insert(q.end(), pts.begin(), pts.begin() + static_cast<long>(m - top));
    out.push_back(std::move(q));
    return;
  }
  // Sym(pts) = B (Sym(X) x Sym(Y)) B with X, Y the two halves
  std::size_t h = m / 2;
  Ordering inter;
  for (std::size_t i = 0; i < h; ++i) {
    inter.push_back(pts[i]);
    inter.push_back(pts[h + i]);
  }
  Ordering idx(h);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Ordering> sub;
  sylow_plan(idx, sub);
  out.push_back(inter);
  for (const auto& o : sub) {
    Ordering merged;
    std::size_t off = 0;
    while (off < h) {
      std::size_t size = std::bit_floor(h - off);
      for (std::size_t i = 0; i < size; ++i)
        merged.push_back(pts[o[off + i]]);
      for (std::size_t i = 0; i < size; ++i)
        merged.push_back(pts[h + o[off + i]]);
      off += size;
    }
    out.push_back(std::move(merged));
  }
  out.push_back(std::move(inter));
}

inline Ordering identity_ordering(int n) {
  Ordering o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

} // namespace impl

struct SylowPlan {
  int n = 0;
  std::vector<Ordering> orderings; // one Sylow subgroup per factor
  std::size_t length() const { return orderings.size(); }
};

// f(1) = f(2) = 1, f(2m+1) = f(2m) + 2, f(2m) = f(m) + 2
inline SylowPlan symmetric_sylow2_plan(int n) {
  if (n < 1 || n > 255)
    throw UnsupportedParameter("degree must be in 1..255");
  SylowPlan p;
  p.n = n;
  impl::sylow_plan(impl::identity_ordering(n), p.orderings);
  return p;
}

inline double symmetric_sylow2_bound(int n) { return 4 * std::log2(static_cast<double>(n)); }

namespace impl {

// The permutation sending position i to o[i]; conjugating the identity
// ordering's Sylow subgroup by it gives the Sylow subgroup of o.
inline Index ordering_conjugator(const GroupTable& g, const Ordering& o) {
  auto x = g.index_of(std::vector<int>(o.begin(), o.end()));
  if (!x)
    throw VerificationFailed("ordering is not an element of the group");
  return *x;
}

} // namespace impl

inline FactorizationWitness symmetric_sylow2(int n, std::size_t cap = kDefaultCap) {
  if (n < 2)
    throw UnsupportedParameter("S_n needs n >= 2");
  auto g = make_group("sym:" + std::to_string(n), cap);
  auto plan = symmetric_sylow2_plan(n);
  std::vector<Index> gens;
  for (const auto& p : ordering_generators(impl::identity_ordering(n), n))
    gens.push_back(*g->index_of(p.images()));
  FactorizationWitness w{g, subgroup_closure(g, gens), {}, true, "sylow-2"};
  for (const auto& o : plan.orderings)
    w.conjugators.push_back(impl::ordering_conjugator(*g, o));
  return w;
}

// A_n = H1 H2 H1 with H1, H2 the setwise stabilizers of {0,1} and {n-2,n-1}.
struct AlternatingSylow2 {
  GroupPtr group;
  SubgroupSet h1, h2;
  FactorizationWitness witness; // base: a Sylow 2-subgroup of A_n
  std::size_t factor_length = 0; // Sylow factors per H_i
};

namespace impl {

inline int parity(const std::vector<int>& img) {
  std::vector<char> seen(img.size(), 0);
  int swaps = 0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img[j])) {
      seen[j] = 1;
      ++len;
    }
    swaps += static_cast<int>(len - 1);
  }
  return swaps % 2;
}

// Stabilizer of {a, b} in A_n: even permutations of the other points, and
// odd ones times (a b).
inline SubgroupSet pair_stabilizer(const GroupPtr& g, int n, int a, int b) {
  Ordering rest;
  for (int x = 0; x < n; ++x)
    if (x != a && x != b)
      rest.push_back(x);
  std::vector<std::vector<int>> perms;
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  if (rest.size() >= 2) {
    auto t = img;
    std::swap(t[rest[0]], t[rest[1]]);
    perms.push_back(t);
    auto c = img;
    for (std::size_t i = 0; i < rest.size(); ++i)
      c[rest[i]] = rest[(i + 1) % rest.size()];
    perms.push_back(c);
  }
  std::vector<Index> gens;
  for (auto& p : perms) {
    if (parity(p))
      std::swap(p[a], p[b]);
    gens.push_back(*g->index_of(p));
  }
  return subgroup_closure(g, gens);
}

} // namespace impl

inline double alternating_sylow2_bound(int n) { return 12 * std::log2(static_cast<double>(n)); }

inline AlternatingSylow2 alternating_sylow2(int n, std::size_t cap = kDefaultCap) {
  if (n < 6)
    throw UnsupportedParameter("A_n needs n >= 6; A_5 is PSL(2,4)");
  AlternatingSylow2 out;
  auto g = make_group("alt:" + std::to_string(n), cap);
  out.group = g;
  out.h1 = impl::pair_stabilizer(g, n, 0, 1);
  out.h2 = impl::pair_stabilizer(g, n, n - 2, n - 1);

  // Schreier generators of W cap A_n over the transversal {1, t}, t = (0 1)
  std::vector<Index> gens;
  auto sgens = ordering_generators(impl::identity_ordering(n), n);
  const Permutation& t = sgens.front();
  for (const auto& s : sgens) {
    std::vector<Permutation> e{s, t * s * t};
    if (s.sign() < 0)
      e = {s * t, t * s};
    for (const auto& x : e)
      gens.push_back(*g->index_of(x.images()));
  }
  out.witness = FactorizationWitness{g, subgroup_closure(g, gens), {}, true, "sylow-2"};

  // each H_i is S_{n-2} on the other points; the pair sits in an aligned
  // block of size 2 of the containing Sylow subgroup of S_n
  auto embed = [&](int a, int b) {
    Ordering rest;
    for (int x = 0; x < n; ++x)
      if (x != a && x != b)
        rest.push_back(x);
    std::vector<Ordering> sub;
    impl::sylow_plan(rest, sub);
    std::vector<Index> conj;
    for (auto o : sub) {
      if (o.size() % 2) {
        o.insert(o.end() - 1, {a, b});
      } else {
        o.push_back(a);
        o.push_back(b);
      }
      if (impl::parity(o))
        std::swap(o[0], o[1]); // times (0 1), which lies in the base
      conj.push_back(impl::ordering_conjugator(*g, o));
    }
    return conj;
  };
  auto c1 = embed(0, 1), c2 = embed(n - 2, n - 1);
  out.factor_length = c1.size();
  auto& w = out.witness.conjugators;
  w.insert(w.end(), c1.begin(), c1.end());
  w.insert(w.end(), c2.begin(), c2.end());
  w.insert(w.end(), c1.begin(), c1.end());
  return out;
}

// H1 H2 H1 = A_n by direct product.
inline bool verify_h1h2h1(const AlternatingSylow2& a) {
  auto acc = setwise_product(a.h1, a.h2);
  return setwise_product(acc, a.h1).is_full();
}

} // namespace cpfact

#endif
