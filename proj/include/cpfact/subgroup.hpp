// Subsets and subgroups of a GroupTable as membership bit-vectors.

#ifndef CPFACT_SUBGROUP_HPP_
#define CPFACT_SUBGROUP_HPP_

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "group.hpp"

namespace cpfact {

inline std::vector<unsigned long long> prime_factors(unsigned long long n) {
  std::vector<unsigned long long> out;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  if (n > 1)
    out.push_back(n);
  return out;
}

// Largest power of p dividing n.
inline unsigned long long p_part(unsigned long long n, unsigned long long p) {
  unsigned long long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_prime_power(unsigned long long n, unsigned long long p) {
  return n >= 1 && p_part(n, p) == n;
}

class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(GroupPtr parent) : parent_(std::move(parent)), bits_(parent_->order()) {}
  ElementSet(GroupPtr parent, Bitset bits) : parent_(std::move(parent)), bits_(std::move(bits)) {
    if (bits_.size() != parent_->order())
      throw ParentMismatch("bit-vector length differs from group order");
  }
  ElementSet(GroupPtr parent, const std::vector<Index>& members) : ElementSet(std::move(parent)) {
    for (Index i : members) {
      if (i >= parent_->order())
        throw ParentMismatch("element index out of range");
      bits_.set(i);
    }
  }

  static ElementSet full(GroupPtr parent) {
    ElementSet s(std::move(parent));
    s.bits_.set_all();
    return s;
  }

  const GroupPtr& parent() const { return parent_; }
  const GroupTable& group() const { return *parent_; }
  const Bitset& bits() const { return bits_; }
  Bitset& bits() { return bits_; }
  std::size_t size() const { return bits_.count(); }
  bool contains(Index i) const { return bits_.test(i); }
  bool is_full() const { return bits_.full(); }
  std::vector<Index> members() const { return bits_.to_vector(); }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.parent_ == b.parent_ && a.bits_ == b.bits_;
  }

private:
  GroupPtr parent_;
  Bitset bits_;
};

// A verified subgroup. Construct through subgroup_closure or the helpers
// below; the bits are always closed under products and inverses.
class SubgroupSet {
public:
  SubgroupSet() = default;

  const GroupPtr& parent() const { return set_.parent(); }
  const GroupTable& group() const { return set_.group(); }
  const Bitset& bits() const { return set_.bits(); }
  const ElementSet& as_set() const { return set_; }
  std::size_t order() const { return order_; }
  bool contains(Index i) const { return set_.contains(i); }
  const std::vector<Index>& generators() const { return gens_; }
  std::vector<Index> members() const { return set_.members(); }
  bool is_trivial() const { return order_ == 1; }
  bool is_whole() const { return order_ == group().order(); }
  Hash128 hash() const { return bits().hash(); }

  friend bool operator==(const SubgroupSet& a, const SubgroupSet& b) { return a.set_ == b.set_; }

  // Used by the closure routines; bits must already form a subgroup.
  static SubgroupSet trusted(ElementSet set, std::vector<Index> gens) {
    SubgroupSet s;
    s.order_ = set.size();
    s.set_ = std::move(set);
    s.gens_ = std::move(gens);
    return s;
  }

private:
  ElementSet set_;
  std::size_t order_ = 0;
  std::vector<Index> gens_;
};

inline void check_same_parent(const GroupPtr& a, const GroupPtr& b) {
  if (a != b)
    throw ParentMismatch("operands belong to different groups");
}

namespace impl {

// Grows the closed set `bits` (listed in `elems`) by the generators `gens`.
inline void close_under(const GroupTable& g, Bitset& bits, std::vector<Index>& elems,
                        const std::vector<Index>& gens, std::size_t start = 0) {
  for (std::size_t i = start; i < elems.size(); ++i)
    for (Index s : gens) {
      Index y = g.mult(elems[i], s);
      if (bits.insert(y))
        elems.push_back(y);
    }
}

} // namespace impl

inline SubgroupSet subgroup_closure(const GroupPtr& parent, const std::vector<Index>& gens) {
  const GroupTable& g = *parent;
  Bitset bits(g.order());
  std::vector<Index> kept;
  for (Index s : gens) {
    if (s >= g.order())
      throw ParentMismatch("generator index out of range");
    if (s != 0)
      kept.push_back(s);
  }
  bits.set(0);
  std::vector<Index> elems{0};
  impl::close_under(g, bits, elems, kept);
  return SubgroupSet::trusted(ElementSet(parent, std::move(bits)), std::move(kept));
}

inline SubgroupSet trivial_subgroup(const GroupPtr& parent) { return subgroup_closure(parent, {}); }

inline SubgroupSet whole_group(const GroupPtr& parent) {
  return subgroup_closure(parent, parent->generators());
}

// <K, x>
inline SubgroupSet extend_subgroup(const SubgroupSet& k, Index x) {
  if (k.contains(x))
    return k;
  auto gens = k.generators();
  gens.push_back(x);
  return subgroup_closure(k.parent(), gens);
}

// Subgroup with the given members, which must already be closed. Generators
// are chosen greedily in index order.
inline SubgroupSet subgroup_from_bits(const GroupPtr& parent, const Bitset& members) {
  const GroupTable& g = *parent;
  Bitset bits(g.order());
  bits.set(0);
  std::vector<Index> elems{0};
  std::vector<Index> gens;
  for (std::size_t x = members.first(); x < members.size(); x = members.next(x + 1)) {
    if (bits.test(x))
      continue;
    gens.push_back(static_cast<Index>(x));
    // old elements are closed under the old generators
    std::size_t before = elems.size();
    for (std::size_t i = 0; i < before; ++i) {
      Index y = g.mult(elems[i], static_cast<Index>(x));
      if (bits.insert(y))
        elems.push_back(y);
    }
    impl::close_under(g, bits, elems, gens, before);
  }
  if (!(bits == members))
    throw VerificationFailed("member set is not closed under multiplication");
  return SubgroupSet::trusted(ElementSet(parent, std::move(bits)), std::move(gens));
}

inline bool is_subgroup(const ElementSet& s) {
  const GroupTable& g = s.group();
  if (!s.contains(0))
    return false;
  auto m = s.members();
  for (Index a : m)
    for (Index b : m)
      if (!s.contains(g.mult(a, b)))
        return false;
  return true;
}

// {ab : a in x, b in y}, gathered row by row with an early exit when full.
inline ElementSet setwise_product(const ElementSet& x, const ElementSet& y) {
  check_same_parent(x.parent(), y.parent());
  const GroupTable& g = x.group();
  ElementSet out(x.parent());
  std::size_t total = 0, n = g.order();
  auto ym = y.members();
  x.bits().for_each([&](Index a) {
    if (total == n)
      return;
    for (Index b : ym)
      if (out.bits().insert(g.mult(a, b)) && ++total == n)
        return;
  });
  return out;
}

// S * A for a subgroup A: a union of left cosets xA, one per uncovered x.
inline ElementSet setwise_product(const ElementSet& s, const SubgroupSet& a) {
  check_same_parent(s.parent(), a.parent());
  const GroupTable& g = s.group();
  ElementSet out(s.parent());
  std::size_t total = 0, n = g.order();
  auto am = a.members();
  s.bits().for_each([&](Index x) {
    if (total == n || out.contains(x))
      return;
    for (Index b : am)
      if (out.bits().insert(g.mult(x, b)))
        ++total;
  });
  return out;
}

// A * S for a subgroup A: a union of right cosets Ax.
inline ElementSet setwise_product(const SubgroupSet& a, const ElementSet& s) {
  check_same_parent(s.parent(), a.parent());
  const GroupTable& g = s.group();
  ElementSet out(s.parent());
  std::size_t total = 0, n = g.order();
  auto am = a.members();
  s.bits().for_each([&](Index x) {
    if (total == n || out.contains(x))
      return;
    for (Index b : am)
      if (out.bits().insert(g.mult(b, x)))
        ++total;
  });
  return out;
}

inline ElementSet setwise_product(const SubgroupSet& a, const SubgroupSet& b) {
  return setwise_product(a.as_set(), b);
}

// g^-1 x g
inline ElementSet conjugate_set(const ElementSet& x, Index g) {
  const GroupTable& G = x.group();
  ElementSet out(x.parent());
  Index gi = G.inverse(g);
  x.bits().for_each([&](Index a) { out.bits().set(G.mult(G.mult(gi, a), g)); });
  return out;
}

inline SubgroupSet conjugate_subgroup(const SubgroupSet& k, Index g) {
  const GroupTable& G = k.group();
  std::vector<Index> gens;
  for (Index s : k.generators())
    gens.push_back(G.conjugate(s, g));
  return SubgroupSet::trusted(conjugate_set(k.as_set(), g), std::move(gens));
}

// Product A^{x_1} ... A^{x_k}, multiplying subgroup by subgroup.
inline ElementSet conjugate_product(const SubgroupSet& a, const std::vector<Index>& conj) {
  if (conj.empty())
    return ElementSet(a.parent(), std::vector<Index>{0});
  ElementSet acc = conjugate_subgroup(a, conj[0]).as_set();
  for (std::size_t i = 1; i < conj.size(); ++i) {
    if (acc.is_full())
      break;
    acc = setwise_product(acc, conjugate_subgroup(a, conj[i]));
  }
  return acc;
}

inline bool normalizes(const SubgroupSet& k, Index g) {
  const GroupTable& G = k.group();
  for (Index s : k.generators())
    if (!k.contains(G.conjugate(s, g)))
      return false;
  return true;
}

inline bool is_normal(const SubgroupSet& k) {
  for (Index s : k.group().generators())
    if (!normalizes(k, s))
      return false;
  return true;
}

inline bool is_normal_in(const SubgroupSet& n, const SubgroupSet& k) {
  if (!n.bits().is_subset_of(k.bits()))
    return false;
  for (Index s : k.generators())
    if (!normalizes(n, s))
      return false;
  return true;
}

inline SubgroupSet normalizer(const SubgroupSet& k) {
  const GroupTable& G = k.group();
  Bitset bits(G.order());
  for (Index g = 0; g < G.order(); ++g)
    if (k.contains(g) || normalizes(k, g))
      bits.set(g);
  return subgroup_from_bits(k.parent(), bits);
}

// Normalizer of k inside the subgroup within.
inline SubgroupSet normalizer_in(const SubgroupSet& k, const SubgroupSet& within) {
  const GroupTable& G = k.group();
  Bitset bits(G.order());
  within.bits().for_each([&](Index g) {
    if (k.contains(g) || normalizes(k, g))
      bits.set(g);
  });
  return subgroup_from_bits(k.parent(), bits);
}

inline SubgroupSet centralizer(const SubgroupSet& k) {
  const GroupTable& G = k.group();
  Bitset bits(G.order());
  for (Index g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (Index s : k.generators())
      if (G.mult(s, g) != G.mult(g, s)) {
        ok = false;
        break;
      }
    if (ok)
      bits.set(g);
  }
  return subgroup_from_bits(k.parent(), bits);
}

inline SubgroupSet intersection(const SubgroupSet& a, const SubgroupSet& b) {
  check_same_parent(a.parent(), b.parent());
  return subgroup_from_bits(a.parent(), a.bits() & b.bits());
}

inline SubgroupSet join(const SubgroupSet& a, const SubgroupSet& b) {
  check_same_parent(a.parent(), b.parent());
  if (b.bits().is_subset_of(a.bits()))
    return a;
  if (a.bits().is_subset_of(b.bits()))
    return b;
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return subgroup_closure(a.parent(), gens);
}

// Largest normal subgroup of G inside k.
inline SubgroupSet core(const SubgroupSet& k) {
  Bitset c = k.bits();
  const GroupTable& G = k.group();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index s : G.generators()) {
      Bitset conj(G.order());
      Index si = G.inverse(s);
      c.for_each([&](Index a) { conj.set(G.mult(G.mult(si, a), s)); });
      Bitset next = c & conj;
      if (!(next == c)) {
        c = std::move(next);
        changed = true;
      }
    }
  }
  return subgroup_from_bits(k.parent(), c);
}

// Smallest normal subgroup of `within` containing k (within defaults to G).
inline SubgroupSet normal_closure_in(const SubgroupSet& k, const SubgroupSet& within) {
  const GroupTable& G = k.group();
  SubgroupSet m = k;
  std::vector<Index> gens = k.generators();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (Index s : within.generators()) {
        Index c = G.conjugate(gens[i], s);
        if (!m.contains(c)) {
          gens.push_back(c);
          m = extend_subgroup(m, c);
          changed = true;
        }
      }
  }
  return m;
}

inline SubgroupSet normal_closure(const SubgroupSet& k) {
  return normal_closure_in(k, whole_group(k.parent()));
}

inline bool is_abelian(const SubgroupSet& k) {
  const GroupTable& G = k.group();
  const auto& gs = k.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (G.mult(gs[i], gs[j]) != G.mult(gs[j], gs[i]))
        return false;
  return true;
}

inline bool is_nilpotent(const SubgroupSet& k) {
  const GroupTable& G = k.group();
  const auto& ord = G.element_orders();
  for (auto p : prime_factors(k.order())) {
    std::size_t pk = p_part(k.order(), p), count = 0;
    k.bits().for_each([&](Index a) {
      if (is_prime_power(ord[a], p))
        ++count;
    });
    if (count != pk)
      return false;
  }
  return true;
}

// [K, K] as the normal closure in K of the generator commutators.
inline SubgroupSet derived_subgroup(const SubgroupSet& k) {
  const GroupTable& G = k.group();
  std::vector<Index> comms;
  const auto& gs = k.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      comms.push_back(G.commutator(gs[i], gs[j]));
  return normal_closure_in(subgroup_closure(k.parent(), comms), k);
}

// K = K^(0) > K^(1) > ... ending at the first repeated term.
inline std::vector<SubgroupSet> derived_series(const SubgroupSet& k) {
  std::vector<SubgroupSet> out{k};
  while (true) {
    SubgroupSet d = derived_subgroup(out.back());
    if (d.order() == out.back().order())
      break;
    out.push_back(std::move(d));
  }
  return out;
}

inline bool is_solvable(const SubgroupSet& k) { return derived_series(k).back().is_trivial(); }

// Order of x modulo the normal subgroup k of <k, x>: least m with x^m in k.
inline std::size_t order_mod(const GroupTable& G, Index x, const SubgroupSet& k) {
  std::size_t m = 1;
  for (Index y = x; !k.contains(y); y = G.mult(y, x))
    ++m;
  return m;
}

// Sylow p-subgroup containing the p-subgroup p_sub, by normalizer ascent:
// repeatedly adjoin the least p-element of N(P) outside P.
inline SubgroupSet sylow_over(const SubgroupSet& p_sub, unsigned long long p) {
  if (!impl::is_prime(p))
    throw NotPGroup("sylow_over needs a prime");
  if (!is_prime_power(p_sub.order(), p))
    throw NotPGroup("subgroup of order " + std::to_string(p_sub.order()) +
                    " is not a " + std::to_string(p) + "-group");
  const GroupTable& G = p_sub.group();
  const auto& ord = G.element_orders();
  std::size_t target = p_part(G.order(), p);
  SubgroupSet P = p_sub;
  while (P.order() < target) {
    bool grown = false;
    for (Index g = 1; g < G.order() && !grown; ++g) {
      if (P.contains(g) || !is_prime_power(ord[g], p) || !normalizes(P, g))
        continue;
      P = extend_subgroup(P, g);
      grown = true;
    }
    if (!grown)
      throw VerificationFailed("normalizer ascent stalled below the Sylow order");
  }
  return P;
}

inline SubgroupSet sylow_subgroup(const GroupPtr& g, unsigned long long p) {
  return sylow_over(trivial_subgroup(g), p);
}

// Conjugacy class of k, one member per coset N(k) x; ordered by first
// conjugating element.
inline std::vector<SubgroupSet> conjugacy_class_of(const SubgroupSet& k) {
  const GroupTable& G = k.group();
  SubgroupSet n = normalizer(k);
  Bitset covered(G.order());
  std::vector<SubgroupSet> out;
  auto nm = n.members();
  for (Index x = 0; x < G.order(); ++x) {
    if (covered.test(x))
      continue;
    for (Index a : nm)
      covered.set(G.mult(a, x));
    out.push_back(conjugate_subgroup(k, x));
  }
  return out;
}

// All Sylow p-subgroups, as the conjugacy class of one of them.
inline std::vector<SubgroupSet> sylow_family(const GroupPtr& g, unsigned long long p) {
  return conjugacy_class_of(sylow_subgroup(g, p));
}

// Lexicographically least member of the conjugacy class of k.
inline SubgroupSet least_conjugate(const SubgroupSet& k) {
  auto cls = conjugacy_class_of(k);
  std::size_t best = 0;
  for (std::size_t i = 1; i < cls.size(); ++i)
    if (Bitset::lex_less(cls[i].bits(), cls[best].bits()))
      best = i;
  return cls[best];
}

// Some x with a^x == b, if one exists.
inline std::optional<Index> conjugating_element(const SubgroupSet& a, const SubgroupSet& b) {
  check_same_parent(a.parent(), b.parent());
  if (a.order() != b.order())
    return std::nullopt;
  const GroupTable& G = a.group();
  for (Index x = 0; x < G.order(); ++x) {
    bool ok = true;
    for (Index s : a.generators())
      if (!b.contains(G.conjugate(s, x))) {
        ok = false;
        break;
      }
    if (ok)
      return x;
  }
  return std::nullopt;
}

enum class SubgroupFilter { Nilpotent, Solvable };

constexpr std::size_t kEnumerationBound = 2000;

// Every nilpotent (or solvable) subgroup of G, or one representative per
// conjugacy class (the lexicographically least conjugate). Subgroups grow
// from 1 by adjoining x in N(K) with xK of prime order; every subgroup
// passing the filter has a chain of such steps through filtered subgroups.
// Output is sorted by order, then by lex order of the bit-vector.
inline std::vector<SubgroupSet> enumerate_subgroups(const GroupPtr& g, SubgroupFilter filter,
                                                    bool up_to_conjugacy,
                                                    std::size_t bound = kEnumerationBound) {
  const GroupTable& G = *g;
  if (G.order() > bound)
    throw BoundExceeded("group order " + std::to_string(G.order()) +
                        " exceeds enumeration bound " + std::to_string(bound));
  std::vector<SubgroupSet> found;
  std::unordered_map<Hash128, std::vector<std::size_t>, Hash128Hasher> seen;
  auto add = [&](SubgroupSet s) {
    if (up_to_conjugacy)
      s = least_conjugate(s);
    auto& bucket = seen[s.hash()];
    for (std::size_t i : bucket)
      if (found[i].bits() == s.bits())
        return;
    bucket.push_back(found.size());
    found.push_back(std::move(s));
  };
  add(trivial_subgroup(g));
  for (std::size_t qi = 0; qi < found.size(); ++qi) {
    SubgroupSet k = found[qi];
    SubgroupSet n = normalizer(k);
    Bitset covered = k.bits();
    n.bits().for_each([&](Index x) {
      if (covered.test(x))
        return;
      std::size_t m = order_mod(G, x, k);
      if (!impl::is_prime(m))
        return;
      SubgroupSet l = extend_subgroup(k, x);
      covered |= l.bits();
      if (filter == SubgroupFilter::Nilpotent && !is_nilpotent(l))
        return;
      add(std::move(l));
    });
  }
  std::sort(found.begin(), found.end(), [](const SubgroupSet& a, const SubgroupSet& b) {
    if (a.order() != b.order())
      return a.order() < b.order();
    return Bitset::lex_less(a.bits(), b.bits());
  });
  return found;
}

// A subgroup viewed as a group in its own right. Local indices follow the
// parent's index order, so the identity stays at 0.
struct EmbeddedGroup {
  GroupPtr group;
  std::vector<Index> to_parent;   // local -> parent
  std::vector<Index> from_parent; // parent -> local or kNoIndex
};

inline EmbeddedGroup subgroup_as_group(const SubgroupSet& k, std::string label = "") {
  EmbeddedGroup e;
  e.to_parent = k.members();
  e.from_parent.assign(k.group().order(), kNoIndex);
  for (Index i = 0; i < e.to_parent.size(); ++i)
    e.from_parent[e.to_parent[i]] = i;
  std::vector<Index> gens;
  for (Index s : k.generators())
    gens.push_back(e.from_parent[s]);
  if (label.empty())
    label = "subgroup of order " + std::to_string(k.order()) + " in " + k.group().label();
  auto be = std::make_shared<DerivedBackend>(k.parent(), e.to_parent, e.from_parent);
  e.group = std::make_shared<const GroupTable>(be, k.order(), std::move(gens), std::move(label));
  return e;
}

// Image of a subgroup of G in the embedded group (k must lie inside it).
inline SubgroupSet restrict_to(const SubgroupSet& k, const EmbeddedGroup& e) {
  std::vector<Index> gens;
  for (Index s : k.generators()) {
    if (e.from_parent[s] == kNoIndex)
      throw ParentMismatch("subgroup is not contained in the embedded group");
    gens.push_back(e.from_parent[s]);
  }
  return subgroup_closure(e.group, gens);
}

inline SubgroupSet lift_from(const SubgroupSet& k, const EmbeddedGroup& e, const GroupPtr& parent) {
  std::vector<Index> gens;
  for (Index s : k.generators())
    gens.push_back(e.to_parent[s]);
  return subgroup_closure(parent, gens);
}

struct Quotient {
  GroupPtr group;
  std::vector<Index> projection; // G index -> coset id
  std::vector<Index> section;    // coset id -> least member of the coset
};

inline Quotient quotient_group(const GroupPtr& g, const SubgroupSet& n, std::string label = "") {
  check_same_parent(g, n.parent());
  if (!is_normal(n))
    throw NotNormal("subgroup of order " + std::to_string(n.order()) + " is not normal");
  const GroupTable& G = *g;
  Quotient q;
  q.projection.assign(G.order(), kNoIndex);
  auto nm = n.members();
  for (Index x = 0; x < G.order(); ++x) {
    if (q.projection[x] != kNoIndex)
      continue;
    Index id = static_cast<Index>(q.section.size());
    q.section.push_back(x);
    for (Index a : nm)
      q.projection[G.mult(x, a)] = id;
  }
  std::vector<Index> gens;
  for (Index s : G.generators())
    if (q.projection[s] != 0)
      gens.push_back(q.projection[s]);
  if (label.empty())
    label = G.label() + "/N" + std::to_string(n.order());
  auto be = std::make_shared<DerivedBackend>(g, q.section, q.projection);
  q.group = std::make_shared<const GroupTable>(be, q.section.size(), std::move(gens),
                                               std::move(label));
  return q;
}

inline SubgroupSet image_in_quotient(const SubgroupSet& k, const Quotient& q) {
  std::vector<Index> gens;
  for (Index s : k.generators())
    gens.push_back(q.projection[s]);
  return subgroup_closure(q.group, gens);
}

// Full preimage in G of a subgroup of G/N.
inline SubgroupSet preimage(const SubgroupSet& kq, const Quotient& q, const GroupPtr& g) {
  Bitset bits(g->order());
  for (Index x = 0; x < g->order(); ++x)
    if (kq.contains(q.projection[x]))
      bits.set(x);
  return subgroup_from_bits(g, bits);
}

} // namespace cpfact

#endif
