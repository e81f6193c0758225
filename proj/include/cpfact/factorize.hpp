// Minimal conjugate-product factorizations G = A^{x_1} ... A^{x_k}.
//
// A g_1 A g_2 A ... g_{k-1} A = G is equivalent to a factorization of length
// k, so the search runs over words in double coset representatives, tracking
// only which double cosets the partial product covers.

#ifndef CPFACT_FACTORIZE_HPP_
#define CPFACT_FACTORIZE_HPP_

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "double_coset.hpp"
#include "structure.hpp"

namespace cpfact {

constexpr std::size_t kMaxSearchStates = std::size_t(1) << 24;
constexpr std::size_t kOracleBound = 2000;

struct FactorizationWitness {
  GroupPtr group;
  SubgroupSet base;
  std::vector<Index> conjugators;
  bool claims_full = true;
  std::string provenance;

  std::size_t length() const { return conjugators.size(); }
};

struct WitnessCheck {
  bool ok = false;
  double ms = 0;
};

inline WitnessCheck verify_witness(const FactorizationWitness& w) {
  auto t0 = std::chrono::steady_clock::now();
  WitnessCheck c;
  c.ok = conjugate_product(w.base, w.conjugators).is_full() == w.claims_full;
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

struct GammaResult {
  std::optional<unsigned> k; // empty: no factorization exists
  std::optional<FactorizationWitness> witness;
  std::vector<std::uint32_t> word; // double coset ids g_1 .. g_{k-1}
  std::size_t states = 0;
};

namespace impl {

// Conjugators x_1 = 1, x_{i+1} = (g_1 ... g_i)^-1 for the word g_1 .. g_m.
inline std::vector<Index> word_to_conjugators(const GroupTable& G, const std::vector<Index>& word) {
  std::vector<Index> conj{G.identity()};
  Index prefix = G.identity();
  for (Index g : word) {
    prefix = G.mult(prefix, g);
    conj.push_back(G.inverse(prefix));
  }
  return conj;
}

class CoverSearch {
public:
  CoverSearch(const DoubleCosetTable& t, std::size_t max_states) : t_(t), max_(max_states) {
    r_ = t.count();
    if (r_ <= 24)
      dense_.assign(std::size_t(1) << r_, 0);
  }

  std::optional<std::vector<std::uint32_t>> run() {
    for (std::uint32_t j = 1; j < r_; ++j) {
      Bitset s(r_);
      s.set(j);
      if (add(std::move(s), kRoot, j))
        return path(states_.size() - 1);
    }
    for (std::size_t head = 0; head < states_.size(); ++head) {
      for (std::uint32_t j = 1; j < r_; ++j) {
        Bitset next(r_);
        auto& w = next.words();
        states_[head].for_each([&](std::size_t i) {
          const std::uint64_t* m = t_.support_words(i, j);
          for (std::size_t x = 0; x < w.size(); ++x)
            w[x] |= m[x];
        });
        if (add(std::move(next), head, j))
          return path(states_.size() - 1);
      }
    }
    return std::nullopt;
  }

  std::size_t states() const { return states_.size(); }

private:
  static constexpr std::size_t kRoot = ~std::size_t(0);

  // Records a new state; true when it covers everything.
  bool add(Bitset s, std::size_t parent, std::uint32_t j) {
    if (!dense_.empty()) {
      auto key = static_cast<std::size_t>(s.words()[0]);
      if (dense_[key])
        return false;
      dense_[key] = 1;
    } else if (!seen_.insert(s).second) {
      return false;
    }
    if (states_.size() >= max_)
      throw BoundExceeded("cover search exceeded " + std::to_string(max_) + " states");
    bool full = s.full();
    states_.push_back(std::move(s));
    parent_.push_back(parent);
    step_.push_back(j);
    return full;
  }

  std::vector<std::uint32_t> path(std::size_t at) const {
    std::vector<std::uint32_t> w;
    for (std::size_t i = at; i != kRoot; i = parent_[i])
      w.push_back(step_[i]);
    return {w.rbegin(), w.rend()};
  }

  const DoubleCosetTable& t_;
  std::size_t max_, r_ = 0;
  std::vector<std::uint8_t> dense_;
  std::unordered_set<Bitset, BitsetHasher> seen_;
  std::vector<Bitset> states_;
  std::vector<std::size_t> parent_;
  std::vector<std::uint32_t> step_;
};

} // namespace impl

// Shortest factorization of G by conjugates of the table's base subgroup.
inline GammaResult gamma_cp_exact(const DoubleCosetTable& t, const std::string& provenance = "bfs",
                                  std::size_t max_states = kMaxSearchStates) {
  const SubgroupSet& a = t.base;
  const GroupTable& G = a.group();
  GammaResult res;
  auto finish = [&](std::vector<Index> conj) {
    res.k = static_cast<unsigned>(conj.size());
    res.witness = FactorizationWitness{a.parent(), a, std::move(conj), true, provenance};
  };
  if (a.is_whole()) {
    finish({G.identity()});
    return res;
  }
  if (!normal_closure(a).is_whole())
    return res;
  impl::CoverSearch search(t, max_states);
  auto word = search.run();
  res.states = search.states();
  if (!word)
    throw VerificationFailed("cover search ended without covering although A^G = G");
  std::vector<Index> reps;
  for (auto j : *word)
    reps.push_back(t.reps[j]);
  res.word = *word;
  finish(impl::word_to_conjugators(G, reps));
  if (*res.k < 3)
    throw VerificationFailed("proper subgroup produced a factorization shorter than 3");
  return res;
}

inline GammaResult gamma_cp_exact(const SubgroupSet& a, const std::string& provenance = "bfs") {
  return gamma_cp_exact(double_coset_table(a), provenance);
}

// Independent check: breadth-first over the raw sets A g_1 A ... g_i A, with
// double coset representatives found by direct products.
inline std::optional<unsigned> gamma_cp_oracle(const SubgroupSet& a, unsigned k_max = 16,
                                               std::size_t bound = kOracleBound) {
  const GroupTable& G = a.group();
  if (G.order() > bound)
    throw BoundExceeded("oracle limited to groups of order <= " + std::to_string(bound));
  if (a.is_whole())
    return 1u;
  std::vector<Index> reps;
  ElementSet covered(a.parent());
  for (Index x = 0; x < G.order(); ++x) {
    if (covered.contains(x))
      continue;
    reps.push_back(x);
    ElementSet single(a.parent(), std::vector<Index>{x});
    covered.bits() |= setwise_product(setwise_product(a, single), a).bits();
  }
  auto step = [&](const ElementSet& s, Index g) {
    ElementSet moved(a.parent());
    s.bits().for_each([&](Index x) { moved.bits().set(G.mult(x, g)); });
    return setwise_product(moved, a);
  };
  std::unordered_set<Bitset, BitsetHasher> seen;
  std::vector<ElementSet> level{a.as_set()};
  seen.insert(a.bits());
  for (unsigned k = 2; k <= k_max; ++k) {
    std::vector<ElementSet> next;
    for (const auto& s : level)
      for (Index g : reps) {
        auto t = step(s, g);
        if (t.is_full())
          return k;
        if (seen.insert(t.bits()).second)
          next.push_back(std::move(t));
      }
    if (next.empty())
      return std::nullopt;
    level = std::move(next);
  }
  throw BoundExceeded("oracle found no factorization of length <= " + std::to_string(k_max));
}

struct PrimeGamma {
  unsigned long long p = 0;
  SubgroupSet sylow;
  SubgroupSet normalizer;
  bool normalizer_solvable = false;
  GammaResult result;
};

inline PrimeGamma gamma_cp_p(const GroupPtr& g, unsigned long long p) {
  if (!impl::is_prime(p) || g->order() % p != 0)
    throw UnsupportedParameter(std::to_string(p) + " is not a prime divisor of |G|");
  PrimeGamma out;
  out.p = p;
  out.sylow = sylow_subgroup(g, p);
  out.normalizer = normalizer(out.sylow);
  out.normalizer_solvable = is_solvable(out.normalizer);
  if (out.normalizer_solvable)
    out.result = gamma_cp_exact(out.normalizer, "sylow-normalizer:" + std::to_string(p));
  return out;
}

// Minimal gamma over a family of candidate bases.
struct GammaMin {
  std::optional<unsigned> value;
  std::optional<SubgroupSet> base;
  std::optional<FactorizationWitness> witness;
  bool exact = false;
  std::size_t candidates = 0;
  unsigned long long prime = 0; // Sylow-normalizer searches only
  bool solvable = false;        // conditions (i), (ii) of the base
  bool self_normalizing = false;
};

// Upper bound for the special solvable value from Sylow normalizers. Exact
// when it reaches the lower bound 3 (G non-solvable), or when `sweep` finds
// no smaller value among solvable self-normalizing bases.
inline GammaMin gamma_cp_ss_upper(const GroupPtr& g, bool sweep = false) {
  GammaMin out;
  SubgroupSet whole = whole_group(g);
  if (is_solvable(whole)) {
    out.value = 1;
    out.base = whole;
    out.witness = FactorizationWitness{g, whole, {g->identity()}, true, "whole-group"};
    out.exact = out.solvable = out.self_normalizing = true;
    return out;
  }
  for (auto p : prime_factors(g->order())) {
    auto pg = gamma_cp_p(g, p);
    ++out.candidates;
    if (!pg.result.k)
      continue;
    if (!out.value || *pg.result.k < *out.value) {
      out.value = pg.result.k;
      out.base = pg.normalizer;
      out.witness = pg.result.witness;
      out.prime = p;
    }
  }
  if (!out.value)
    throw VerificationFailed("no solvable Sylow normalizer yields a factorization");
  out.solvable = is_solvable(*out.base);
  out.self_normalizing = normalizer(*out.base) == *out.base;
  out.exact = *out.value == 3;
  if (!out.exact && sweep) {
    bool smaller = false;
    for (const auto& a : enumerate_subgroups(g, SubgroupFilter::Solvable, true)) {
      if (normalizer(a) != a || !normal_closure(a).is_whole())
        continue;
      auto r = gamma_cp_exact(a);
      if (r.k && *r.k < *out.value)
        smaller = true;
    }
    out.exact = !smaller;
  }
  return out;
}

namespace impl {

inline GammaMin gamma_min_over(const GroupPtr& g, SubgroupFilter filter, const char* tag) {
  GammaMin out;
  SubgroupSet whole = whole_group(g);
  bool g_in = filter == SubgroupFilter::Nilpotent ? is_nilpotent(whole) : is_solvable(whole);
  out.exact = true;
  if (g_in) {
    out.value = 1;
    out.base = whole;
    out.witness = FactorizationWitness{g, whole, {g->identity()}, true, "whole-group"};
    return out;
  }
  auto reps = enumerate_subgroups(g, filter, true);
  // Proper bases need at least 3 factors, so stop at the first 3.
  for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
    if (!normal_closure(*it).is_whole())
      continue;
    ++out.candidates;
    auto r = gamma_cp_exact(*it, tag);
    if (r.k && (!out.value || *r.k < *out.value)) {
      out.value = r.k;
      out.base = *it;
      out.witness = r.witness;
      if (*r.k == 3)
        break;
    }
  }
  return out;
}

} // namespace impl

inline GammaMin gamma_cp_n_exact(const GroupPtr& g) {
  return impl::gamma_min_over(g, SubgroupFilter::Nilpotent, "nilpotent-sweep");
}

inline GammaMin gamma_cp_s_exact(const GroupPtr& g) {
  return impl::gamma_min_over(g, SubgroupFilter::Solvable, "solvable-sweep");
}

// Solvable value with exactness: the full sweep when G is small enough,
// otherwise the Sylow-normalizer upper bound (exact when it equals 3).
inline GammaMin gamma_cp_s_estimate(const GroupPtr& g) {
  if (g->order() <= kEnumerationBound)
    return gamma_cp_s_exact(g);
  auto r = gamma_cp_ss_upper(g);
  r.exact = r.exact || *r.value == 1;
  return r;
}

// Sides of a bound from the calculus of Sylow-normalizer factorizations.
struct BoundCheck {
  std::string name;
  std::optional<unsigned> lhs, rhs; // empty: infinite
  bool pass = false;
  std::string detail;
};

namespace impl {

inline bool le(const std::optional<unsigned>& a, const std::optional<unsigned>& b) {
  if (!b)
    return true;
  return a && *a <= *b;
}

inline std::string show(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "inf"; }

inline EmbeddedGroup embed(const SubgroupSet& k) { return subgroup_as_group(k); }

} // namespace impl

// gamma_p(G) <= gamma^A(G) * gamma_p(A) when A contains a Sylow p-subgroup.
inline BoundCheck sylow_container_bound(const GroupPtr& g, const SubgroupSet& a, unsigned long long p) {
  check_same_parent(g, a.parent());
  BoundCheck c;
  c.name = "sylow-normalizer product bound";
  if (p_part(a.order(), p) != p_part(g->order(), p))
    throw HypothesisFailed("A does not contain a Sylow " + std::to_string(p) + "-subgroup");
  auto gp = gamma_cp_p(g, p).result.k;
  auto ga = gamma_cp_exact(a).k;
  auto e = impl::embed(a);
  auto ap = gamma_cp_p(e.group, p).result.k;
  if (!gp || !ga || !ap)
    throw HypothesisFailed("gamma_p(G), gamma^A(G) and gamma_p(A) must all exist; got " +
                           impl::show(gp) + ", " + impl::show(ga) + ", " + impl::show(ap));
  c.lhs = gp;
  c.rhs = *ga * *ap;
  c.pass = *c.lhs <= *c.rhs;
  c.detail = "gamma_p(G)=" + impl::show(gp) + " gamma^A(G)=" + impl::show(ga) +
             " gamma_p(A)=" + impl::show(ap);
  return c;
}

// gamma_p(G) = gamma_p(G/N) for solvable normal N inside N_G(P).
inline BoundCheck solvable_quotient_bound(const GroupPtr& g, const SubgroupSet& n, unsigned long long p) {
  check_same_parent(g, n.parent());
  BoundCheck c;
  c.name = "quotient by a solvable normal subgroup of N_G(P)";
  if (!is_normal(n))
    throw HypothesisFailed("N is not normal");
  if (!is_solvable(n))
    throw HypothesisFailed("N is not solvable");
  auto np = normalizer(sylow_subgroup(g, p));
  if (!n.bits().is_subset_of(np.bits()))
    throw HypothesisFailed("N is not contained in N_G(P)");
  c.lhs = gamma_cp_p(g, p).result.k;
  auto q = quotient_group(g, n);
  c.rhs = q.group->order() % p == 0 ? gamma_cp_p(q.group, p).result.k : std::optional<unsigned>(1);
  c.pass = c.lhs == c.rhs;
  c.detail = "gamma_p(G)=" + impl::show(c.lhs) + " gamma_p(G/N)=" + impl::show(c.rhs);
  return c;
}

namespace impl {

inline void check_p_factors(const std::vector<SubgroupSet>& factors, unsigned long long p) {
  for (const auto& f : factors)
    if (!is_prime_power(f.order(), p))
      throw HypothesisFailed("a factor is not a " + std::to_string(p) +
                             "-subgroup");
}

inline ElementSet product_of(const std::vector<SubgroupSet>& factors) {
  ElementSet acc = factors.at(0).as_set();
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = setwise_product(acc, factors[i]);
  return acc;
}

} // namespace impl

// G a product of n p-subgroups with N_G(P) solvable gives gamma_p(G) <= n.
inline BoundCheck p_product_bound(const GroupPtr& g, unsigned long long p,
                         const std::vector<SubgroupSet>& factors) {
  BoundCheck c;
  c.name = "product of p-subgroups";
  if (factors.empty())
    throw HypothesisFailed("no factors given");
  impl::check_p_factors(factors, p);
  if (!impl::product_of(factors).is_full())
    throw HypothesisFailed("the factors do not multiply to G");
  auto pg = g->order() % p == 0 ? gamma_cp_p(g, p) : PrimeGamma{};
  if (g->order() % p == 0 && !pg.normalizer_solvable)
    throw HypothesisFailed("N_G(P) is not solvable");
  c.lhs = g->order() % p == 0 ? pg.result.k : std::optional<unsigned>(1);
  c.rhs = static_cast<unsigned>(factors.size());
  c.pass = impl::le(c.lhs, c.rhs);
  c.detail = "gamma_p(G)=" + impl::show(c.lhs) + " n=" + std::to_string(factors.size());
  return c;
}

// N normal, a product of n p-subgroups, G/N a p-group and N_G(P) solvable
// give gamma_p(G) <= n.
inline BoundCheck normal_p_product_bound(const GroupPtr& g, const SubgroupSet& n, unsigned long long p,
                         const std::vector<SubgroupSet>& factors) {
  BoundCheck c;
  c.name = "normal product of p-subgroups with p-group quotient";
  if (!is_normal(n))
    throw HypothesisFailed("N is not normal");
  if (factors.empty())
    throw HypothesisFailed("no factors given");
  impl::check_p_factors(factors, p);
  if (!(impl::product_of(factors).bits() == n.bits()))
    throw HypothesisFailed("the factors do not multiply to N");
  if (!is_prime_power(g->order() / n.order(), p))
    throw HypothesisFailed("G/N is not a p-group");
  auto pg = gamma_cp_p(g, p);
  if (!pg.normalizer_solvable)
    throw HypothesisFailed("N_G(P) is not solvable");
  c.lhs = pg.result.k;
  c.rhs = static_cast<unsigned>(factors.size());
  c.pass = impl::le(c.lhs, c.rhs);
  c.detail = "gamma_p(G)=" + impl::show(c.lhs) + " n=" + std::to_string(factors.size());
  return c;
}

struct InequalityReport {
  std::string name;
  unsigned lhs = 0;
  unsigned rhs = 0;
  bool lhs_exact = false;
  bool rhs_exact = false;
  bool pass = false;
  std::vector<std::string> terms;
};

// gamma_s(G) <= gamma_ss(N) + gamma_s(G/N).
inline InequalityReport normal_quotient_inequality(const GroupPtr& g, const SubgroupSet& n) {
  check_same_parent(g, n.parent());
  if (!is_normal(n))
    throw NotNormal("inequality needs a normal subgroup");
  InequalityReport r;
  r.name = "gamma_s(G) <= gamma_ss(N) + gamma_s(G/N)";
  auto lhs = gamma_cp_s_estimate(g);
  auto en = subgroup_as_group(n);
  auto ss = gamma_cp_ss_upper(en.group);
  unsigned quot = 1;
  bool quot_exact = true;
  if (!n.is_whole()) {
    auto q = quotient_group(g, n);
    auto s = gamma_cp_s_estimate(q.group);
    quot = *s.value;
    quot_exact = s.exact;
  }
  r.lhs = *lhs.value;
  r.lhs_exact = lhs.exact;
  r.rhs = *ss.value + quot;
  r.rhs_exact = ss.exact && quot_exact;
  r.pass = r.lhs <= r.rhs;
  r.terms = {"gamma_s(G)=" + std::to_string(r.lhs) + (lhs.exact ? "" : " (upper)"),
             "gamma_ss(N)=" + std::to_string(*ss.value) + (ss.exact ? "" : " (upper)"),
             "gamma_s(G/N)=" + std::to_string(quot) + (quot_exact ? "" : " (upper)")};
  return r;
}

// gamma_s(G) <= 1 + sum_i max_T gamma_ss(T) over the simple factors T of
// each non-abelian socle layer.
inline InequalityReport socle_layer_inequality(const GroupPtr& g) {
  InequalityReport r;
  r.name = "gamma_s(G) <= 1 + sum gamma_ss(T_i)";
  auto series = socle_series(g);
  auto lhs = gamma_cp_s_estimate(g);
  r.lhs = *lhs.value;
  r.lhs_exact = lhs.exact;
  r.rhs = 1;
  r.rhs_exact = true;
  for (std::size_t i = 0; i < series.layers.size(); ++i) {
    unsigned best = 0;
    bool exact = true;
    for (const auto& t : series.layers[i].factors) {
      auto ss = gamma_cp_ss_upper(t);
      if (*ss.value > best) {
        best = *ss.value;
        exact = ss.exact;
      }
    }
    r.rhs += best;
    r.rhs_exact = r.rhs_exact && exact;
    r.terms.push_back("layer " + std::to_string(i + 1) + ": gamma_ss(T)=" + std::to_string(best) +
                      (exact ? "" : " (upper)"));
  }
  r.pass = r.lhs <= r.rhs;
  return r;
}

} // namespace cpfact

#endif
