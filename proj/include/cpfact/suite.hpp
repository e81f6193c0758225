// The acceptance battery: one check per criterion, run on worker threads.
// "smoke" verifies full products up to degree 8, "full" up to degree 10.

#ifndef CPFACT_SUITE_HPP_
#define CPFACT_SUITE_HPP_

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "affine.hpp"
#include "bn_pair.hpp"
#include "carter_factor.hpp"
#include "sylow2.hpp"

namespace cpfact {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  int exit_code = 0; // 0 pass, 4 failed check, else the error's code
};

// Exit code for an exception escaping a computation.
inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UnsupportedParameter*>(&e) ||
      dynamic_cast<const DomainMismatch*>(&e))
    return 2;
  if (dynamic_cast<const CapExceeded*>(&e) || dynamic_cast<const BoundExceeded*>(&e))
    return 3;
  if (dynamic_cast<const VerificationFailed*>(&e))
    return 4;
  return 5;
}

namespace impl {

struct SuiteParams {
  int product_degree = 8; // full products of S_n and A_n witnesses up to here
};

// Collects failures; the detail lists them, or a summary when none.
struct Checker {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok)
      failures.push_back(what);
  }
  std::string detail(const std::string& summary) const {
    if (failures.empty())
      return std::to_string(checks) + " checks; " + summary;
    std::string s;
    for (const auto& f : failures)
      s += (s.empty() ? "" : "; ") + f;
    return s;
  }
};

inline std::vector<BNDatum> all_bn_data() {
  std::vector<BNDatum> out;
  for (int q : {2, 3, 4, 5, 7, 8, 9})
    out.push_back(build_sl2(q));
  out.push_back(build_su3_3());
  out.push_back(build_sl3_2());
  return out;
}

inline std::string unipotent_criterion(Checker& ck, const SuiteParams&) {
  for (const auto& d : all_bn_data()) {
    auto r = verify_unipotent_factorization(d);
    ck(r.four, d.spec + ": (UU^-)^2 != G");
    ck(r.witness_ok, d.spec + ": witness fails");
    if (d.spec.rfind("sl:2,", 0) == 0) {
      unsigned want = d.spec == "sl:2,2" ? 3 : 4;
      ck(r.gamma && *r.gamma == want, d.spec + ": gamma_U != " + std::to_string(want));
    }
  }
  return "SL2(q) for q in {2,3,4,5,7,8,9}, SU3(3), SL3(2)";
}

inline std::string rank1_criterion_check(Checker& ck, const SuiteParams&) {
  std::size_t rank1 = 0;
  for (const auto& d : all_bn_data()) {
    if (d.weyl_order == 2) {
      auto r = rank1_criterion(d);
      ck(r.agree(), d.spec + ": conditions disagree");
      ++rank1;
    } else {
      bool threw = false;
      try {
        rank1_criterion(d);
      } catch (const NotRankOne&) {
        threw = true;
      }
      ck(threw, d.spec + ": higher rank accepted");
    }
    auto uuu = alternating_product(d.u, d.u_minus, 3);
    bool trivial = true;
    for (Index h : d.h.members())
      if (h != 0 && uuu.contains(h))
        trivial = false;
    ck(trivial, d.spec + ": H meets UU^-U");
  }
  return std::to_string(rank1) + " rank-one data agree; H cap UU^-U = 1 on all";
}

inline std::string sylow2_criterion(Checker& ck, const SuiteParams& p) {
  auto a5 = gamma_cp_p(make_group("alt:5"), 2);
  ck(a5.result.k && *a5.result.k == 3, "gamma_2(A5) != 3");
  for (int n = 6; n <= 8; ++n) {
    auto a = alternating_sylow2(n);
    ck(verify_h1h2h1(a), "A" + std::to_string(n) + " != H1 H2 H1");
  }
  for (int n = 2; n <= 32; ++n) {
    auto len = symmetric_sylow2_plan(n).length();
    ck(static_cast<double>(len) < symmetric_sylow2_bound(n), "S" + std::to_string(n) + " length");
  }
  for (int n = 2; n <= p.product_degree; ++n)
    ck(verify_witness(symmetric_sylow2(n)).ok, "S" + std::to_string(n) + " witness");
  for (int n = 6; n <= 10; ++n) {
    // 3 f(n-2) Sylow factors; the full product only up to the degree limit
    std::size_t len = 3 * symmetric_sylow2_plan(n - 2).length();
    ck(static_cast<double>(len) < alternating_sylow2_bound(n), "A" + std::to_string(n) + " length");
    if (n <= p.product_degree) {
      auto a = alternating_sylow2(n);
      ck(a.witness.length() == len, "A" + std::to_string(n) + " witness length");
      ck(verify_witness(a.witness).ok, "A" + std::to_string(n) + " witness");
    }
  }
  return "full products to degree " + std::to_string(p.product_degree);
}

inline std::vector<SubgroupSet> oracle_bases(const GroupPtr& g) {
  std::vector<SubgroupSet> out;
  for (auto p : prime_factors(g->order()))
    out.push_back(normalizer(sylow_subgroup(g, p)));
  for (auto& s : enumerate_subgroups(g, SubgroupFilter::Nilpotent, true))
    out.push_back(s);
  return out;
}

inline std::string oracle_criterion(Checker& ck, const SuiteParams&) {
  std::size_t pairs = 0;
  for (std::string spec : {"sym:3", "sym:4", "alt:4", "alt:5", "sym:5", "dihedral:5", "dihedral:6",
                           "dicyclic:3", "sl:2,3", "gl:2,3", "sl:2,5", "psl:2,7",
                           "affine:7,1,[[3]]", "affine:5,1,[[2]]", "affine:2,2,[[0,1,1,1]]",
                           "product:[sym:3;sym:3]", "product:[sym:3;cyclic:2]"}) {
    auto g = make_group(spec);
    ck(g->order() <= 200, spec + " too large");
    for (const auto& a : oracle_bases(g)) {
      auto r = gamma_cp_exact(a);
      ck(r.k == gamma_cp_oracle(a), spec + " |A|=" + std::to_string(a.order()));
      if (r.k)
        ck(verify_witness(*r.witness).ok, spec + " witness");
      ++pairs;
    }
  }
  ck(pairs >= 40, "fewer than 40 pairs");
  return std::to_string(pairs) + " pairs";
}

inline std::string affine_criterion(Checker& ck, const SuiteParams&) {
  for (std::string spec : {"affine:5,1,[[2]]", "affine:2,2,[[0,1,1,1]]",
                           "affine:3,2,[[0,2,1,0];[1,1,1,2]]", "affine:7,1,[[3]]",
                           "affine:3,1,[[2]]", "affine:2,3,[[0,1,0,0,0,1,1,1,0]]"}) {
    auto r = affine_factorization(affine_datum_from_spec(spec));
    ck(r.verified, spec + " witness");
    ck(r.witness.length() <= r.bound, spec + " length above 1 + n ceil(log2 p)");
  }
  auto s = log_ceiling_scan(1000000);
  ck(s.pass, "log ceiling scan");
  return std::to_string(s.primes) + " primes scanned";
}

inline std::string carter_criterion(Checker& ck, const SuiteParams&) {
  std::size_t groups = 0;
  for (std::string spec :
       {"sym:4", "sl:2,3", "affine:7,1,[[2]]", "affine:3,2,[[0,2,1,0];[1,1,1,2]]", "gl:2,3",
        "dihedral:5", "dihedral:6", "dihedral:12", "dicyclic:3", "dicyclic:5", "dicyclic:6",
        "product:[sym:3;sym:3]", "product:[sym:4;cyclic:2]", "product:[sym:4;sym:3]",
        "affine:2,2,[[0,1,1,1]]", "affine:5,1,[[2]]", "affine:2,3,[[0,1,0,0,0,1,1,1,0]]"}) {
    auto g = make_group(spec);
    ck(g->order() <= 500, spec + " too large");
    auto r = carter_factorization(g);
    const auto& c = r.witness.base;
    ck(r.verified, spec + " witness");
    ck(is_nilpotent(c) && normalizer(c) == c, spec + " base is not a Carter subgroup");
    ck(static_cast<double>(r.witness.length()) <= r.bound + 1e-9, spec + " length above bound");
    for (std::uint64_t seed : {1, 7}) {
      auto other = carter_subgroup(g, seed).subgroup;
      ck(conjugating_element(c, other).has_value(), spec + " seeds not conjugate");
    }
    ++groups;
  }
  return std::to_string(groups) + " solvable groups";
}

inline std::string structure_criterion(Checker& ck, const SuiteParams&) {
  struct Expect {
    std::string spec;
    std::size_t m;
    std::vector<std::size_t> n;
    double nab;
  };
  for (const auto& e : std::vector<Expect>{{"sym:5", 1, {1}, 60},
                                           {"product:[sym:4;sym:5]", 1, {1}, 60},
                                           {"wreath:alt5,2", 1, {2}, 3600}}) {
    auto s = socle_series(make_group(e.spec));
    std::vector<std::size_t> n;
    for (const auto& l : s.layers)
      n.push_back(l.n);
    ck(s.m == e.m && n == e.n && s.nab_order == e.nab, e.spec + " socle layers");
    ck(check_m_bound(s).pass(), e.spec + " m bound");
  }
  for (std::string spec : {"sym:5", "wreath:alt5,2"}) {
    auto g = make_group(spec);
    auto r = normal_quotient_inequality(g, socle(g));
    ck(r.pass, spec + " normal quotient inequality");
  }
  auto s5 = make_group("sym:5");
  auto s4 = subgroup_closure(s5, {*s5->index_of({1, 0, 2, 3, 4}), *s5->index_of({1, 2, 3, 0, 4})});
  auto a = sylow_container_bound(s5, s4, 2);
  ck(a.pass && a.lhs && a.rhs, "Sylow container bound on S5");
  auto sl = make_group("sl:2,3");
  SubgroupSet z = trivial_subgroup(sl);
  for (Index x = 1; x < sl->order(); ++x)
    if (sl->element_order(x) == 2)
      z = subgroup_closure(sl, {x});
  auto c = solvable_quotient_bound(sl, z, 3);
  ck(c.pass && c.lhs == c.rhs, "solvable quotient bound on SL2(3)");
  return "S5, S4xS5, A5 wr C2";
}

inline std::string socle_layer_criterion(Checker& ck, const SuiteParams&) {
  std::size_t groups = 0;
  for (std::string spec : {"alt:5", "sym:5", "psl:2,7", "sl:2,5", "alt:6",
                           "product:[alt:5;cyclic:3]"}) {
    auto g = make_group(spec);
    ck(socle_series(g).m == 1, spec + " has m != 1");
    auto r = socle_layer_inequality(g);
    ck(r.pass && r.lhs_exact, spec + " socle layer inequality");
    ++groups;
  }
  return std::to_string(groups) + " groups with m = 1";
}

struct CriterionDef {
  int id;
  const char* name;
  std::string (*run)(Checker&, const SuiteParams&);
};

inline const std::vector<CriterionDef>& criteria() {
  static const std::vector<CriterionDef> defs{
      {1, "unipotent factorizations of BN-pair groups", unipotent_criterion},
      {2, "rank-one conditions and H cap UU^-U", rank1_criterion_check},
      {3, "Sylow 2-subgroup products of S_n and A_n", sylow2_criterion},
      {4, "exact solver agrees with the oracle", oracle_criterion},
      {5, "affine factorizations and log ceiling scan", affine_criterion},
      {6, "Carter subgroup factorizations", carter_criterion},
      {7, "socle series and bound calculus", structure_criterion},
      {8, "socle layer inequality on m = 1 groups", socle_layer_criterion},
  };
  return defs;
}

inline CriterionResult run_criterion(const CriterionDef& def, const SuiteParams& p) {
  CriterionResult r;
  r.id = def.id;
  r.name = def.name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Checker ck;
    auto summary = def.run(ck, p);
    r.pass = ck.failures.empty();
    r.detail = ck.detail(summary);
    r.exit_code = r.pass ? 0 : 4;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
    r.exit_code = exit_code_for(e);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

} // namespace impl

inline bool is_suite_name(const std::string& name) { return name == "smoke" || name == "full"; }

// Results in criterion order. `on_done` is called as each criterion
// finishes, from the worker thread, under a lock.
inline std::vector<CriterionResult> run_suite(const std::string& name, unsigned jobs = 1,
                                              std::function<void(const CriterionResult&)> on_done = {}) {
  if (!is_suite_name(name))
    throw UnsupportedParameter("unknown suite '" + name + "'");
  impl::SuiteParams p;
  p.product_degree = name == "full" ? 10 : 8;
  const auto& defs = impl::criteria();
  std::vector<CriterionResult> out(defs.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < defs.size();) {
      out[i] = impl::run_criterion(defs[i], p);
      if (on_done) {
        std::lock_guard<std::mutex> lock(mu);
        on_done(out[i]);
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(defs.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();
  return out;
}

inline int suite_exit_code(const std::vector<CriterionResult>& rs) {
  int worst = 0;
  for (const auto& r : rs)
    if (r.exit_code > worst)
      worst = r.exit_code;
  return worst;
}

} // namespace cpfact

#endif
