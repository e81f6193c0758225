// cpfact: command line driver for the factorization library.
//
// Exit codes: 0 ok, 2 bad input, 3 cap or bound exceeded, 4 a verification
// failed, 5 a hypothesis of the requested construction does not hold.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "cpfact/affine.hpp"
#include "cpfact/bn_pair.hpp"
#include "cpfact/carter_factor.hpp"
#include "cpfact/report.hpp"
#include "cpfact/suite.hpp"
#include "cpfact/sylow2.hpp"

using namespace cpfact;

namespace {

struct Config {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  bool no_cache = false;
  std::string cache_dir;
  unsigned jobs = 1;

  std::string group;
  std::string base;
  std::string kind = "cp";
  unsigned long long prime = 0;
  unsigned k_max = 16;
  std::string filter = "nilpotent";
  bool classes = false;
  bool members = false;
  int n = 0;
  bool verify = false;
  bool triple = false;
  bool factorize = false;
  unsigned long long scan = 0;
  std::string normal = "socle";
  std::string suite;
};

DoubleCosetCache make_cache(const Config& c) {
  if (c.no_cache)
    return {};
  if (!c.cache_dir.empty())
    return DoubleCosetCache(c.cache_dir);
  return DoubleCosetCache::from_environment();
}

unsigned long long parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    auto p = std::stoull(s, &used);
    if (used == s.size())
      return p;
  } catch (const std::exception&) {
  }
  throw UnsupportedParameter("expected a number, got '" + s + "'");
}

unsigned long long parse_prime_divisor(const GroupTable& g, const std::string& s) {
  auto p = parse_number(s);
  auto ps = prime_factors(g.order());
  if (std::find(ps.begin(), ps.end(), p) == ps.end())
    throw UnsupportedParameter(s + " is not a prime divisor of |G|");
  return p;
}

SubgroupSet resolve_base(const GroupPtr& g, const std::string& base, std::uint64_t seed) {
  auto colon = base.find(':');
  std::string head = base.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : base.substr(colon + 1);
  if (head == "whole")
    return whole_group(g);
  if (head == "sylow")
    return sylow_subgroup(g, parse_prime_divisor(*g, arg));
  if (head == "sylow-normalizer")
    return normalizer(sylow_subgroup(g, parse_prime_divisor(*g, arg)));
  if (head == "carter") {
    if (!is_solvable(whole_group(g)))
      throw NotSolvable(g->label() + " is not solvable");
    return carter_subgroup(g, seed).subgroup;
  }
  if (head == "unipotent")
    return impl::matrix_subgroup(g, impl::upper_unitriangular);
  if (head == "stabilizer" || head == "perm") {
    if (g->kind() != ElementKind::Permutation)
      throw DomainMismatch("base '" + head + "' needs a permutation group");
    int degree = static_cast<int>(g->encode(0).size());
    if (head == "perm") {
      std::vector<Index> gens;
      for (const auto& p : parse_permutation_list(arg, degree)) {
        auto x = g->index_of(p.images());
        if (!x)
          throw DomainMismatch("generator is not an element of " + g->label());
        gens.push_back(*x);
      }
      return subgroup_closure(g, gens);
    }
    int point = static_cast<int>(parse_number(arg));
    if (point >= degree)
      throw UnsupportedParameter("point out of range");
    Bitset bits(g->order());
    for (Index x = 0; x < g->order(); ++x)
      if (g->encode(x)[point] == point)
        bits.set(x);
    return subgroup_from_bits(g, bits);
  }
  throw UnsupportedParameter("unknown base '" + base + "'");
}

Report cmd_enumerate(const Config& c) {
  Report r{"enumerate", canonical_spec(c.group)};
  auto g = make_group(c.group);
  SubgroupFilter f;
  if (c.filter == "nilpotent")
    f = SubgroupFilter::Nilpotent;
  else if (c.filter == "solvable")
    f = SubgroupFilter::Solvable;
  else
    throw UnsupportedParameter("unknown filter '" + c.filter + "'");
  auto subs = enumerate_subgroups(g, f, c.classes);
  r.body["group_order"] = g->order();
  r.body["filter"] = c.filter;
  r.body["up_to_conjugacy"] = c.classes;
  r.body["count"] = subs.size();
  Json list = Json::array();
  for (const auto& s : subs) {
    auto j = subgroup_json(s, c.members);
    j["normal"] = is_normal(s);
    list.push_back(j);
  }
  r.body["subgroups"] = list;
  return r;
}

Report cmd_gamma(const Config& c) {
  Report r{"gamma", canonical_spec(c.group)};
  auto g = make_group(c.group);
  r.body["kind"] = c.kind;
  if (c.kind == "cp") {
    if (c.base.empty())
      throw UnsupportedParameter("--base is required for --kind cp");
    auto a = resolve_base(g, c.base, c.seed);
    auto cache = make_cache(c);
    auto t = cache.get(c.group, a);
    auto res = gamma_cp_exact(t, c.base);
    r.body["base"] = c.base;
    r.body["base_order"] = a.order();
    r.body["double_cosets"] = t.count();
    r.body["k"] = optional_json(res.k);
    r.body["states"] = res.states;
    bool ok = true;
    if (res.witness)
      r.body["witness"] = checked_witness_json(*res.witness, r.group_spec, &ok);
    r.body["verified"] = ok && res.k.has_value();
    r.ok = ok;
    return r;
  }
  if (c.kind == "p") {
    if (!c.prime)
      throw UnsupportedParameter("--prime is required for --kind p");
    auto pg = gamma_cp_p(g, c.prime);
    r.body["prime"] = c.prime;
    r.body["sylow_order"] = pg.sylow.order();
    r.body["normalizer_order"] = pg.normalizer.order();
    r.body["normalizer_solvable"] = pg.normalizer_solvable;
    r.body["k"] = optional_json(pg.result.k);
    bool ok = true;
    if (pg.result.witness)
      r.body["witness"] = checked_witness_json(*pg.result.witness, r.group_spec, &ok);
    r.body["verified"] = ok && pg.result.k.has_value();
    r.ok = ok;
    return r;
  }
  GammaMin m;
  if (c.kind == "ss")
    m = gamma_cp_ss_upper(g, g->order() <= kEnumerationBound);
  else if (c.kind == "n")
    m = gamma_cp_n_exact(g);
  else if (c.kind == "s")
    m = gamma_cp_s_estimate(g);
  else
    throw UnsupportedParameter("unknown kind '" + c.kind + "'");
  r.body["result"] = gamma_min_json(m, r.group_spec);
  r.body["k"] = optional_json(m.value);
  r.ok = !m.witness || verify_witness(*m.witness).ok;
  r.body["verified"] = r.ok && m.value.has_value();
  return r;
}

Report cmd_oracle(const Config& c) {
  Report r{"oracle", canonical_spec(c.group)};
  auto g = make_group(c.group);
  auto a = resolve_base(g, c.base.empty() ? "whole" : c.base, c.seed);
  auto cache = make_cache(c);
  auto exact = gamma_cp_exact(cache.get(c.group, a), c.base);
  auto oracle = gamma_cp_oracle(a, c.k_max);
  r.body["base"] = c.base;
  r.body["base_order"] = a.order();
  r.body["k_exact"] = optional_json(exact.k);
  r.body["k_oracle"] = optional_json(oracle);
  r.body["agree"] = exact.k == oracle;
  r.ok = exact.k == oracle;
  return r;
}

BNDatum bn_datum_for(const std::string& spec) {
  auto s = canonical_spec(spec);
  if (s == "su:3,3")
    return build_su3_3();
  if (s == "sl:3,2")
    return build_sl3_2();
  if (s.rfind("sl:2,", 0) == 0)
    return build_sl2(static_cast<int>(parse_number(s.substr(5))));
  throw UnsupportedParameter("no BN-pair data for '" + spec + "'");
}

Report cmd_bn_verify(const Config& c) {
  Report r{"bn-verify", canonical_spec(c.group)};
  auto d = bn_datum_for(c.group);
  r.body["orders"] = {{"group", d.group->order()},
                      {"u", d.u.order()},
                      {"h", d.h.order()},
                      {"b", d.b.order()}};
  r.body["weyl_order"] = d.weyl_order;
  if (d.weyl_order == 2) {
    auto k = rank1_criterion(d);
    r.body["rank1"] = {{"h_tilde", k.h_tilde.members.size()},
                       {"cond_a", k.cond_a},
                       {"cond_b", k.cond_b},
                       {"cond_c", k.cond_c},
                       {"agree", k.agree()}};
  } else {
    r.body["rank1"] = nullptr;
  }
  auto u = verify_unipotent_factorization(d);
  r.body["lengths"] = {{"four", u.four}, {"three", u.three}};
  r.body["h_meets_trivially"] = u.h_meets_trivially;
  r.body["u_self_normalizing"] = u.carter;
  r.body["gamma"] = optional_json(u.gamma);
  r.body["minimal"] = u.minimal;
  bool ok = true;
  r.body["witness"] = checked_witness_json(u.witness, r.group_spec, &ok);
  r.ok = ok && u.witness_ok;
  return r;
}

std::string ordering_text(const Ordering& o) {
  std::string s;
  for (int x : o)
    s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

Report cmd_sn_sylow2(const Config& c) {
  Report r{"sn-sylow2", "sym:" + std::to_string(c.n)};
  auto plan = symmetric_sylow2_plan(c.n);
  r.body["n"] = c.n;
  r.body["length"] = plan.length();
  r.body["bound"] = symmetric_sylow2_bound(c.n);
  r.body["within_bound"] = c.n == 1 || static_cast<double>(plan.length()) < symmetric_sylow2_bound(c.n);
  Json orderings = Json::array();
  for (const auto& o : plan.orderings) {
    orderings.push_back(o);
    r.trace.push_back("sylow over ordering " + ordering_text(o));
  }
  r.body["orderings"] = orderings;
  if (c.n >= 2 && (c.verify || c.n <= 10)) {
    auto w = symmetric_sylow2(c.n);
    bool ok = true;
    r.body["witness"] = checked_witness_json(w, r.group_spec, &ok);
    r.ok = ok;
  }
  r.ok = r.ok && r.body["within_bound"].get<bool>();
  return r;
}

Report cmd_an_sylow2(const Config& c) {
  Report r{"an-sylow2", "alt:" + std::to_string(c.n)};
  auto a = alternating_sylow2(c.n);
  r.body["n"] = c.n;
  r.body["h1_order"] = a.h1.order();
  r.body["h2_order"] = a.h2.order();
  r.body["factor_length"] = a.factor_length;
  r.body["length"] = a.witness.length();
  r.body["bound"] = alternating_sylow2_bound(c.n);
  bool within = static_cast<double>(a.witness.length()) < alternating_sylow2_bound(c.n);
  r.body["within_bound"] = within;
  bool ok = within;
  if (c.triple || c.n <= 8) {
    bool t = verify_h1h2h1(a);
    r.body["h1h2h1"] = t;
    ok = ok && t;
  }
  r.body["witness"] = checked_witness_json(a.witness, r.group_spec, &ok);
  r.trace = {"H1 = stabilizer of {0,1}: " + std::to_string(a.factor_length) + " Sylow factors",
             "H2 = stabilizer of {" + std::to_string(c.n - 2) + "," + std::to_string(c.n - 1) +
                 "}: " + std::to_string(a.factor_length) + " Sylow factors",
             "H1 again: " + std::to_string(a.factor_length) + " Sylow factors"};
  r.ok = ok;
  return r;
}

Report cmd_affine(const Config& c) {
  Report r{"affine-factorize", canonical_spec(c.group)};
  if (!c.group.empty()) {
    auto d = affine_datum_from_spec(c.group);
    const auto& G = *d.group;
    r.body["p"] = d.p;
    r.body["n"] = d.n;
    r.body["complement_order"] = d.h.order();
    auto a = affine_factorization(d);
    r.body["k_bits"] = a.k;
    r.body["v"] = G.encode(a.v);
    r.body["h"] = G.encode(a.h);
    r.body["w"] = G.encode(a.w);
    r.body["spread"] = encodings(G, a.spread);
    r.body["bound"] = a.bound;
    r.body["constant_bound"] = a.constant_bound;
    r.body["within_bound"] = a.witness.length() <= a.bound;
    bool ok = a.witness.length() <= a.bound;
    r.body["witness"] = checked_witness_json(a.witness, r.group_spec, &ok);
    for (std::size_t i = 0; i < a.spread.size(); ++i)
      r.trace.push_back("block " + std::to_string(i + 1) + ": translations along w^x_" +
                        std::to_string(i + 1) + ", " + std::to_string(a.k + (i ? 0 : 1)) +
                        " conjugates");
    r.ok = ok;
  }
  if (c.scan) {
    auto s = log_ceiling_scan(c.scan);
    r.body["scan"] = {{"limit", s.limit}, {"primes", s.primes}, {"pass", s.pass}, {"worst", s.worst}};
    r.ok = r.ok && s.pass;
  }
  if (c.group.empty() && !c.scan)
    throw UnsupportedParameter("affine-factorize needs --group or --scan");
  return r;
}

Report cmd_carter(const Config& c) {
  Report r{"carter", canonical_spec(c.group)};
  auto g = make_group(c.group);
  if (!is_solvable(whole_group(g)))
    throw NotSolvable(g->label() + " is not solvable");
  auto cs = carter_subgroup(g, c.seed);
  Json sub = subgroup_json(cs.subgroup, false);
  sub["self_normalizing"] = cs.self_normalizing;
  sub["nilpotent"] = is_nilpotent(cs.subgroup);
  sub["used_fallback"] = cs.used_fallback;
  Json syl = Json::array();
  for (auto [p, o] : cs.sylow_orders)
    syl.push_back({{"p", p}, {"order", o}});
  sub["sylow_orders"] = syl;
  r.body["carter"] = sub;
  r.body["seed"] = c.seed;
  r.ok = cs.self_normalizing && is_nilpotent(cs.subgroup);
  if (c.factorize) {
    auto f = carter_factorization(g, c.seed);
    r.body["bound"] = f.bound;
    r.body["within_bound"] = static_cast<double>(f.witness.length()) <= f.bound + 1e-9;
    bool ok = r.ok && r.body["within_bound"].get<bool>();
    r.body["witness"] = checked_witness_json(f.witness, r.group_spec, &ok);
    r.body["trace"] = carter_trace_json(f.trace);
    r.trace = carter_trace_lines(f.trace);
    r.ok = ok;
  }
  return r;
}

Report cmd_socle(const Config& c) {
  Report r{"socle", canonical_spec(c.group)};
  auto g = make_group(c.group);
  auto lat = normal_lattice(g);
  r.body["group_order"] = g->order();
  r.body["normal_subgroups"] = lat.entries.size();
  r.body["radical_order"] = solvable_radical(lat).order();
  r.body["socle_order"] = socle(lat).order();
  auto s = socle_series(g);
  r.body["series"] = socle_json(s);
  auto b = check_m_bound(s);
  r.body["m_bound"] = m_bound_json(b);
  r.ok = b.pass();
  return r;
}

Report cmd_bounds(const Config& c) {
  Report r{"bounds", canonical_spec(c.group)};
  auto g = make_group(c.group);
  SubgroupSet n;
  if (c.normal == "socle")
    n = socle(g);
  else if (c.normal == "radical")
    n = solvable_radical(g);
  else if (c.normal == "whole")
    n = whole_group(g);
  else
    throw UnsupportedParameter("unknown normal subgroup '" + c.normal + "'");
  r.body["normal"] = c.normal;
  r.body["normal_order"] = n.order();
  auto nq = normal_quotient_inequality(g, n);
  r.body["normal_quotient"] = inequality_json(nq);
  auto sl = socle_layer_inequality(g);
  r.body["socle_layer"] = inequality_json(sl);
  Json tools = Json::array();
  for (auto p : prime_factors(g->order())) {
    auto pg = gamma_cp_p(g, p);
    if (pg.normalizer_solvable)
      tools.push_back(bound_json(sylow_container_bound(g, pg.normalizer, p)));
  }
  r.body["sylow_container"] = tools;
  r.ok = nq.pass && sl.pass;
  for (const auto& t : tools)
    r.ok = r.ok && t["pass"].get<bool>();
  return r;
}

Report cmd_suite(const Config& c, int& code) {
  Report r{"suite", ""};
  if (!is_suite_name(c.suite))
    throw UnsupportedParameter("unknown suite '" + c.suite + "'");
  auto results = run_suite(c.suite, c.jobs, [](const CriterionResult& x) {
    std::fprintf(stderr, "%s criterion %d (%.1fs)\n", x.pass ? "PASS" : "FAIL", x.id, x.seconds);
  });
  r.body["suite"] = c.suite;
  Json list = Json::array();
  for (const auto& x : results) {
    list.push_back({{"id", x.id},
                    {"name", x.name},
                    {"pass", x.pass},
                    {"detail", x.detail},
                    {"seconds", x.seconds},
                    {"exit_code", x.exit_code}});
    r.trace.push_back(std::string(x.pass ? "PASS" : "FAIL") + " " + std::to_string(x.id) + " " +
                      x.name + ": " + x.detail);
  }
  r.body["criteria"] = list;
  code = suite_exit_code(results);
  r.ok = code == 0;
  return r;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpfact: factorizations of finite groups by conjugate subgroups"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("-o,--output", c.output, "write the report here instead of stdout");
  app.add_option("--seed", c.seed, "seed for randomized choices");
  app.add_flag("--no-cache", c.no_cache, "do not read or write double coset tables");
  app.add_option("--cache-dir", c.cache_dir, "cache directory (default $CPFACT_CACHE_DIR)");
  app.add_option("-j,--jobs", c.jobs, "worker threads for suite runs")->check(CLI::Range(1u, 256u));

  auto group_opt = [&](CLI::App* s, bool required = true) {
    auto o = s->add_option("-g,--group", c.group, "group spec, e.g. sym:5 or sl:2,7");
    if (required)
      o->required();
  };

  auto* en = app.add_subcommand("enumerate", "list nilpotent or solvable subgroups");
  group_opt(en);
  en->add_option("--filter", c.filter, "nilpotent or solvable");
  en->add_flag("--classes", c.classes, "one subgroup per conjugacy class");
  en->add_flag("--members", c.members, "include member lists");

  auto* ga = app.add_subcommand("gamma", "minimal conjugate-product factorization");
  group_opt(ga);
  ga->add_option("--base", c.base,
                 "whole, sylow:p, sylow-normalizer:p, carter, unipotent, stabilizer:i or perm:[cycles]");
  ga->add_option("--kind", c.kind, "cp (given base), p, ss, n or s");
  ga->add_option("--prime", c.prime, "prime for --kind p");

  auto* orc = app.add_subcommand("oracle", "compare the solver with brute force");
  group_opt(orc);
  orc->add_option("--base", c.base, "base subgroup, as for gamma");
  orc->add_option("--k-max", c.k_max, "longest product tried");

  auto* bn = app.add_subcommand("bn-verify", "BN-pair checks for sl:2,q, su:3,3 and sl:3,2");
  group_opt(bn);

  auto* sn = app.add_subcommand("sn-sylow2", "Sylow 2-subgroup factorization of S_n");
  sn->add_option("-n", c.n, "degree")->required();
  sn->add_flag("--verify", c.verify, "form the full product even above degree 10");

  auto* an = app.add_subcommand("an-sylow2", "Sylow 2-subgroup factorization of A_n");
  an->add_option("-n", c.n, "degree, at least 6")->required();
  an->add_flag("--triple", c.triple, "check A_n = H1 H2 H1 above degree 8");

  auto* af = app.add_subcommand("affine-factorize", "factorize V x| H by conjugates of H");
  group_opt(af, false);
  af->add_option("--scan", c.scan, "check ceil(log2 p) against the constant for primes up to this");

  auto* ca = app.add_subcommand("carter", "Carter subgroup, optionally with a factorization");
  group_opt(ca);
  ca->add_flag("--factorize", c.factorize, "build and verify the factorization");

  auto* so = app.add_subcommand("socle", "radical/socle series");
  group_opt(so);

  auto* bo = app.add_subcommand("bounds", "inequalities between gamma values");
  group_opt(bo);
  bo->add_option("--normal", c.normal, "socle, radical or whole");

  auto* su = app.add_subcommand("suite", "acceptance battery");
  su->add_option("name", c.suite, "smoke or full")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int code = 0;
  Report report;
  try {
    Format fmt = parse_format(c.format);
    auto* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    if (name == "enumerate")
      report = cmd_enumerate(c);
    else if (name == "gamma")
      report = cmd_gamma(c);
    else if (name == "oracle")
      report = cmd_oracle(c);
    else if (name == "bn-verify")
      report = cmd_bn_verify(c);
    else if (name == "sn-sylow2")
      report = cmd_sn_sylow2(c);
    else if (name == "an-sylow2")
      report = cmd_an_sylow2(c);
    else if (name == "affine-factorize")
      report = cmd_affine(c);
    else if (name == "carter")
      report = cmd_carter(c);
    else if (name == "socle")
      report = cmd_socle(c);
    else if (name == "bounds")
      report = cmd_bounds(c);
    else
      report = cmd_suite(c, code);
    if (code == 0 && !report.ok)
      code = 4;
    std::string text = render(report, fmt);
    if (c.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(c.output);
      if (!(out << text)) {
        std::fprintf(stderr, "error: cannot write %s\n", c.output.c_str());
        return 5;
      }
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
  return code;
}
