#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cpfact/spec_parser.hpp"
#include "cpfact/subgroup.hpp"

using namespace cpfact;

namespace {

Index idx(const GroupPtr& g, std::vector<int> enc) { return g->index_of(enc).value(); }

// Every subgroup generated by at most two elements, deduplicated.
std::vector<SubgroupSet> two_generated(const GroupPtr& g) {
  std::vector<SubgroupSet> out;
  std::set<std::vector<Index>> seen;
  for (Index a = 0; a < g->order(); ++a)
    for (Index b = a; b < g->order(); ++b) {
      auto s = subgroup_closure(g, {a, b});
      if (seen.insert(s.members()).second)
        out.push_back(s);
    }
  return out;
}

std::set<std::vector<Index>> as_sets(const std::vector<SubgroupSet>& v) {
  std::set<std::vector<Index>> out;
  for (const auto& s : v)
    out.insert(s.members());
  return out;
}

SubgroupSet unipotent_sl2(const GroupPtr& g, unsigned q) {
  std::vector<Index> gens;
  for (unsigned b = 1; b < q; ++b)
    gens.push_back(idx(g, {1, static_cast<int>(b), 0, 1}));
  return subgroup_closure(g, gens);
}

SubgroupSet lower_sl2(const GroupPtr& g, unsigned q) {
  std::vector<Index> gens;
  for (unsigned b = 1; b < q; ++b)
    gens.push_back(idx(g, {1, 0, static_cast<int>(b), 1}));
  return subgroup_closure(g, gens);
}

} // namespace

TEST(Parser, FamiliesHaveExpectedOrders) {
  std::vector<std::pair<std::string, std::size_t>> cases = {
      {"sym:5", 120}, {"alt:5", 60}, {"alt:6", 360}, {"alt:4", 12}, {"cyclic:7", 7},
      {"dihedral:5", 10}, {"dicyclic:2", 8}, {"dicyclic:3", 12}, {"sl:2,5", 120},
      {"sl:3,2", 168}, {"gl:2,3", 48}, {"psl:2,7", 168}, {"psl:2,4", 60}, {"psl:2,9", 360},
      {"psl:2,5", 60}, {"psl:2,2", 6}, {"psl:2,3", 12}, {"perm:[(0 1)(2 3);(0 1 2)]", 12},
      {"affine:7,1,[[2]]", 21}, {"affine:5,1,[[2]]", 20}, {"affine:2,2,[[0,1,1,1]]", 12},
      {"affine:3,2,[[0,2,1,0];[1,1,1,2]]", 72}, {"wreath:alt5,2", 7200},
      {"product:[sym:4;sym:5]", 2880}, {"product:[sym:3;sym:3]", 36}, {"su:3,3", 6048},
  };
  for (auto& [spec, order] : cases)
    EXPECT_EQ(make_group(spec)->order(), order) << spec;
}

TEST(Parser, PositionAnnotatedErrors) {
  try {
    parse_group("sym:x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 4u);
  }
  try {
    parse_group("perm:[(0 1)(1 2)]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 6u);
  }
  EXPECT_THROW(parse_group("foo:3"), ParseError);
  EXPECT_THROW(parse_group("sym:5,"), ParseError);
  EXPECT_THROW(parse_group("sl:2,6"), ParseError);
  EXPECT_THROW(parse_group("psl:3,2"), ParseError);
  EXPECT_THROW(parse_group("affine:4,1,[[1]]"), ParseError);
  EXPECT_THROW(parse_group("affine:3,2,[[1,2,3]]"), ParseError);
  EXPECT_THROW(parse_group("product:[sl:2,3;sym:3]"), ParseError);
  EXPECT_THROW(parse_group("perm:[(0 1"), ParseError);
}

TEST(Parser, WhitespaceIgnoredAndHashStable) {
  auto a = parse_group("perm:[ (0 1) ; (0 1 2) ]");
  EXPECT_EQ(a.text, "perm:[(0 1);(0 1 2)]");
  EXPECT_EQ(a.group->order(), 6u);
  EXPECT_EQ(spec_hash("sym:5"), spec_hash(canonical_spec(" sym : 5 ")));
  EXPECT_NE(spec_hash("sym:5"), spec_hash("sym:6"));
}

TEST(Closure, SmallExamples) {
  auto s3 = make_group("sym:3");
  EXPECT_EQ(subgroup_closure(s3, {idx(s3, {1, 2, 0})}).order(), 3u);
  auto s4 = make_group("sym:4");
  EXPECT_EQ(subgroup_closure(s4, {idx(s4, {1, 0, 2, 3}), idx(s4, {0, 1, 3, 2})}).order(), 4u);
  auto sl27 = make_group("sl:2,7");
  EXPECT_EQ(unipotent_sl2(sl27, 7).order(), 7u);
}

TEST(Product, BasicCounts) {
  auto g = make_group("sl:2,3");
  auto u = unipotent_sl2(g, 3), um = lower_sl2(g, 3);
  EXPECT_EQ(setwise_product(u, u).size(), 3u);
  EXPECT_EQ(setwise_product(u, um).size(), 9u);
  EXPECT_EQ(setwise_product(u.as_set(), um.as_set()).size(), 9u);

  auto h = make_group("sl:2,5");
  auto u5 = unipotent_sl2(h, 5), l5 = lower_sl2(h, 5);
  auto uu = setwise_product(u5, l5);
  EXPECT_EQ(setwise_product(setwise_product(uu, u5), l5).size(), 120u);
}

TEST(Product, SubgroupTrickMatchesGeneralProduct) {
  auto g = make_group("sym:5");
  std::mt19937 rng(11);
  std::uniform_int_distribution<Index> d(0, 119);
  for (int t = 0; t < 30; ++t) {
    ElementSet x(g);
    for (int i = 0; i < 7; ++i)
      x.bits().set(d(rng));
    auto a = subgroup_closure(g, {d(rng)});
    EXPECT_EQ(setwise_product(x, a), setwise_product(x, a.as_set()));
    EXPECT_EQ(setwise_product(a, x), setwise_product(a.as_set(), x));
  }
}

TEST(Product, Associative) {
  auto g = make_group("alt:5");
  std::mt19937 rng(3);
  std::uniform_int_distribution<Index> d(0, 59);
  for (int t = 0; t < 20; ++t) {
    ElementSet x(g), y(g), z(g);
    for (int i = 0; i < 4; ++i) {
      x.bits().set(d(rng));
      y.bits().set(d(rng));
      z.bits().set(d(rng));
    }
    EXPECT_EQ(setwise_product(setwise_product(x, y), z), setwise_product(x, setwise_product(y, z)));
  }
}

TEST(Product, ParentMismatch) {
  auto a = make_group("sym:3"), b = make_group("sym:3");
  EXPECT_THROW(setwise_product(whole_group(a).as_set(), whole_group(b).as_set()), ParentMismatch);
}

TEST(Conjugation, Basics) {
  auto g = make_group("sl:2,5");
  auto u = unipotent_sl2(g, 5);
  Index n0 = idx(g, {0, 1, 4, 0});
  auto c = conjugate_subgroup(u, n0);
  EXPECT_EQ(c, lower_sl2(g, 5));
  EXPECT_EQ(intersection(u, c).order(), 1u);
  EXPECT_EQ(conjugate_set(u.as_set(), 0), u.as_set());
  for (Index x = 0; x < g->order(); x += 7) {
    auto y = conjugate_set(conjugate_set(u.as_set(), x), g->inverse(x));
    EXPECT_EQ(y, u.as_set());
    EXPECT_EQ(conjugate_set(u.as_set(), x).size(), u.order());
  }
}

TEST(Normalizer, Examples) {
  auto s4 = make_group("sym:4");
  auto p = sylow_subgroup(s4, 2);
  EXPECT_EQ(p.order(), 8u);
  EXPECT_EQ(normalizer(p), p);

  auto s5 = make_group("sym:5");
  std::vector<Index> gens;
  for (Index x = 0; x < s5->order(); ++x)
    if (s5->encode(x)[4] == 4)
      gens.push_back(x);
  auto stab = subgroup_closure(s5, gens);
  EXPECT_EQ(stab.order(), 24u);
  EXPECT_TRUE(core(stab).is_trivial());
  EXPECT_TRUE(normalizer(stab).bits().is_subset_of(normalizer(stab).bits()));

  auto a5 = make_group("alt:5");
  std::vector<Index> a4;
  for (Index x = 0; x < a5->order(); ++x)
    if (a5->encode(x)[4] == 4)
      a4.push_back(x);
  auto a4s = subgroup_closure(a5, a4);
  EXPECT_EQ(a4s.order(), 12u);
  EXPECT_TRUE(normal_closure(a4s).is_whole());
  EXPECT_EQ(normalizer(a4s), a4s);
}

TEST(Normalizer, PropertiesOnRandomSubgroups) {
  auto g = make_group("sl:2,3");
  std::mt19937 rng(5);
  std::uniform_int_distribution<Index> d(0, static_cast<Index>(g->order() - 1));
  for (int t = 0; t < 20; ++t) {
    auto s = subgroup_closure(g, {d(rng), d(rng)});
    auto n = normalizer(s);
    EXPECT_TRUE(s.bits().is_subset_of(n.bits()));
    EXPECT_TRUE(is_normal_in(s, n));
    auto c = core(s);
    EXPECT_TRUE(is_normal(c));
    EXPECT_TRUE(c.bits().is_subset_of(s.bits()));
    auto cl = normal_closure(s);
    EXPECT_TRUE(is_normal(cl));
    EXPECT_EQ(g->order() % s.order(), 0u);
    // brute-force normalizer
    for (Index x = 0; x < g->order(); ++x)
      EXPECT_EQ(n.contains(x), conjugate_set(s.as_set(), x) == s.as_set());
    auto z = centralizer(s);
    for (Index x = 0; x < g->order(); ++x) {
      bool comm = true;
      for (Index y : s.members())
        comm = comm && g->mult(x, y) == g->mult(y, x);
      EXPECT_EQ(z.contains(x), comm);
    }
  }
}

TEST(Sylow, Examples) {
  auto s5 = make_group("sym:5");
  auto c4 = subgroup_closure(s5, {idx(s5, {1, 2, 3, 0, 4})});
  auto p = sylow_over(c4, 2);
  EXPECT_EQ(p.order(), 8u);
  EXPECT_TRUE(c4.bits().is_subset_of(p.bits()));
  EXPECT_THROW(sylow_over(subgroup_closure(s5, {idx(s5, {1, 2, 0, 3, 4})}), 2), NotPGroup);

  auto g = make_group("sl:2,7");
  auto p7 = sylow_subgroup(g, 7);
  EXPECT_EQ(p7.order(), 7u);
  EXPECT_TRUE(conjugating_element(p7, unipotent_sl2(g, 7)).has_value());
}

TEST(Sylow, CountsSatisfySylowTheorems) {
  for (std::string spec : {"sym:4", "alt:5", "sl:2,5", "gl:2,3", "affine:7,1,[[2]]", "sym:5"}) {
    auto g = make_group(spec);
    for (auto p : prime_factors(g->order())) {
      auto fam = sylow_family(g, p);
      auto pa = p_part(g->order(), p);
      EXPECT_EQ(fam.size() % p, 1u) << spec << " p=" << p;
      EXPECT_EQ((g->order() / pa) % fam.size(), 0u) << spec << " p=" << p;
      for (auto& s : fam)
        EXPECT_EQ(s.order(), pa);
    }
  }
}

TEST(Predicates, Examples) {
  auto s4 = make_group("sym:4");
  EXPECT_TRUE(is_nilpotent(sylow_subgroup(s4, 2)));
  EXPECT_TRUE(is_solvable(whole_group(s4)));
  EXPECT_FALSE(is_nilpotent(whole_group(s4)));
  EXPECT_FALSE(is_solvable(whole_group(make_group("alt:5"))));
  auto ser = derived_series(whole_group(s4));
  ASSERT_EQ(ser.size(), 4u);
  EXPECT_EQ(ser[1].order(), 12u);
  EXPECT_EQ(ser[2].order(), 4u);
  EXPECT_EQ(ser[3].order(), 1u);
  EXPECT_TRUE(is_nilpotent(whole_group(make_group("dicyclic:2"))));
  EXPECT_FALSE(is_nilpotent(whole_group(make_group("dihedral:3"))));
}

TEST(Enumerate, S3Nilpotent) {
  auto s3 = make_group("sym:3");
  auto all = enumerate_subgroups(s3, SubgroupFilter::Nilpotent, false);
  EXPECT_EQ(all.size(), 5u);
  auto cls = enumerate_subgroups(s3, SubgroupFilter::Nilpotent, true);
  EXPECT_EQ(cls.size(), 3u);
}

TEST(Enumerate, CyclicGivesAllSubgroups) {
  auto c12 = make_group("cyclic:12");
  EXPECT_EQ(enumerate_subgroups(c12, SubgroupFilter::Nilpotent, false).size(), 6u);
}

TEST(Enumerate, A5SolvableClasses) {
  auto a5 = make_group("alt:5");
  auto cls = enumerate_subgroups(a5, SubgroupFilter::Solvable, true);
  std::multiset<std::size_t> orders;
  for (auto& s : cls)
    orders.insert(s.order());
  // classes: 1, C2, C3, V4, C5, S3, D10, A4
  EXPECT_EQ(orders, (std::multiset<std::size_t>{1, 2, 3, 4, 5, 6, 10, 12}));
}

TEST(Enumerate, MatchesTwoGeneratedOracle) {
  // every subgroup of these groups is generated by two elements
  for (std::string spec : {"sym:4", "alt:5", "sl:2,3", "dihedral:6", "dicyclic:3"}) {
    auto g = make_group(spec);
    auto oracle = two_generated(g);
    std::vector<SubgroupSet> nil, sol;
    for (auto& s : oracle) {
      if (is_nilpotent(s))
        nil.push_back(s);
      if (is_solvable(s))
        sol.push_back(s);
    }
    EXPECT_EQ(as_sets(enumerate_subgroups(g, SubgroupFilter::Nilpotent, false)), as_sets(nil))
        << spec;
    EXPECT_EQ(as_sets(enumerate_subgroups(g, SubgroupFilter::Solvable, false)), as_sets(sol))
        << spec;
  }
}

TEST(Enumerate, SampledCompletenessAndConjugationClosure) {
  std::mt19937 rng(17);
  for (std::string spec : {"gl:2,3", "affine:3,2,[[0,2,1,0];[1,1,1,2]]", "product:[sym:3;sym:3]",
                           "sym:5", "psl:2,7"}) {
    auto g = make_group(spec);
    auto all = enumerate_subgroups(g, SubgroupFilter::Nilpotent, false);
    auto sets = as_sets(all);
    std::uniform_int_distribution<Index> d(0, static_cast<Index>(g->order() - 1));
    for (int t = 0; t < 200; ++t) {
      int k = 1 + t % 3;
      std::vector<Index> gens;
      for (int i = 0; i < k; ++i)
        gens.push_back(d(rng));
      auto s = subgroup_closure(g, gens);
      if (is_nilpotent(s)) {
        EXPECT_TRUE(sets.count(s.members())) << spec;
      }
    }
    for (auto& s : all)
      for (Index x : g->generators())
        EXPECT_TRUE(sets.count(conjugate_set(s.as_set(), x).members()));
    for (auto& s : all)
      EXPECT_TRUE(is_nilpotent(s));
  }
}

TEST(Enumerate, BoundExceeded) {
  EXPECT_THROW(enumerate_subgroups(make_group("alt:7"), SubgroupFilter::Nilpotent, true),
               BoundExceeded);
}

TEST(EmbeddedGroup, SubgroupAsGroup) {
  auto s4 = make_group("sym:4");
  auto p = sylow_subgroup(s4, 2);
  auto e = subgroup_as_group(p);
  EXPECT_EQ(e.group->order(), 8u);
  for (Index a = 0; a < 8; ++a)
    for (Index b = 0; b < 8; ++b)
      EXPECT_EQ(e.to_parent[e.group->mult(a, b)], s4->mult(e.to_parent[a], e.to_parent[b]));
}
