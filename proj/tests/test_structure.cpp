#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "cpfact/spec_parser.hpp"
#include "cpfact/structure.hpp"

using namespace cpfact;

namespace {

// Normal subgroups by brute force: every subgroup generated by two elements
// that is invariant under conjugation by every element.
std::set<std::vector<Index>> brute_normal(const GroupPtr& g) {
  std::set<std::vector<Index>> out;
  for (Index a = 0; a < g->order(); ++a)
    for (Index b = a; b < g->order(); ++b) {
      auto s = subgroup_closure(g, {a, b});
      bool normal = true;
      for (Index x = 0; x < g->order() && normal; ++x)
        normal = conjugate_set(s.as_set(), x) == s.as_set();
      if (normal)
        out.insert(s.members());
    }
  return out;
}

std::vector<std::size_t> orders(const std::vector<SubgroupSet>& v) {
  std::vector<std::size_t> out;
  for (auto& s : v)
    out.push_back(s.order());
  return out;
}

} // namespace

TEST(NormalLattice, S4) {
  auto g = make_group("sym:4");
  auto lat = normal_lattice(g);
  EXPECT_EQ(orders(lat.entries), (std::vector<std::size_t>{1, 4, 12, 24}));
  for (auto& e : lat.entries)
    EXPECT_TRUE(is_normal(e));
}

TEST(NormalLattice, A5Simple) {
  auto lat = normal_lattice(make_group("alt:5"));
  EXPECT_EQ(orders(lat.entries), (std::vector<std::size_t>{1, 60}));
}

TEST(NormalLattice, MatchesBruteForce) {
  // every normal subgroup of these groups is generated by two elements
  for (std::string spec : {"product:[sym:3;cyclic:2]", "sym:4", "dihedral:6", "dicyclic:3",
                           "gl:2,3", "affine:7,1,[[2]]"}) {
    auto g = make_group(spec);
    auto lat = normal_lattice(g);
    std::set<std::vector<Index>> got;
    for (auto& e : lat.entries)
      got.insert(e.members());
    EXPECT_EQ(got, brute_normal(g)) << spec;
  }
  // S3 x C2 is dihedral of order 12: 1, Z, C3, C6, two S3's and the whole group
  EXPECT_EQ(normal_lattice(make_group("product:[sym:3;cyclic:2]")).entries.size(), 7u);
}

TEST(NormalLattice, JoinClosed) {
  auto lat = normal_lattice(make_group("product:[sym:3;sym:3]"));
  std::set<std::vector<Index>> all;
  for (auto& e : lat.entries)
    all.insert(e.members());
  for (auto& a : lat.entries)
    for (auto& b : lat.entries)
      EXPECT_TRUE(all.count(join(a, b).members()));
}

TEST(RadicalSocle, Examples) {
  auto s4 = make_group("sym:4");
  EXPECT_TRUE(solvable_radical(s4).is_whole());
  auto s5 = make_group("sym:5");
  EXPECT_TRUE(solvable_radical(s5).is_trivial());
  EXPECT_EQ(socle(s5).order(), 60u);
  auto g = make_group("product:[alt:5;cyclic:6]");
  auto r = solvable_radical(g);
  EXPECT_EQ(r.order(), 6u);
  // the C6 factor moves only the last six points
  for (Index x : r.members()) {
    auto e = g->encode(x);
    for (int i = 0; i < 5; ++i)
      EXPECT_EQ(e[i], i);
  }
}

TEST(RadicalSocle, RadicalContainsSolvableNormals) {
  for (std::string spec : {"product:[sym:4;sym:5]", "gl:2,3", "product:[alt:5;cyclic:6]"}) {
    auto g = make_group(spec);
    auto lat = normal_lattice(g);
    auto r = solvable_radical(lat);
    EXPECT_TRUE(is_solvable(r));
    for (std::size_t i = 0; i < lat.entries.size(); ++i) {
      if (lat.solvable[i]) {
        EXPECT_TRUE(lat.entries[i].bits().is_subset_of(r.bits()));
      }
    }
  }
}

TEST(SocleSeries, S5) {
  auto s = socle_series(make_group("sym:5"));
  EXPECT_EQ(s.m, 1u);
  ASSERT_EQ(s.layers.size(), 1u);
  EXPECT_EQ(s.layers[0].n, 1u);
  EXPECT_EQ(s.nab_order, 60);
  EXPECT_EQ(orders(s.chain), (std::vector<std::size_t>{1, 60, 120}));
  auto b = check_m_bound(s);
  EXPECT_TRUE(b.pass());
  EXPECT_NEAR(b.bound, std::log2(std::log2(60.0)) / std::log2(5.0), 1e-12);
  EXPECT_NEAR(b.bound, 1.1036, 1e-3);
}

TEST(SocleSeries, Solvable) {
  for (std::string spec : {"sym:4", "gl:2,3", "cyclic:5"}) {
    auto s = socle_series(make_group(spec));
    EXPECT_EQ(s.m, 0u);
    EXPECT_EQ(s.nab_order, 2);
    auto b = check_m_bound(s);
    EXPECT_EQ(b.bound, 0);
    EXPECT_TRUE(b.pass());
  }
}

TEST(SocleSeries, S4xS5) {
  auto s = socle_series(make_group("product:[sym:4;sym:5]"));
  EXPECT_EQ(orders(s.chain), (std::vector<std::size_t>{24, 1440, 2880}));
  EXPECT_EQ(s.m, 1u);
  EXPECT_EQ(s.layers[0].n, 1u);
  EXPECT_EQ(s.nab_order, 60);
}

TEST(SocleSeries, A5WreathC2) {
  auto s = socle_series(make_group("wreath:alt5,2"));
  EXPECT_EQ(orders(s.chain), (std::vector<std::size_t>{1, 3600, 7200}));
  EXPECT_EQ(s.m, 1u);
  EXPECT_EQ(s.layers[0].n, 2u);
  EXPECT_EQ(s.layers[0].factor_orders, (std::vector<std::size_t>{60, 60}));
  EXPECT_EQ(s.nab_order, 3600);
  auto b = check_m_bound(s);
  EXPECT_TRUE(b.pass());
  EXPECT_NEAR(b.bound, 1.5342, 1e-3);
}

TEST(Carter, Examples) {
  auto s4 = make_group("sym:4");
  auto c = carter_subgroup(s4);
  EXPECT_EQ(c.subgroup.order(), 8u);
  auto s3 = make_group("sym:3");
  EXPECT_EQ(carter_subgroup(s3).subgroup.order(), 2u);
  auto d8 = make_group("dihedral:4");
  EXPECT_TRUE(carter_subgroup(d8).subgroup.is_whole());
  EXPECT_THROW(carter_subgroup(make_group("alt:5")), NotSolvable);
}

TEST(Carter, PropertiesAcrossSeeds) {
  for (std::string spec : {"sym:4", "sl:2,3", "gl:2,3", "affine:7,1,[[2]]", "dihedral:6",
                           "dicyclic:3", "affine:3,2,[[0,2,1,0];[1,1,1,2]]",
                           "product:[sym:3;sym:3]", "product:[sym:4;cyclic:2]",
                           "affine:2,2,[[0,1,1,1]]"}) {
    auto g = make_group(spec);
    auto c0 = carter_subgroup(g, 0);
    const auto& c = c0.subgroup;
    EXPECT_TRUE(is_nilpotent(c));
    EXPECT_EQ(normalizer(c), c);
    // no nilpotent subgroup strictly contains C
    for (auto& s : enumerate_subgroups(g, SubgroupFilter::Nilpotent, false)) {
      if (s.order() > c.order()) {
        EXPECT_FALSE(c.bits().is_subset_of(s.bits())) << spec;
      }
    }
    // C^G = G
    EXPECT_TRUE(normal_closure(c).is_whole()) << spec;
    // image in G/N is a Carter subgroup for every minimal normal N
    for (auto& n : minimal_normal_subgroups(g)) {
      auto q = quotient_group(g, n);
      auto img = image_in_quotient(c, q);
      EXPECT_TRUE(is_nilpotent(img));
      EXPECT_EQ(normalizer(img), img) << spec;
    }
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto ci = carter_subgroup(g, seed);
      EXPECT_TRUE(conjugating_element(c, ci.subgroup).has_value()) << spec << " seed " << seed;
    }
  }
}
