#include <gtest/gtest.h>

#include <cmath>

#include "cpfact/bn_pair.hpp"
#include "cpfact/carter_factor.hpp"
#include "cpfact/sylow2.hpp"

using namespace cpfact;

TEST(BNPair, SL2Orders) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    auto d = build_sl2(q);
    EXPECT_EQ(d.group->order(), static_cast<std::size_t>(q * (q * q - 1))) << q;
    EXPECT_EQ(d.u.order(), static_cast<std::size_t>(q));
    EXPECT_EQ(d.h.order(), static_cast<std::size_t>(q - 1));
    EXPECT_EQ(d.weyl_order, 2u);
  }
  EXPECT_THROW(build_sl2(11), UnsupportedParameter);
  EXPECT_THROW(build_sl2(6), UnsupportedParameter);
}

TEST(BNPair, Rank1CriterionSL2) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    auto d = build_sl2(q);
    auto r = rank1_criterion(d);
    EXPECT_TRUE(r.cond_a && r.cond_b && r.cond_c) << q;
    EXPECT_EQ(r.h_tilde.members.size(), d.h.order());
  }
}

TEST(BNPair, UnipotentFactorizationSL2) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    auto d = build_sl2(q);
    auto t = verify_unipotent_factorization(d);
    EXPECT_TRUE(t.four);
    EXPECT_EQ(t.three, q == 2) << q;
    EXPECT_EQ(t.carter, q == 2) << q;
    EXPECT_TRUE(t.h_meets_trivially);
    EXPECT_EQ(t.witness.length(), q == 2 ? 3u : 4u);
    EXPECT_TRUE(t.witness_ok);
    ASSERT_TRUE(t.gamma);
    EXPECT_EQ(*t.gamma, q == 2 ? 3u : 4u);
    EXPECT_TRUE(t.minimal);
  }
}

TEST(BNPair, SL3Over2) {
  auto d = build_sl3_2();
  EXPECT_EQ(d.group->order(), 168u);
  EXPECT_EQ(d.u.order(), 8u);
  EXPECT_TRUE(d.h.is_trivial());
  EXPECT_EQ(d.weyl_order, 6u);
  EXPECT_THROW(rank1_criterion(d), NotRankOne);
  auto t = verify_unipotent_factorization(d);
  EXPECT_TRUE(t.four);
  EXPECT_TRUE(t.h_meets_trivially);
  EXPECT_TRUE(t.witness_ok);
  EXPECT_EQ(t.gamma, std::optional<unsigned>(static_cast<unsigned>(t.witness.length())));
}

TEST(BNPair, SU33) {
  auto d = build_su3_3();
  EXPECT_EQ(d.group->order(), 6048u);
  EXPECT_EQ(d.u.order(), 27u);
  EXPECT_EQ(d.h.order(), 8u);
  EXPECT_EQ(d.weyl_order, 2u);
  auto r = rank1_criterion(d);
  EXPECT_TRUE(r.cond_a && r.cond_b && r.cond_c);
  auto t = verify_unipotent_factorization(d);
  EXPECT_TRUE(t.four);
  EXPECT_FALSE(t.three);
  EXPECT_TRUE(t.h_meets_trivially);
  EXPECT_EQ(t.gamma, std::optional<unsigned>(4));
}

TEST(SymmetricSylow2, PlanLengths) {
  // f(1) = f(2) = 1, f(2m+1) = f(2m) + 2, f(2m) = f(m) + 2
  std::vector<std::size_t> f(33, 0);
  f[1] = f[2] = 1;
  for (int n = 3; n <= 32; ++n)
    f[n] = n % 2 ? f[n - 1] + 2 : f[n / 2] + 2;
  for (int n = 2; n <= 32; ++n) {
    auto p = symmetric_sylow2_plan(n);
    EXPECT_EQ(p.length(), f[n]) << n;
    EXPECT_LT(static_cast<double>(p.length()), symmetric_sylow2_bound(n)) << n;
    for (const auto& o : p.orderings) {
      auto s = o;
      std::sort(s.begin(), s.end());
      for (int i = 0; i < n; ++i)
        EXPECT_EQ(s[i], i);
    }
  }
}

TEST(SymmetricSylow2, OrderingSubgroupIsSylow) {
  for (int n : {3, 4, 5, 6, 7}) {
    auto g = make_group("sym:" + std::to_string(n));
    for (const auto& o : symmetric_sylow2_plan(n).orderings) {
      std::vector<Index> gens;
      for (const auto& p : ordering_generators(o, n))
        gens.push_back(*g->index_of(p.images()));
      auto s = subgroup_closure(g, gens);
      EXPECT_EQ(s.order(), p_part(g->order(), 2)) << n;
    }
  }
}

TEST(SymmetricSylow2, WitnessesCover) {
  for (int n = 2; n <= 8; ++n) {
    auto w = symmetric_sylow2(n);
    EXPECT_EQ(w.base.order(), p_part(w.group->order(), 2));
    EXPECT_TRUE(verify_witness(w).ok) << n;
  }
  // S4 = P1 P2 P3 and no two conjugates suffice
  auto w4 = symmetric_sylow2(4);
  EXPECT_EQ(w4.length(), 3u);
  EXPECT_EQ(*gamma_cp_exact(w4.base).k, 3u);
}

TEST(AlternatingSylow2, TripleProduct) {
  for (int n : {6, 7, 8}) {
    auto a = alternating_sylow2(n);
    EXPECT_EQ(a.h1.order(), a.group->order() * 2 / static_cast<std::size_t>(n * (n - 1)));
    EXPECT_TRUE(verify_h1h2h1(a)) << n;
    EXPECT_EQ(a.witness.base.order(), p_part(a.group->order(), 2));
    EXPECT_EQ(a.witness.length(), 3 * symmetric_sylow2_plan(n - 2).length());
    EXPECT_LT(static_cast<double>(a.witness.length()), alternating_sylow2_bound(n));
    EXPECT_TRUE(verify_witness(a.witness).ok) << n;
  }
  EXPECT_THROW(alternating_sylow2(5), UnsupportedParameter);
}

TEST(Affine, LemmaTrick) {
  for (std::string spec : {"affine:5,1,[[2]]", "affine:3,1,[[2]]",
                           "affine:7,1,[[3]]", "affine:2,2,[[0,1,1,1]]"}) {
    auto d = affine_datum_from_spec(spec);
    unsigned k = ceil_log2(static_cast<unsigned long long>(d.p));
    std::size_t tried = 0;
    for (Index v : d.v.members())
      for (Index h : d.h.members()) {
        if (d.act(v, d.group->inverse(h)) == v) {
          EXPECT_THROW(lemma_trick(d, v, h), FixedVector);
          continue;
        }
        auto r = lemma_trick(d, v, h);
        EXPECT_EQ(r.conjugators.size(), k + 1);
        EXPECT_TRUE(r.covered) << spec;
        EXPECT_TRUE(r.elements_ok) << spec;
        ++tried;
      }
    EXPECT_GT(tried, 0u) << spec;
  }
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
}

TEST(Affine, Factorization) {
  struct Case {
    std::string spec;
    std::size_t bound;
  };
  for (const auto& c : std::vector<Case>{{"affine:5,1,[[2]]", 4},
                                         {"affine:2,2,[[0,1,1,1]]", 3},
                                         {"affine:3,2,[[0,2,1,0];[1,1,1,2]]", 5},
                                         {"affine:7,1,[[3]]", 4},
                                         {"affine:7,1,[[2]]", 4},
                                         {"affine:3,1,[[2]]", 3},
                                         {"affine:2,3,[[0,1,0,0,0,1,1,1,0]]", 4},
                                         {"affine:5,2,[[0,1,2,0]]", 7}}) {
    auto d = affine_datum_from_spec(c.spec);
    auto r = affine_factorization(d);
    EXPECT_EQ(r.bound, c.bound) << c.spec;
    EXPECT_EQ(r.witness.length(), r.bound) << c.spec;
    EXPECT_LE(static_cast<double>(r.witness.length()), r.constant_bound + 1e-9) << c.spec;
    EXPECT_TRUE(r.verified);
    auto exact = gamma_cp_exact(d.h).k;
    ASSERT_TRUE(exact);
    EXPECT_LE(*exact, r.witness.length());
    EXPECT_GE(r.witness.length(), 3u);
  }
  // AGL(1,5): exact value 3, bound 4
  EXPECT_EQ(*gamma_cp_exact(affine_datum_from_spec("affine:5,1,[[2]]").h).k, 3u);
}

TEST(Affine, Hypotheses) {
  // diagonal action on F_3^2 leaves the axes invariant
  EXPECT_THROW(affine_factorization(affine_datum_from_spec("affine:3,2,[[2,0,0,1]]")),
               NotIrreducible);
  EXPECT_THROW(affine_factorization(affine_datum_from_spec("affine:5,1,[[1]]")),
               HypothesisFailed);
  // S3 x C3 with V the C3 factor: the S3 factor is normal
  auto g = make_group("product:[sym:3;cyclic:3]");
  auto fixing = [&](int lo) {
    Bitset bits(g->order());
    for (Index x = 0; x < g->order(); ++x) {
      auto e = g->encode(x);
      bool fixed = true;
      for (int i = lo; i < lo + 3; ++i)
        fixed = fixed && e[i] == i;
      if (fixed)
        bits.set(x);
    }
    return subgroup_from_bits(g, bits);
  };
  SubgroupSet v = fixing(0), h = fixing(3);
  auto d = make_affine_datum(g, v, h);
  EXPECT_THROW(affine_factorization(d), NotCoreFree);
}

TEST(Affine, LogCeilingScan) {
  auto s = log_ceiling_scan(100000);
  EXPECT_TRUE(s.pass);
  EXPECT_EQ(s.worst, 5u);
  EXPECT_EQ(s.primes, 9592u);
  EXPECT_NEAR(affine_constant(), 1.29203, 1e-5);
}

TEST(Carter, Factorizations) {
  for (std::string spec :
       {"sym:4", "sl:2,3", "gl:2,3", "affine:7,1,[[2]]", "dihedral:6", "dicyclic:3",
        "affine:3,2,[[0,2,1,0];[1,1,1,2]]", "product:[sym:3;sym:3]", "product:[sym:4;cyclic:2]",
        "affine:2,2,[[0,1,1,1]]", "sym:3", "dihedral:4", "cyclic:12", "affine:5,1,[[2]]",
        "affine:2,3,[[0,1,0,0,0,1,1,1,0]]", "product:[sym:4;sym:3]"}) {
    auto g = make_group(spec);
    auto r = carter_factorization(g);
    const auto& c = r.witness.base;
    EXPECT_TRUE(r.verified) << spec;
    EXPECT_TRUE(is_nilpotent(c));
    EXPECT_EQ(normalizer(c), c);
    EXPECT_LE(static_cast<double>(r.witness.length()), r.bound + 1e-9) << spec;
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.front().length, r.witness.length());
    auto exact = gamma_cp_exact(c).k;
    ASSERT_TRUE(exact);
    EXPECT_LE(*exact, r.witness.length()) << spec;
    auto other = carter_factorization(g, 5);
    EXPECT_TRUE(conjugating_element(c, other.witness.base).has_value()) << spec;
  }
  auto s4 = carter_factorization(make_group("sym:4"));
  EXPECT_EQ(s4.witness.length(), 3u);
  EXPECT_EQ(s4.witness.base.order(), 8u);
  EXPECT_EQ(carter_factorization(make_group("dihedral:4")).witness.length(), 1u);
  auto f21 = carter_factorization(make_group("affine:7,1,[[2]]"));
  EXPECT_LE(f21.witness.length(), 4u);
  EXPECT_EQ(*gamma_cp_exact(f21.witness.base).k, 3u);
  EXPECT_THROW(carter_factorization(make_group("alt:5")), NotSolvable);
}

TEST(DirectPower, A5Squared) {
  auto t = make_group("alt:5");
  auto base = *gamma_cp_p(t, 2).result.witness;
  ASSERT_EQ(base.length(), 3u);
  auto r = special_direct_power(t, 2, base);
  EXPECT_EQ(r.witness.group->order(), 3600u);
  EXPECT_EQ(r.witness.base.order(), 144u);
  EXPECT_EQ(r.witness.length(), 3u);
  EXPECT_TRUE(r.verified);
  auto one = special_direct_power(t, 1, base);
  EXPECT_EQ(one.witness.length(), base.length());
  EXPECT_EQ(special_direct_power(t, 2, base, 3).witness.length(), 3u);
  EXPECT_EQ(special_direct_power(t, 2, base, 5).witness.length(), 5u);
  auto s4 = make_group("sym:4");
  FactorizationWitness w{s4, whole_group(s4), {0}, true, "whole-group"};
  EXPECT_THROW(special_direct_power(s4, 2, w), NotSimple);
}
