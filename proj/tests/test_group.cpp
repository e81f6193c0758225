#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cpfact/group.hpp"
#include "cpfact/subgroup.hpp"

using namespace cpfact;

namespace {

GroupPtr sym(int n) {
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i)
    cyc[i] = i;
  return enumerate_group({Permutation::cycle(n, {0, 1}), Permutation::cycle(n, cyc)});
}

GroupPtr sl2(unsigned q) {
  auto f = GaloisField::make(q);
  std::vector<MatrixGF> gens;
  // x(b) for an additive basis, plus the Weyl element
  for (unsigned i = 0; i < f->degree(); ++i) {
    unsigned b = 1;
    for (unsigned j = 0; j < i; ++j)
      b *= f->characteristic();
    gens.emplace_back(f, 2, std::vector<std::uint8_t>{1, static_cast<std::uint8_t>(b), 0, 1});
  }
  gens.emplace_back(f, 2, std::vector<std::uint8_t>{0, 1, f->neg(1), 0});
  return enumerate_group(gens);
}

// Class sizes by brute force: |G| / |C_G(x)| for one x per class.
std::multiset<std::size_t> brute_class_sizes(const GroupTable& g) {
  std::vector<char> done(g.order(), 0);
  std::multiset<std::size_t> out;
  for (Index x = 0; x < g.order(); ++x) {
    if (done[x])
      continue;
    std::set<Index> cls;
    for (Index y = 0; y < g.order(); ++y)
      cls.insert(g.conjugate(x, y));
    for (Index c : cls)
      done[c] = 1;
    out.insert(cls.size());
  }
  return out;
}

void check_group_laws(const GroupTable& g, unsigned seed) {
  for (Index a = 0; a < g.order(); ++a) {
    ASSERT_EQ(g.mult(a, 0), a);
    ASSERT_EQ(g.mult(0, a), a);
    ASSERT_EQ(g.mult(a, g.inverse(a)), 0u);
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<Index> d(0, static_cast<Index>(g.order() - 1));
  for (int t = 0; t < 1000; ++t) {
    Index a = d(rng), b = d(rng), c = d(rng);
    ASSERT_EQ(g.mult(g.mult(a, b), c), g.mult(a, g.mult(b, c)));
  }
}

} // namespace

TEST(Field, PrimitiveElementGeneratesMultiplicativeGroup) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    auto f = GaloisField::make(q);
    std::set<unsigned> powers;
    auto z = f->primitive_element();
    GaloisField::Code x = 1;
    for (unsigned i = 0; i < q - 1; ++i) {
      powers.insert(x);
      x = f->mul(x, z);
    }
    EXPECT_EQ(powers.size(), q - 1) << "q=" << q;
    EXPECT_EQ(x, 1);
  }
}

TEST(Field, AxiomsOnGF9) {
  auto f = GaloisField::make(9);
  for (unsigned a = 0; a < 9; ++a)
    for (unsigned b = 0; b < 9; ++b) {
      EXPECT_EQ(f->add(a, b), f->add(b, a));
      EXPECT_EQ(f->mul(a, b), f->mul(b, a));
      for (unsigned c = 0; c < 9; ++c)
        EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    }
  // x^2 + 1 = 0 for the adjoined root z (code 3)
  EXPECT_EQ(f->add(f->mul(3, 3), 1), 0);
}

TEST(Field, RejectsReducibleModulus) {
  EXPECT_THROW(GaloisField(2, 2, {1, 0, 1}), UnsupportedParameter);
  EXPECT_THROW(GaloisField::make(6), UnsupportedParameter);
}

TEST(Field, MixedFieldArithmeticThrows) {
  FieldElement a(GaloisField::make(5), 2), b(GaloisField::make(7), 2);
  EXPECT_THROW(a + b, DomainMismatch);
}

TEST(Permutation, ComposeInverse) {
  auto p = Permutation::from_cycles(5, {{0, 1, 2}, {3, 4}});
  EXPECT_TRUE((p * p.inverse()).is_identity());
  auto q = Permutation::cycle(5, {0, 1});
  // p acts first
  EXPECT_EQ((p * q)[0], q[p[0]]);
  EXPECT_EQ(p.sign(), -1);
  EXPECT_EQ(p.to_string(), "(0 1 2)(3 4)");
  EXPECT_THROW(Permutation({0, 0, 1}), DomainMismatch);
}

TEST(Matrix, InverseAndDeterminant) {
  auto f = GaloisField::make(8);
  MatrixGF m(f, 3, {1, 2, 3, 0, 5, 6, 7, 0, 1});
  if (m.det() != 0) {
    EXPECT_EQ(m * m.inverse(), MatrixGF::identity(f, 3));
    EXPECT_EQ((m * m).det(), f->mul(m.det(), m.det()));
  }
  MatrixGF s(f, 2, {1, 1, 1, 1});
  EXPECT_EQ(s.det(), 0);
  EXPECT_THROW(s.inverse(), DomainMismatch);
}

TEST(Enumerate, SymmetricGroupOrders) {
  auto s5 = sym(5);
  EXPECT_EQ(s5->order(), 120u);
  EXPECT_TRUE(s5->has_table());
  check_group_laws(*s5, 1);
}

TEST(Enumerate, IdentityGenerator) {
  auto g = enumerate_group({Permutation::identity(3)});
  EXPECT_EQ(g->order(), 1u);
}

TEST(Enumerate, SL2Orders) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto g = sl2(q);
    EXPECT_EQ(g->order(), q * (q * q - 1)) << "q=" << q;
    check_group_laws(*g, q);
  }
}

TEST(Enumerate, Deterministic) {
  auto a = sym(5), b = sym(5);
  for (Index i = 0; i < a->order(); ++i)
    ASSERT_EQ(a->encode(i), b->encode(i));
}

TEST(Enumerate, CapAndDomainErrors) {
  EXPECT_THROW(enumerate_group({Permutation::cycle(6, {0, 1}),
                                Permutation::cycle(6, {0, 1, 2, 3, 4, 5})}, 100),
               CapExceeded);
  EXPECT_THROW(enumerate_group({Permutation::cycle(3, {0, 1}), Permutation::cycle(4, {0, 1})}),
               DomainMismatch);
  EXPECT_THROW(enumerate_group(std::vector<Permutation>{}), DomainMismatch);
  auto f5 = GaloisField::make(5), f7 = GaloisField::make(7);
  EXPECT_THROW(enumerate_group({MatrixGF::identity(f5, 2), MatrixGF::identity(f7, 2)}),
               DomainMismatch);
}

TEST(Enumerate, LargeGroupWithoutTable) {
  auto s7 = sym(7);
  EXPECT_EQ(s7->order(), 5040u);
  EXPECT_FALSE(s7->has_table());
  check_group_laws(*s7, 7);
  // encoding round trip
  for (Index i = 0; i < s7->order(); i += 97)
    EXPECT_EQ(*s7->index_of(s7->encode(i)), i);
}

TEST(ConjugacyClasses, MatchBruteForce) {
  for (int n : {3, 4, 5}) {
    auto g = sym(n);
    auto cc = conjugacy_classes(*g);
    std::multiset<std::size_t> sizes;
    for (auto& c : cc.classes)
      sizes.insert(c.size());
    EXPECT_EQ(sizes, brute_class_sizes(*g));
    EXPECT_EQ(cc.classes[0], std::vector<Index>{0});
  }
  EXPECT_EQ(brute_class_sizes(*sym(3)), (std::multiset<std::size_t>{1, 2, 3}));
  EXPECT_EQ(brute_class_sizes(*sym(4)), (std::multiset<std::size_t>{1, 3, 6, 6, 8}));
}

TEST(ConjugacyClasses, AbelianAllSingletons) {
  auto g = enumerate_group({Permutation::cycle(6, {0, 1, 2, 3, 4, 5})});
  auto cc = conjugacy_classes(*g);
  EXPECT_EQ(cc.classes.size(), 6u);
}

TEST(Quotient, S4ByV4IsNonAbelianOfOrder6) {
  auto s4 = sym(4);
  auto v4 = subgroup_closure(s4, {*s4->index_of({1, 0, 3, 2}), *s4->index_of({2, 3, 0, 1})});
  ASSERT_EQ(v4.order(), 4u);
  auto q = quotient_group(s4, v4);
  EXPECT_EQ(q.group->order(), 6u);
  check_group_laws(*q.group, 3);
  bool abelian = true;
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b)
      abelian = abelian && q.group->mult(a, b) == q.group->mult(b, a);
  EXPECT_FALSE(abelian);
  // projection is a homomorphism and sections are least coset members
  for (Index a = 0; a < 24; ++a) {
    for (Index b = 0; b < 24; ++b)
      ASSERT_EQ(q.projection[s4->mult(a, b)],
                q.group->mult(q.projection[a], q.projection[b]));
    EXPECT_LE(q.section[q.projection[a]], a);
  }
}

TEST(Quotient, ByTrivialIsIsomorphic) {
  auto s4 = sym(4);
  auto q = quotient_group(s4, trivial_subgroup(s4));
  EXPECT_EQ(q.group->order(), 24u);
  for (Index a = 0; a < 24; ++a)
    for (Index b = 0; b < 24; ++b)
      ASSERT_EQ(q.group->mult(a, b), s4->mult(a, b));
}

TEST(Quotient, NonNormalThrows) {
  auto s4 = sym(4);
  EXPECT_THROW(quotient_group(s4, subgroup_closure(s4, {*s4->index_of({1, 0, 2, 3})})),
               NotNormal);
}

TEST(Quotient, SL25ModCenter) {
  auto g = sl2(5);
  Index minus = *g->index_of({4, 0, 0, 4});
  auto z = subgroup_closure(g, {minus});
  auto q = quotient_group(g, z);
  EXPECT_EQ(q.group->order(), 60u);
  check_group_laws(*q.group, 5);
}

TEST(DirectPower, OrderAndLaws) {
  auto s3 = sym(3);
  auto p = direct_power(s3, 2);
  EXPECT_EQ(p->order(), 36u);
  check_group_laws(*p, 2);
  EXPECT_EQ(subgroup_closure(p, p->generators()).order(), 36u);
}
