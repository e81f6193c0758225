// Generators for the standard families used throughout the library.

#ifndef CPFACT_CATALOG_HPP_
#define CPFACT_CATALOG_HPP_

#include <string>
#include <vector>

#include "group.hpp"

namespace cpfact {

inline std::vector<Permutation> symmetric_generators(int n) {
  if (n < 1)
    throw UnsupportedParameter("symmetric group needs n >= 1");
  if (n == 1)
    return {Permutation::identity(1)};
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i)
    cyc[i] = i;
  return {Permutation::cycle(n, {0, 1}), Permutation::cycle(n, cyc)};
}

inline std::vector<Permutation> alternating_generators(int n) {
  if (n < 1)
    throw UnsupportedParameter("alternating group needs n >= 1");
  if (n < 3)
    return {Permutation::identity(n)};
  std::vector<int> cyc;
  for (int i = (n % 2 == 1) ? 0 : 1; i < n; ++i)
    cyc.push_back(i);
  std::vector<Permutation> gens{Permutation::cycle(n, {0, 1, 2})};
  if (n > 3)
    gens.push_back(Permutation::cycle(n, cyc));
  return gens;
}

inline std::vector<Permutation> cyclic_generators(int n) {
  if (n < 1)
    throw UnsupportedParameter("cyclic group needs n >= 1");
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i)
    cyc[i] = i;
  return {n == 1 ? Permutation::identity(1) : Permutation::cycle(n, cyc)};
}

// Symmetries of the n-gon, order 2n.
inline std::vector<Permutation> dihedral_generators(int n) {
  if (n < 3)
    throw UnsupportedParameter("dihedral group needs n >= 3");
  std::vector<int> refl(n);
  for (int i = 0; i < n; ++i)
    refl[i] = (n - i) % n;
  return {cyclic_generators(n)[0], Permutation(refl)};
}

// Dic_n = <a, x | a^2n = 1, x^2 = a^n, a^x = a^-1>, order 4n, in its right
// regular representation; a^k x^e is point k + 2n e.
inline std::vector<Permutation> dicyclic_generators(int n) {
  if (n < 2)
    throw UnsupportedParameter("dicyclic group needs n >= 2");
  int m = 2 * n;
  auto mul = [m, n](int k, int e, int j, int f) {
    // a^k x^e a^j x^f = a^(k + (-1)^e j) x^(e+f), and x^2 = a^n
    int kk = e ? k - j : k + j;
    int ee = e + f;
    if (ee == 2) {
      kk += n;
      ee = 0;
    }
    kk = ((kk % m) + m) % m;
    return kk + m * ee;
  };
  std::vector<int> ra(2 * m), rx(2 * m);
  for (int e = 0; e < 2; ++e)
    for (int k = 0; k < m; ++k) {
      ra[k + m * e] = mul(k, e, 1, 0);
      rx[k + m * e] = mul(k, e, 0, 1);
    }
  return {Permutation(ra), Permutation(rx)};
}

// Elementary transvections I + b E_ij over an additive basis of GF(q).
inline std::vector<MatrixGF> sl_generators(int n, const FieldPtr& f) {
  if (n < 2)
    throw UnsupportedParameter("SL needs n >= 2");
  std::vector<MatrixGF> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        continue;
      unsigned b = 1;
      for (unsigned d = 0; d < f->degree(); ++d, b *= f->characteristic()) {
        auto m = MatrixGF::identity(f, n);
        m.set(i, j, static_cast<MatrixGF::Code>(b));
        gens.push_back(m);
      }
    }
  return gens;
}

inline std::vector<MatrixGF> gl_generators(int n, const FieldPtr& f) {
  auto gens = sl_generators(n, f);
  auto d = MatrixGF::identity(f, n);
  d.set(0, 0, f->primitive_element());
  if (f->size() > 2)
    gens.push_back(d);
  return gens;
}

// PSL(2,q) on the projective line: field codes 0..q-1 and infinity = q.
inline std::vector<Permutation> psl2_generators(const FieldPtr& f) {
  int q = static_cast<int>(f->size());
  std::vector<Permutation> gens;
  unsigned b = 1;
  for (unsigned d = 0; d < f->degree(); ++d, b *= f->characteristic()) {
    std::vector<int> img(q + 1);
    for (int z = 0; z < q; ++z)
      img[z] = f->add(static_cast<MatrixGF::Code>(z), static_cast<MatrixGF::Code>(b));
    img[q] = q;
    gens.emplace_back(img);
  }
  auto z = f->primitive_element();
  auto sq = f->mul(z, z);
  if (sq != 1) {
    std::vector<int> img(q + 1);
    for (int x = 0; x < q; ++x)
      img[x] = f->mul(sq, static_cast<MatrixGF::Code>(x));
    img[q] = q;
    gens.emplace_back(img);
  }
  std::vector<int> inv(q + 1);
  inv[0] = q;
  inv[q] = 0;
  for (int x = 1; x < q; ++x)
    inv[x] = f->neg(f->inv(static_cast<MatrixGF::Code>(x)));
  gens.emplace_back(inv);
  return gens;
}

// SU(3,3): matrices g over GF(9) with det 1 and g J g^sigma^T = J, where J
// is the antidiagonal form and sigma(a) = a^3.
inline bool is_unitary_antidiagonal(const MatrixGF& g) {
  const auto& f = g.field();
  int n = g.dim();
  auto j = MatrixGF(f, n, std::vector<MatrixGF::Code>(n * n, 0));
  for (int i = 0; i < n; ++i)
    j.set(i, n - 1 - i, 1);
  return g * j * g.frobenius().transpose() == j;
}

struct SU33Data {
  FieldPtr field;
  std::vector<MatrixGF> unipotent; // all 27 upper unitriangular members
  std::vector<MatrixGF> torus;     // all diagonal members
  MatrixGF n0;                     // least antidiagonal member
};

inline SU33Data su33_data() {
  SU33Data d;
  d.field = GaloisField::make(9);
  const auto& f = d.field;
  for (unsigned a = 0; a < 9; ++a)
    for (unsigned b = 0; b < 9; ++b)
      for (unsigned c = 0; c < 9; ++c) {
        MatrixGF m(f, 3, {1, static_cast<MatrixGF::Code>(a), static_cast<MatrixGF::Code>(b),
                          0, 1, static_cast<MatrixGF::Code>(c), 0, 0, 1});
        if (is_unitary_antidiagonal(m))
          d.unipotent.push_back(m);
      }
  bool have_n0 = false;
  for (unsigned x = 1; x < 9; ++x)
    for (unsigned y = 1; y < 9; ++y)
      for (unsigned z = 1; z < 9; ++z) {
        auto X = static_cast<MatrixGF::Code>(x), Y = static_cast<MatrixGF::Code>(y),
             Z = static_cast<MatrixGF::Code>(z);
        MatrixGF diag(f, 3, {X, 0, 0, 0, Y, 0, 0, 0, Z});
        if (diag.det() == 1 && is_unitary_antidiagonal(diag))
          d.torus.push_back(diag);
        MatrixGF anti(f, 3, {0, 0, X, 0, Y, 0, Z, 0, 0});
        if (!have_n0 && anti.det() == 1 && is_unitary_antidiagonal(anti)) {
          d.n0 = anti;
          have_n0 = true;
        }
      }
  if (!have_n0)
    throw VerificationFailed("no antidiagonal element in SU(3,3)");
  return d;
}

inline std::vector<MatrixGF> su33_generators() {
  auto d = su33_data();
  std::vector<MatrixGF> gens = d.unipotent;
  gens.push_back(d.n0);
  return gens;
}

// Affine group V x| H on F_p^n. Vectors are points sum v_i p^i; the linear
// part acts on row vectors, v -> v M. Generators: the n basis translations
// followed by the matrices.
struct AffineGenerators {
  int p = 0, n = 0;
  std::vector<Permutation> translations;
  std::vector<Permutation> linear;
};

inline AffineGenerators affine_generators(int p, int n, const std::vector<std::vector<int>>& mats) {
  if (!impl::is_prime(static_cast<unsigned long long>(p)))
    throw UnsupportedParameter("affine group needs a prime p");
  if (n < 1)
    throw UnsupportedParameter("affine group needs dimension >= 1");
  int size = 1;
  for (int i = 0; i < n; ++i) {
    size *= p;
    if (size > 255)
      throw UnsupportedParameter("affine group acts on more than 255 points");
  }
  AffineGenerators out;
  out.p = p;
  out.n = n;
  auto digits = [&](int v) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto number = [&](const std::vector<int>& d) {
    int v = 0;
    for (int i = n; i-- > 0;)
      v = v * p + d[i];
    return v;
  };
  for (int i = 0; i < n; ++i) {
    std::vector<int> img(size);
    for (int v = 0; v < size; ++v) {
      auto d = digits(v);
      d[i] = (d[i] + 1) % p;
      img[v] = number(d);
    }
    out.translations.emplace_back(img);
  }
  for (const auto& m : mats) {
    if (m.size() != static_cast<std::size_t>(n * n))
      throw UnsupportedParameter("affine matrix needs " + std::to_string(n * n) + " entries");
    std::vector<int> img(size);
    for (int v = 0; v < size; ++v) {
      auto d = digits(v);
      std::vector<int> r(n, 0);
      for (int j = 0; j < n; ++j) {
        long long s = 0;
        for (int i = 0; i < n; ++i)
          s += static_cast<long long>(d[i]) * (((m[i * n + j] % p) + p) % p);
        r[j] = static_cast<int>(s % p);
      }
      img[v] = number(r);
    }
    try {
      out.linear.emplace_back(img);
    } catch (const DomainMismatch&) {
      throw UnsupportedParameter("affine matrix is singular");
    }
  }
  return out;
}

// inner^r with the cyclic top group permuting the r blocks.
inline std::vector<Permutation> wreath_generators(const std::vector<Permutation>& inner, int r) {
  if (r < 1)
    throw UnsupportedParameter("wreath product needs r >= 1");
  int d = inner.at(0).degree();
  int n = d * r;
  if (n > 255)
    throw UnsupportedParameter("wreath product acts on more than 255 points");
  std::vector<Permutation> gens;
  for (int b = 0; b < r; ++b)
    for (const auto& g : inner) {
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x)
        img[x] = x;
      for (int x = 0; x < d; ++x)
        img[b * d + x] = b * d + g[x];
      gens.emplace_back(img);
    }
  if (r > 1) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x)
      img[x] = ((x / d + 1) % r) * d + x % d;
    gens.emplace_back(img);
  }
  return gens;
}

// Direct product on the disjoint union of the factors' point sets.
inline std::vector<Permutation> product_generators(const std::vector<std::vector<Permutation>>& factors) {
  int n = 0;
  for (const auto& f : factors)
    n += f.at(0).degree();
  if (n > 255)
    throw UnsupportedParameter("direct product acts on more than 255 points");
  std::vector<Permutation> gens;
  int off = 0;
  for (const auto& f : factors) {
    int d = f[0].degree();
    for (const auto& g : f) {
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x)
        img[x] = x;
      for (int x = 0; x < d; ++x)
        img[off + x] = off + g[x];
      gens.emplace_back(img);
    }
    off += d;
  }
  return gens;
}

} // namespace cpfact

#endif
