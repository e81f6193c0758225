// Finite fields GF(p^k) with table-driven arithmetic.
//
// An element is encoded as the integer sum c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// of its coefficients in the polynomial basis 1, x, ..., x^{k-1}, reduced
// modulo a fixed monic irreducible polynomial of degree k.

#ifndef CPFACT_FIELD_HPP_
#define CPFACT_FIELD_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cpfact {

namespace impl {

inline bool is_prime(unsigned long long n) {
  if (n < 2)
    return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.
using Poly = std::vector<unsigned>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  poly_trim(a);
  // m is monic
  while (a.size() >= m.size()) {
    unsigned lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
    poly_trim(a);
  }
  return a;
}

inline bool poly_irreducible(const Poly& m, unsigned p) {
  std::size_t k = m.size() - 1;
  // trial division by every monic polynomial of degree 1..k/2
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i)
      count *= p;
    for (std::size_t c = 0; c < count; ++c) {
      Poly div(d + 1, 0);
      std::size_t x = c;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      div[d] = 1;
      if (poly_mod(m, div, p).empty())
        return false;
    }
  }
  return true;
}

} // namespace impl

class GaloisField {
public:
  using Code = std::uint8_t;

  // modulus: monic irreducible polynomial of degree k, lowest coefficient
  // first (k + 1 entries). Ignored when k == 1.
  GaloisField(unsigned p, unsigned k, impl::Poly modulus = {}) : p_(p), k_(k) {
    if (!impl::is_prime(p) || k == 0)
      throw UnsupportedParameter("GF(p^k) needs prime p and k >= 1");
    q_ = 1;
    for (unsigned i = 0; i < k; ++i)
      q_ *= p;
    if (q_ > 256)
      throw UnsupportedParameter("field order above 256 is not supported");
    if (k == 1)
      modulus = {0, 1};
    if (modulus.size() != k + 1 || modulus.back() != 1)
      throw UnsupportedParameter("modulus must be monic of degree k");
    for (unsigned c : modulus)
      if (c >= p)
        throw UnsupportedParameter("modulus coefficient out of range");
    if (!impl::poly_irreducible(modulus, p))
      throw UnsupportedParameter("modulus polynomial is reducible");
    modulus_ = std::move(modulus);
    build_tables();
  }

  // Fields with a shipped default modulus: primes below 256, GF(4) with
  // x^2+x+1, GF(8) with x^3+x+1, GF(9) with x^2+1.
  static std::shared_ptr<const GaloisField> make(unsigned q) {
    if (impl::is_prime(q))
      return std::make_shared<const GaloisField>(q, 1);
    switch (q) {
      case 4: return std::make_shared<const GaloisField>(2, 2, impl::Poly{1, 1, 1});
      case 8: return std::make_shared<const GaloisField>(2, 3, impl::Poly{1, 1, 0, 1});
      case 9: return std::make_shared<const GaloisField>(3, 2, impl::Poly{1, 0, 1});
      default: break;
    }
    throw UnsupportedParameter("no default modulus for GF(" + std::to_string(q) + ")");
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned size() const { return q_; }
  const impl::Poly& modulus() const { return modulus_; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code add(Code a, Code b) const { return add_[a * q_ + b]; }
  Code sub(Code a, Code b) const { return add_[a * q_ + neg_[b]]; }
  Code neg(Code a) const { return neg_[a]; }
  Code mul(Code a, Code b) const { return mul_[a * q_ + b]; }
  Code inv(Code a) const {
    if (a == 0)
      throw DomainMismatch("inverse of zero field element");
    return inv_[a];
  }
  Code pow(Code a, unsigned long long e) const {
    Code r = 1;
    while (e) {
      if (e & 1)
        r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // x -> x^p
  Code frobenius(Code a) const { return pow(a, p_); }

  // Least code whose powers exhaust the nonzero elements.
  Code primitive_element() const { return primitive_; }

  // Embeds the integer n (mod p) into the prime subfield.
  Code from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0)
      r += p_;
    return static_cast<Code>(r);
  }

  std::vector<unsigned> coefficients(Code a) const {
    std::vector<unsigned> c(k_);
    unsigned x = a;
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = x % p_;
      x /= p_;
    }
    return c;
  }

  std::string to_string(Code a) const {
    if (k_ == 1)
      return std::to_string(a);
    std::string s;
    auto c = coefficients(a);
    for (unsigned i = k_; i-- > 0;) {
      if (c[i] == 0)
        continue;
      if (!s.empty())
        s += "+";
      if (i == 0 || c[i] != 1)
        s += std::to_string(c[i]);
      if (i >= 1)
        s += (i == 1) ? "z" : "z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }

private:
  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      auto ca = coefficients(static_cast<Code>(a));
      for (unsigned b = 0; b < q_; ++b) {
        auto cb = coefficients(static_cast<Code>(b));
        impl::Poly sum(k_), prod(2 * k_, 0);
        for (unsigned i = 0; i < k_; ++i)
          sum[i] = (ca[i] + cb[i]) % p_;
        for (unsigned i = 0; i < k_; ++i)
          for (unsigned j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        add_[a * q_ + b] = encode(sum);
        mul_[a * q_ + b] = encode(impl::poly_mod(prod, modulus_, p_));
      }
    }
    for (unsigned a = 0; a < q_; ++a) {
      for (unsigned b = 0; b < q_; ++b) {
        if (add_[a * q_ + b] == 0)
          neg_[a] = static_cast<Code>(b);
        if (mul_[a * q_ + b] == 1)
          inv_[a] = static_cast<Code>(b);
      }
    }
    primitive_ = 0;
    for (unsigned g = 1; g < q_ && primitive_ == 0; ++g) {
      unsigned ord = 1;
      Code x = static_cast<Code>(g);
      while (x != 1) {
        x = mul(x, static_cast<Code>(g));
        ++ord;
      }
      if (ord == q_ - 1)
        primitive_ = static_cast<Code>(g);
    }
    if (q_ == 2)
      primitive_ = 1;
  }

  Code encode(const impl::Poly& c) const {
    unsigned x = 0;
    for (unsigned i = k_; i-- > 0;)
      x = x * p_ + (i < c.size() ? c[i] : 0);
    return static_cast<Code>(x);
  }

  unsigned p_, k_, q_ = 1;
  impl::Poly modulus_;
  std::vector<Code> add_, mul_, neg_, inv_;
  Code primitive_ = 0;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

// A field element bound to its field; arithmetic between elements of
// different fields throws DomainMismatch.
class FieldElement {
public:
  FieldElement(FieldPtr f, GaloisField::Code c) : field_(std::move(f)), code_(c) {
    if (c >= field_->size())
      throw DomainMismatch("field element code out of range");
  }

  const FieldPtr& field() const { return field_; }
  GaloisField::Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_->mul(a.code_, b.code_)};
  }
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(unsigned long long e) const { return {field_, field_->pow(code_, e)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.code_ == b.code_ && *a.field_ == *b.field_;
  }

  std::string to_string() const { return field_->to_string(code_); }

private:
  void check(const FieldElement& o) const {
    if (field_ != o.field_ && !(*field_ == *o.field_))
      throw DomainMismatch("field elements from different fields");
  }

  FieldPtr field_;
  GaloisField::Code code_;
};

} // namespace cpfact

#endif
