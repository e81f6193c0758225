// Dense bit-vector over element indices, plus a 128-bit content hash.
//
// Bits are stored little-endian within 64-bit words: index i lives in word
// i / 64 at bit i % 64. All traversals run in increasing index order.

#ifndef CPFACT_BITSET_HPP_
#define CPFACT_BITSET_HPP_

#include <bit>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace cpfact {

struct Hash128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const Hash128&, const Hash128&) = default;
  std::string hex() const {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx",
                  static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
  }
};

struct Hash128Hasher {
  std::size_t operator()(const Hash128& h) const noexcept {
    return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ULL));
  }
};

namespace impl {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  auto p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace impl

class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  // Sets bit i and reports whether it was previously clear.
  bool insert(std::size_t i) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (w & m)
      return false;
    w |= m;
    return true;
  }

  void set_all() {
    for (auto& w : words_)
      w = ~std::uint64_t(0);
    trim();
  }
  void clear() {
    for (auto& w : words_)
      w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w)
        return false;
    return true;
  }
  bool full() const { return count() == n_; }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& subtract(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i])
        return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i])
        return true;
    return false;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  // Returns the least set index, or size() if empty.
  std::size_t first() const { return next(0); }

  // Returns the least set index >= from, or size() if none.
  std::size_t next(std::size_t from) const {
    if (from >= n_)
      return n_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t(0) << (from & 63));
    while (true) {
      if (w)
        return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size())
        return n_;
      w = words_[wi];
    }
  }

  template<typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        std::size_t bit = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<std::uint32_t>((wi << 6) + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

  // Order of the sorted index lists: the set holding the least index where
  // the two differ compares smaller. Equal-size sets only.
  static bool lex_less(const Bitset& a, const Bitset& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t d = a.words_[i] ^ b.words_[i];
      if (d) {
        std::uint64_t low = d & (~d + 1);
        return (a.words_[i] & low) != 0;
      }
    }
    return false;
  }

  Hash128 hash() const {
    std::uint64_t h1 = 0x243f6a8885a308d3ULL ^ n_;
    std::uint64_t h2 = 0x13198a2e03707344ULL + n_;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      h1 = impl::mix64(h1 ^ words_[i]) + i;
      h2 = impl::mix64(h2 + (words_[i] * 0x9e3779b97f4a7c15ULL)) ^ (i << 1);
    }
    return {impl::mix64(h1), impl::mix64(h2 ^ h1)};
  }

private:
  void trim() {
    if (n_ & 63)
      words_.back() &= (std::uint64_t(1) << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHasher {
  std::size_t operator()(const Bitset& b) const noexcept {
    return Hash128Hasher{}(b.hash());
  }
};

} // namespace cpfact

#endif
