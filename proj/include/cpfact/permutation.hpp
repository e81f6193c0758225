// Permutations of {0..n-1} stored as image arrays.
//
// Products compose left to right: (p * q)[x] = q[p[x]], so p acts first.
// This matches right actions x^(pq) = (x^p)^q.

#ifndef CPFACT_PERMUTATION_HPP_
#define CPFACT_PERMUTATION_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cpfact {

class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int y : img_) {
      if (y < 0 || static_cast<std::size_t>(y) >= img_.size() || seen[y])
        throw DomainMismatch("image array is not a bijection");
      seen[y] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i)
      img[i] = i;
    return Permutation(std::move(img));
  }

  // Each cycle (a b c) sends a -> b -> c -> a. Points must be distinct.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i)
      img[i] = i;
    std::vector<char> used(n, 0);
    for (const auto& c : cycles) {
      for (int x : c) {
        if (x < 0 || x >= n)
          throw DomainMismatch("cycle point " + std::to_string(x) + " outside 0.." +
                               std::to_string(n - 1));
        if (used[x])
          throw DomainMismatch("point " + std::to_string(x) + " repeated in cycles");
        used[x] = 1;
      }
      for (std::size_t i = 0; i < c.size(); ++i)
        img[c[i]] = c[(i + 1) % c.size()];
    }
    return Permutation(std::move(img));
  }

  // A cycle on the given points, in order.
  static Permutation cycle(int n, const std::vector<int>& pts) {
    return from_cycles(n, {pts});
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree())
      throw DomainMismatch("permutations of different degree");
    std::vector<int> r(p.img_.size());
    for (std::size_t x = 0; x < r.size(); ++x)
      r[x] = q.img_[p.img_[x]];
    Permutation out;
    out.img_ = std::move(r);
    return out;
  }

  Permutation inverse() const {
    Permutation out;
    out.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x)
      out.img_[img_[x]] = static_cast<int>(x);
    return out;
  }

  bool is_identity() const {
    for (std::size_t x = 0; x < img_.size(); ++x)
      if (img_[x] != static_cast<int>(x))
        return false;
    return true;
  }

  // +1 for even, -1 for odd.
  int sign() const {
    std::vector<char> seen(img_.size(), 0);
    int s = 1;
    for (std::size_t x = 0; x < img_.size(); ++x) {
      if (seen[x])
        continue;
      std::size_t len = 0;
      for (std::size_t y = x; !seen[y]; y = img_[y]) {
        seen[y] = 1;
        ++len;
      }
      if (len % 2 == 0)
        s = -s;
    }
    return s;
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t x = 0; x < img_.size(); ++x) {
      if (seen[x] || img_[x] == static_cast<int>(x))
        continue;
      std::vector<int> c;
      for (std::size_t y = x; !seen[y]; y = img_[y]) {
        seen[y] = 1;
        c.push_back(static_cast<int>(y));
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& c : cycles()) {
      s += "(";
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
          s += " ";
        s += std::to_string(c[i]);
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

private:
  std::vector<int> img_;
};

} // namespace cpfact

#endif
