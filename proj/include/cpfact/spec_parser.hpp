// Group spec strings, e.g. "sym:5", "sl:2,7", "perm:[(0 1)(2 3);(0 1 2)]".
// The grammar is documented in docs/grammar.md.

#ifndef CPFACT_SPEC_PARSER_HPP_
#define CPFACT_SPEC_PARSER_HPP_

#include <cctype>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "group.hpp"

namespace cpfact {

constexpr int kGrammarVersion = 1;

struct GroupSpec {
  std::string text;   // whitespace removed
  std::string family; // sym, alt, sl, ...
  std::vector<int> params;
  GroupPtr group;
  // affine: the first affine_translations generators are the translations
  int affine_p = 0, affine_n = 0;
  std::size_t affine_translations = 0;
};

inline std::uint64_t spec_hash(const std::string& canonical) {
  std::string key = "cpfact-grammar-" + std::to_string(kGrammarVersion) + "|" + canonical;
  return impl::mix64(impl::fnv1a(key.data(), key.size()));
}

namespace impl {

struct SpecGens {
  bool is_perm = true;
  std::vector<Permutation> perms;
  std::vector<MatrixGF> mats;
  std::string family;
  std::vector<int> params;
  int affine_p = 0, affine_n = 0;
  std::size_t affine_translations = 0;
};

class SpecParser {
public:
  explicit SpecParser(std::string s) : s_(std::move(s)) {}

  SpecGens parse() {
    SpecGens g = spec();
    if (pos_ != s_.size())
      fail("unexpected trailing input");
    return g;
  }

  // A bare cycle list "[(0 1);(0 1 2)]".
  std::vector<Permutation> permutations() {
    auto out = perm_list();
    if (pos_ != s_.size())
      fail("unexpected trailing input");
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string word() {
    std::size_t start = pos_;
    while (std::isalpha(static_cast<unsigned char>(peek())))
      ++pos_;
    if (start == pos_)
      fail("expected a group family name");
    return s_.substr(start, pos_ - start);
  }

  int integer() {
    std::size_t start = pos_;
    bool neg = accept('-');
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000000LL) {
        pos_ = start;
        fail("integer too large");
      }
    }
    return static_cast<int>(neg ? -v : v);
  }

  int bounded(int lo, int hi, const char* what) {
    std::size_t start = pos_;
    int v = integer();
    if (v < lo || v > hi) {
      pos_ = start;
      fail(std::string(what) + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
    }
    return v;
  }

  SpecGens spec() {
    std::size_t start = pos_;
    std::string fam = word();
    expect(':');
    SpecGens g;
    g.family = fam;
    try {
      if (fam == "sym" || fam == "alt" || fam == "cyclic" || fam == "dihedral" ||
          fam == "dicyclic") {
        int n = bounded(1, 255, "degree");
        g.params = {n};
        if (fam == "sym")
          g.perms = symmetric_generators(n);
        else if (fam == "alt")
          g.perms = alternating_generators(n);
        else if (fam == "cyclic")
          g.perms = cyclic_generators(n);
        else if (fam == "dihedral")
          g.perms = dihedral_generators(n);
        else
          g.perms = dicyclic_generators(n);
      } else if (fam == "sl" || fam == "gl") {
        int n = bounded(2, 4, "dimension");
        expect(',');
        int q = bounded(2, 256, "field order");
        g.params = {n, q};
        g.is_perm = false;
        auto f = GaloisField::make(q);
        g.mats = fam == "sl" ? sl_generators(n, f) : gl_generators(n, f);
      } else if (fam == "psl") {
        std::size_t at = pos_;
        int n = integer();
        if (n != 2) {
          pos_ = at;
          fail("only psl:2,q is supported");
        }
        expect(',');
        int q = bounded(2, 254, "field order");
        g.params = {2, q};
        g.perms = psl2_generators(GaloisField::make(q));
      } else if (fam == "su") {
        std::size_t at = pos_;
        int n = integer();
        expect(',');
        int q = integer();
        if (n != 3 || q != 3) {
          pos_ = at;
          fail("only su:3,3 is supported");
        }
        g.params = {3, 3};
        g.is_perm = false;
        g.mats = su33_generators();
      } else if (fam == "perm") {
        g.perms = perm_list();
      } else if (fam == "affine") {
        int p = bounded(2, 255, "prime");
        expect(',');
        int n = bounded(1, 8, "dimension");
        expect(',');
        auto mats = matrix_list();
        g.params = {p, n};
        auto a = affine_generators(p, n, mats);
        g.perms = a.translations;
        g.perms.insert(g.perms.end(), a.linear.begin(), a.linear.end());
        g.affine_p = p;
        g.affine_n = n;
        g.affine_translations = a.translations.size();
      } else if (fam == "wreath") {
        std::string inner = word();
        if (inner != "alt" && inner != "sym")
          fail("wreath base must be altN or symN");
        int d = bounded(1, 255, "degree");
        expect(',');
        int r = bounded(1, 255, "number of copies");
        g.params = {d, r};
        g.perms = wreath_generators(inner == "alt" ? alternating_generators(d)
                                                   : symmetric_generators(d), r);
        g.family = "wreath-" + inner;
      } else if (fam == "product") {
        expect('[');
        std::vector<std::vector<Permutation>> factors;
        do {
          std::size_t at = pos_;
          SpecGens f = spec();
          if (!f.is_perm) {
            pos_ = at;
            fail("product factors must be permutation groups");
          }
          factors.push_back(f.perms);
        } while (accept(';'));
        expect(']');
        g.perms = product_generators(factors);
      } else {
        pos_ = start;
        fail("unknown group family '" + fam + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), start);
    }
    return g;
  }

  std::vector<Permutation> perm_list() {
    expect('[');
    std::vector<std::vector<std::vector<int>>> gens;
    std::vector<std::size_t> where;
    int degree = 1;
    do {
      where.push_back(pos_);
      std::vector<std::vector<int>> cycles;
      if (peek() != '(')
        fail("expected '(' to start a cycle");
      while (accept('(')) {
        std::vector<int> c;
        while (peek() != ')') {
          c.push_back(bounded(0, 254, "point"));
          degree = std::max(degree, c.back() + 1);
          if (!accept(' '))
            accept(',');
        }
        expect(')');
        if (!c.empty())
          cycles.push_back(std::move(c));
      }
      gens.push_back(std::move(cycles));
    } while (accept(';'));
    expect(']');
    std::vector<Permutation> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      try {
        out.push_back(Permutation::from_cycles(degree, gens[i]));
      } catch (const DomainMismatch& e) {
        pos_ = where[i];
        fail(e.what());
      }
    }
    return out;
  }

  std::vector<std::vector<int>> matrix_list() {
    expect('[');
    std::vector<std::vector<int>> out;
    do {
      expect('[');
      std::vector<int> m{integer()};
      while (accept(','))
        m.push_back(integer());
      expect(']');
      out.push_back(std::move(m));
    } while (accept(';'));
    expect(']');
    return out;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

} // namespace impl

// Drops whitespace, except that a run between two alphanumerics becomes one
// space (it separates cycle points).
inline std::string canonical_spec(const std::string& text) {
  std::string out;
  bool gap = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = true;
      continue;
    }
    if (gap && !out.empty() && std::isalnum(static_cast<unsigned char>(out.back())) &&
        std::isalnum(static_cast<unsigned char>(c)))
      out += ' ';
    gap = false;
    out += c;
  }
  return out;
}

// Parses and enumerates. Positions in parse errors refer to canonical_spec(text).
inline GroupSpec parse_group(const std::string& text, std::size_t cap = kDefaultCap) {
  GroupSpec out;
  out.text = canonical_spec(text);
  impl::SpecParser p(out.text);
  auto g = p.parse();
  out.family = g.family;
  out.params = g.params;
  out.affine_p = g.affine_p;
  out.affine_n = g.affine_n;
  out.affine_translations = g.affine_translations;
  out.group = g.is_perm ? enumerate_group(g.perms, cap, out.text)
                        : enumerate_group(g.mats, cap, out.text);
  return out;
}

// Generators in cycle notation, padded to at least `degree` points.
inline std::vector<Permutation> parse_permutation_list(const std::string& text, int degree = 0) {
  impl::SpecParser p(canonical_spec(text));
  std::vector<Permutation> out;
  for (const auto& x : p.permutations()) {
    auto img = x.images();
    for (int i = static_cast<int>(img.size()); i < degree; ++i)
      img.push_back(i);
    out.emplace_back(std::move(img));
  }
  return out;
}

inline GroupPtr make_group(const std::string& text, std::size_t cap = kDefaultCap) {
  return parse_group(text, cap).group;
}

} // namespace cpfact

#endif
