// (A,A)-double cosets of a subgroup and the boolean support of their
// products, with an optional on-disk cache. File layout: docs/formats.md.

#ifndef CPFACT_DOUBLE_COSET_HPP_
#define CPFACT_DOUBLE_COSET_HPP_

#include <bit>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "spec_parser.hpp"
#include "subgroup.hpp"

namespace cpfact {

constexpr std::size_t kMaxDoubleCosets = 4096;

struct DoubleCosetTable {
  SubgroupSet base;
  std::vector<Index> reps;              // reps[0] == identity
  std::vector<std::uint32_t> coset_of;  // element -> coset id
  std::vector<std::uint64_t> sizes;
  std::size_t words = 0;                // 64-bit words per support mask
  std::vector<std::uint64_t> support;   // (i, j) -> mask of k with D_k in D_i D_j

  std::size_t count() const { return reps.size(); }

  const std::uint64_t* support_words(std::size_t i, std::size_t j) const {
    return support.data() + (i * count() + j) * words;
  }

  bool in_support(std::size_t i, std::size_t j, std::size_t k) const {
    return (support_words(i, j)[k >> 6] >> (k & 63)) & 1U;
  }

  Bitset support_of(std::size_t i, std::size_t j) const {
    Bitset b(count());
    std::memcpy(b.words().data(), support_words(i, j), words * sizeof(std::uint64_t));
    return b;
  }

  ElementSet coset(std::size_t i) const {
    ElementSet s(base.parent());
    for (Index x = 0; x < coset_of.size(); ++x)
      if (coset_of[x] == i)
        s.bits().set(x);
    return s;
  }
};

namespace impl {

constexpr std::uint32_t kNoCoset = ~std::uint32_t(0);

inline void fill_support(DoubleCosetTable& t) {
  const GroupTable& G = t.base.group();
  std::size_t r = t.count();
  t.words = (r + 63) / 64;
  t.support.assign(r * r * t.words, 0);
  auto am = t.base.members();
  // D_i D_j = A g_i A g_j A is the union of the double cosets of g_i a g_j.
  std::vector<Index> row(am.size());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t s = 0; s < am.size(); ++s)
      row[s] = G.mult(t.reps[i], am[s]);
    for (std::size_t j = 0; j < r; ++j) {
      std::uint64_t* m = t.support.data() + (i * r + j) * t.words;
      for (Index x : row) {
        std::uint32_t k = t.coset_of[G.mult(x, t.reps[j])];
        m[k >> 6] |= std::uint64_t(1) << (k & 63);
      }
    }
  }
}

} // namespace impl

inline DoubleCosetTable double_coset_table(const SubgroupSet& a) {
  const GroupTable& G = a.group();
  DoubleCosetTable t;
  t.base = a;
  t.coset_of.assign(G.order(), impl::kNoCoset);
  const auto& gens = a.generators();
  std::vector<Index> stack;
  for (Index x = 0; x < G.order(); ++x) {
    if (t.coset_of[x] != impl::kNoCoset)
      continue;
    auto id = static_cast<std::uint32_t>(t.reps.size());
    if (id >= kMaxDoubleCosets)
      throw BoundExceeded("more than " + std::to_string(kMaxDoubleCosets) + " double cosets");
    t.reps.push_back(x);
    std::uint64_t size = 0;
    t.coset_of[x] = id;
    stack.assign(1, x);
    while (!stack.empty()) {
      Index y = stack.back();
      stack.pop_back();
      ++size;
      for (Index s : gens)
        for (Index z : {G.mult(s, y), G.mult(y, s)})
          if (t.coset_of[z] == impl::kNoCoset) {
            t.coset_of[z] = id;
            stack.push_back(z);
          }
    }
    t.sizes.push_back(size);
  }
  impl::fill_support(t);
  return t;
}

// Cache files: dct-<spec hash>-<subgroup hash>.bin under the cache directory.
class DoubleCosetCache {
public:
  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr char kMagic[8] = {'C', 'P', 'D', 'C', 'T', 0, 0, 0};

  DoubleCosetCache() = default;
  explicit DoubleCosetCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  // CPFACT_CACHE_DIR, else $HOME/.cache/cpfact; disabled when no_cache is set.
  static DoubleCosetCache from_environment(bool no_cache = false) {
    if (no_cache)
      return {};
    if (const char* d = std::getenv("CPFACT_CACHE_DIR"); d && *d)
      return DoubleCosetCache(d);
    if (const char* h = std::getenv("HOME"); h && *h)
      return DoubleCosetCache(std::filesystem::path(h) / ".cache" / "cpfact");
    return {};
  }

  bool enabled() const { return !dir_.empty() && std::endian::native == std::endian::little; }
  const std::filesystem::path& directory() const { return dir_; }

  std::filesystem::path path_for(const std::string& spec, const SubgroupSet& a) const {
    char name[80];
    auto h = a.hash();
    std::snprintf(name, sizeof name, "dct-%016llx-%s.bin",
                  static_cast<unsigned long long>(spec_hash(canonical_spec(spec))),
                  h.hex().c_str());
    return dir_ / name;
  }

  // Loads a valid cached table or builds and stores one. `hit` reports which.
  DoubleCosetTable get(const std::string& spec, const SubgroupSet& a, bool* hit = nullptr) {
    if (hit)
      *hit = false;
    if (!enabled())
      return double_coset_table(a);
    auto p = path_for(spec, a);
    if (auto t = load(p, spec, a)) {
      if (hit)
        *hit = true;
      return std::move(*t);
    }
    auto t = double_coset_table(a);
    store(p, spec, t);
    return t;
  }

  std::optional<DoubleCosetTable> load(const std::filesystem::path& p, const std::string& spec,
                                       const SubgroupSet& a) const {
    std::ifstream in(p, std::ios::binary);
    if (!in)
      return std::nullopt;
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader rd{buf.data(), buf.size(), 0};
    char magic[8];
    if (!rd.raw(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
      return std::nullopt;
    std::uint32_t fmt = 0, grammar = 0, r = 0, w = 0;
    std::uint64_t order = 0, sh = 0, lo = 0, hi = 0;
    if (!rd.get(fmt) || !rd.get(grammar) || !rd.get(order) || !rd.get(sh) || !rd.get(lo) ||
        !rd.get(hi) || !rd.get(r) || !rd.get(w))
      return std::nullopt;
    auto h = a.hash();
    const GroupTable& G = a.group();
    if (fmt != kFormatVersion || grammar != static_cast<std::uint32_t>(kGrammarVersion) ||
        order != G.order() || sh != spec_hash(canonical_spec(spec)) || lo != h.lo || hi != h.hi ||
        r == 0 || r > kMaxDoubleCosets || w != (r + 63) / 64)
      return std::nullopt;
    std::size_t body_start = rd.pos;
    DoubleCosetTable t;
    t.base = a;
    t.words = w;
    t.reps.resize(r);
    t.sizes.resize(r);
    t.coset_of.resize(order);
    t.support.resize(static_cast<std::size_t>(r) * r * w);
    if (!rd.array(t.reps) || !rd.array(t.sizes) || !rd.array(t.coset_of) || !rd.array(t.support))
      return std::nullopt;
    std::uint64_t sum = impl::fnv1a(buf.data() + body_start, rd.pos - body_start), stored = 0;
    if (!rd.get(stored) || stored != sum || rd.pos != buf.size())
      return std::nullopt;
    if (!consistent(t))
      return std::nullopt;
    return t;
  }

  void store(const std::filesystem::path& p, const std::string& spec,
             const DoubleCosetTable& t) const {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    std::string body;
    auto put = [&body](const void* d, std::size_t n) {
      body.append(static_cast<const char*>(d), n);
    };
    auto h = t.base.hash();
    std::uint32_t fmt = kFormatVersion, grammar = kGrammarVersion;
    auto r = static_cast<std::uint32_t>(t.count()), w = static_cast<std::uint32_t>(t.words);
    std::uint64_t order = t.coset_of.size(), sh = spec_hash(canonical_spec(spec));
    std::string head(kMagic, 8);
    body = head;
    put(&fmt, 4);
    put(&grammar, 4);
    put(&order, 8);
    put(&sh, 8);
    put(&h.lo, 8);
    put(&h.hi, 8);
    put(&r, 4);
    put(&w, 4);
    std::size_t body_start = body.size();
    put(t.reps.data(), t.reps.size() * sizeof(Index));
    put(t.sizes.data(), t.sizes.size() * 8);
    put(t.coset_of.data(), t.coset_of.size() * 4);
    put(t.support.data(), t.support.size() * 8);
    std::uint64_t sum = impl::fnv1a(body.data() + body_start, body.size() - body_start);
    put(&sum, 8);
    // unique temporary name so concurrent writers never share a file
    auto tmp = p;
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, ".tmp%08x", std::random_device{}());
    tmp += suffix;
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        return;
      out.write(body.data(), static_cast<std::streamsize>(body.size()));
      if (!out)
        return;
    }
    std::filesystem::rename(tmp, p, ec);
  }

private:
  struct Reader {
    const char* data;
    std::size_t size, pos;
    bool raw(void* out, std::size_t n) {
      if (size - pos < n)
        return false;
      std::memcpy(out, data + pos, n);
      pos += n;
      return true;
    }
    template <class T> bool get(T& v) { return raw(&v, sizeof v); }
    template <class T> bool array(std::vector<T>& v) { return raw(v.data(), v.size() * sizeof(T)); }
  };

  // Cheap structural checks on top of the checksum.
  static bool consistent(const DoubleCosetTable& t) {
    std::size_t r = t.count();
    if (t.reps[0] != 0)
      return false;
    std::vector<std::uint64_t> seen(r, 0);
    for (Index x = 0; x < t.coset_of.size(); ++x) {
      if (t.coset_of[x] >= r)
        return false;
      ++seen[t.coset_of[x]];
    }
    for (std::size_t i = 0; i < r; ++i)
      if (seen[i] != t.sizes[i] || t.reps[i] >= t.coset_of.size() || t.coset_of[t.reps[i]] != i)
        return false;
    if (t.sizes[0] != t.base.order())
      return false;
    bool ok = true;
    t.base.bits().for_each([&](Index x) { ok = ok && t.coset_of[x] == 0; });
    return ok;
  }

  std::filesystem::path dir_;
};

} // namespace cpfact

#endif
