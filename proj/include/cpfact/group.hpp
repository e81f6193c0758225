// Fully enumerated finite groups with indexed elements.
//
// A GroupTable numbers its elements 0..order-1 with the identity at 0.
// Concrete groups (permutations, matrices) come from enumerate_group, which
// closes the generators breadth-first; derived groups (subgroups viewed as
// groups, quotients, direct powers) reuse a parent's arithmetic.

#ifndef CPFACT_GROUP_HPP_
#define CPFACT_GROUP_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace cpfact {

using Index = std::uint32_t;
constexpr Index kNoIndex = ~Index(0);

constexpr std::size_t kDefaultCap = 20000000;
constexpr std::size_t kTableLimit = 4096;

enum class ElementKind { Permutation, Matrix, Abstract };

inline const char* kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Permutation: return "permutation";
    case ElementKind::Matrix: return "matrix";
    default: return "abstract";
  }
}

namespace impl {

// Fixed-width byte strings with an open-addressing index.
class ElementStore {
public:
  explicit ElementStore(std::size_t width) : width_(width) { rehash(64); }

  std::size_t size() const { return count_; }
  std::size_t width() const { return width_; }
  const std::uint8_t* data(Index i) const { return bytes_.data() + i * width_; }

  Index find(const std::uint8_t* key) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(key) & mask;; s = (s + 1) & mask) {
      Index v = slots_[s];
      if (v == kNoIndex)
        return kNoIndex;
      if (std::memcmp(data(v), key, width_) == 0)
        return v;
    }
  }

  // Returns the index of key and whether it was newly added.
  std::pair<Index, bool> insert(const std::uint8_t* key) {
    Index f = find(key);
    if (f != kNoIndex)
      return {f, false};
    if (2 * (count_ + 1) > slots_.size())
      rehash(slots_.size() * 2);
    Index id = static_cast<Index>(count_++);
    bytes_.insert(bytes_.end(), key, key + width_);
    place(id);
    return {id, true};
  }

  void shrink() { bytes_.shrink_to_fit(); }

private:
  std::size_t hash(const std::uint8_t* key) const {
    return static_cast<std::size_t>(mix64(fnv1a(key, width_)));
  }
  void place(Index id) {
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(data(id)) & mask;
    while (slots_[s] != kNoIndex)
      s = (s + 1) & mask;
    slots_[s] = id;
  }
  void rehash(std::size_t n) {
    slots_.assign(n, kNoIndex);
    for (Index i = 0; i < count_; ++i)
      place(i);
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> bytes_;
  std::vector<Index> slots_;
};

} // namespace impl

// Element arithmetic behind a GroupTable.
class Backend {
public:
  virtual ~Backend() = default;
  virtual Index mult(Index a, Index b) const = 0;
  virtual Index inverse(Index a) const = 0;
  // Canonical integer encoding: image array or row-major field codes.
  virtual std::vector<int> encode(Index a) const = 0;
  virtual std::string describe(Index a) const = 0;
  virtual ElementKind kind() const = 0;
  virtual Index find(const std::vector<int>& enc) const = 0;
  // Permutation degree or matrix dimension; 0 for abstract elements.
  virtual int degree() const { return 0; }
};

namespace impl {

class FlatBackend : public Backend {
public:
  explicit FlatBackend(std::size_t width) : store(width) {}

  virtual void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const = 0;
  virtual void invert(const std::uint8_t* a, std::uint8_t* out) const = 0;

  Index mult(Index a, Index b) const override {
    std::array<std::uint8_t, 256> buf;
    compose(store.data(a), store.data(b), buf.data());
    return must_find(buf.data());
  }
  Index inverse(Index a) const override {
    std::array<std::uint8_t, 256> buf;
    invert(store.data(a), buf.data());
    return must_find(buf.data());
  }
  std::vector<int> encode(Index a) const override {
    const std::uint8_t* d = store.data(a);
    return std::vector<int>(d, d + store.width());
  }
  Index find(const std::vector<int>& enc) const override {
    if (enc.size() != store.width())
      return kNoIndex;
    std::array<std::uint8_t, 256> buf;
    for (std::size_t i = 0; i < enc.size(); ++i) {
      if (enc[i] < 0 || enc[i] > 255)
        return kNoIndex;
      buf[i] = static_cast<std::uint8_t>(enc[i]);
    }
    return store.find(buf.data());
  }

  ElementStore store;

private:
  Index must_find(const std::uint8_t* key) const {
    Index r = store.find(key);
    if (r == kNoIndex)
      throw VerificationFailed("product left the enumerated group");
    return r;
  }
};

class PermBackend final : public FlatBackend {
public:
  explicit PermBackend(int n) : FlatBackend(n), n_(n) {}
  void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const override {
    for (int x = 0; x < n_; ++x)
      out[x] = b[a[x]];
  }
  void invert(const std::uint8_t* a, std::uint8_t* out) const override {
    for (int x = 0; x < n_; ++x)
      out[a[x]] = static_cast<std::uint8_t>(x);
  }
  std::string describe(Index a) const override {
    auto e = encode(a);
    return Permutation(std::vector<int>(e.begin(), e.end())).to_string();
  }
  ElementKind kind() const override { return ElementKind::Permutation; }
  int degree() const override { return n_; }

private:
  int n_;
};

class MatrixBackend final : public FlatBackend {
public:
  MatrixBackend(FieldPtr f, int dim) : FlatBackend(dim * dim), field_(std::move(f)), dim_(dim) {}
  void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const override {
    MatrixGF::multiply(*field_, dim_, a, b, out);
  }
  void invert(const std::uint8_t* a, std::uint8_t* out) const override {
    MatrixGF m(field_, dim_, std::vector<std::uint8_t>(a, a + dim_ * dim_));
    auto inv = m.inverse();
    std::memcpy(out, inv.entries().data(), dim_ * dim_);
  }
  std::string describe(Index a) const override { return matrix(a).to_string(); }
  ElementKind kind() const override { return ElementKind::Matrix; }
  int degree() const override { return dim_; }
  const FieldPtr& field() const { return field_; }
  MatrixGF matrix(Index a) const {
    const std::uint8_t* d = store.data(a);
    return MatrixGF(field_, dim_, std::vector<std::uint8_t>(d, d + dim_ * dim_));
  }

private:
  FieldPtr field_;
  int dim_;
};

} // namespace impl

class GroupTable {
public:
  // cayley, when given, holds x * gens[g] at x * ngens + g and parent/gen_of
  // describe a spanning tree (element j = parent[j] * gens[gen_of[j]]). It
  // lets the multiplication table be filled without backend calls.
  struct Cayley {
    std::vector<Index> right;
    std::vector<Index> parent;
    std::vector<std::uint16_t> gen_of;
  };

  GroupTable(std::shared_ptr<const Backend> backend, std::size_t order,
             std::vector<Index> generators, std::string label,
             const Cayley* cayley = nullptr)
      : be_(std::move(backend)), order_(order), gens_(std::move(generators)),
        label_(std::move(label)) {
    if (order_ == 0 || order_ > 0xffffffffULL)
      throw CapExceeded("group order out of range");
    if (order_ <= kTableLimit)
      build_table(cayley);
    inv_.resize(order_);
    if (!table_.empty()) {
      for (Index a = 0; a < order_; ++a)
        for (Index b = 0; b < order_; ++b)
          if (table_[a * order_ + b] == 0) {
            inv_[a] = b;
            break;
          }
    } else {
      for (Index a = 0; a < order_; ++a)
        inv_[a] = be_->inverse(a);
    }
  }

  std::size_t order() const { return order_; }
  Index identity() const { return 0; }
  bool has_table() const { return !table_.empty(); }

  Index mult(Index a, Index b) const {
    if (!table_.empty())
      return table_[static_cast<std::size_t>(a) * order_ + b];
    return be_->mult(a, b);
  }
  Index inverse(Index a) const { return inv_[a]; }
  // g^-1 a g
  Index conjugate(Index a, Index g) const { return mult(mult(inv_[g], a), g); }
  // a^-1 b^-1 a b
  Index commutator(Index a, Index b) const {
    return mult(mult(inv_[a], inv_[b]), mult(a, b));
  }
  Index power(Index a, long long e) const {
    if (e < 0) {
      a = inv_[a];
      e = -e;
    }
    Index r = 0;
    while (e) {
      if (e & 1)
        r = mult(r, a);
      a = mult(a, a);
      e >>= 1;
    }
    return r;
  }

  const std::vector<Index>& generators() const { return gens_; }
  const std::string& label() const { return label_; }
  ElementKind kind() const { return be_->kind(); }
  const Backend& backend() const { return *be_; }
  std::shared_ptr<const Backend> backend_ptr() const { return be_; }
  int degree() const { return be_->degree(); }

  std::vector<int> encode(Index a) const { return be_->encode(a); }
  std::string describe(Index a) const { return be_->describe(a); }
  std::optional<Index> index_of(const std::vector<int>& enc) const {
    Index r = be_->find(enc);
    if (r == kNoIndex)
      return std::nullopt;
    return r;
  }

  std::uint32_t element_order(Index a) const { return element_orders()[a]; }

  const std::vector<std::uint32_t>& element_orders() const {
    std::call_once(orders_once_, [this] {
      orders_.assign(order_, 0);
      orders_[0] = 1;
      for (Index a = 1; a < order_; ++a) {
        if (orders_[a])
          continue;
        // walk the cyclic subgroup once and fill orders of all its powers
        std::vector<Index> pw{0, a};
        for (Index x = a; (x = mult(x, a)) != 0;)
          pw.push_back(x);
        std::uint32_t n = static_cast<std::uint32_t>(pw.size());
        for (std::uint32_t i = 1; i < n; ++i)
          if (!orders_[pw[i]])
            orders_[pw[i]] = n / std::gcd(n, i);
      }
    });
    return orders_;
  }

private:
  void build_table(const Cayley* cay) {
    table_.assign(order_ * order_, 0);
    std::size_t ng = gens_.size();
    if (cay && cay->right.size() == order_ * ng) {
      for (Index a = 0; a < order_; ++a) {
        std::uint16_t* row = &table_[a * order_];
        row[0] = static_cast<std::uint16_t>(a);
        for (Index j = 1; j < order_; ++j)
          row[j] = static_cast<std::uint16_t>(cay->right[row[cay->parent[j]] * ng + cay->gen_of[j]]);
      }
      return;
    }
    for (Index a = 0; a < order_; ++a)
      for (Index b = 0; b < order_; ++b)
        table_[a * order_ + b] = static_cast<std::uint16_t>(be_->mult(a, b));
  }

  std::shared_ptr<const Backend> be_;
  std::size_t order_;
  std::vector<Index> gens_;
  std::string label_;
  std::vector<std::uint16_t> table_;
  std::vector<Index> inv_;
  mutable std::once_flag orders_once_;
  mutable std::vector<std::uint32_t> orders_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

namespace impl {

template<typename Backend_>
GroupPtr enumerate_flat(std::shared_ptr<Backend_> be,
                        const std::vector<std::vector<std::uint8_t>>& gens,
                        const std::vector<std::uint8_t>& id, std::size_t cap,
                        std::string label) {
  if (cap == 0)
    throw CapExceeded("cap must be positive");
  auto& store = be->store;
  store.insert(id.data());
  std::size_t ng = gens.size();
  GroupTable::Cayley cay;
  cay.parent.push_back(0);
  cay.gen_of.push_back(0);
  std::vector<std::uint8_t> buf(store.width());
  for (Index i = 0; i < store.size(); ++i) {
    for (std::size_t g = 0; g < ng; ++g) {
      be->compose(store.data(i), gens[g].data(), buf.data());
      auto [j, added] = store.insert(buf.data());
      if (added) {
        if (store.size() > cap)
          throw CapExceeded("group order exceeds cap " + std::to_string(cap));
        cay.parent.push_back(i);
        cay.gen_of.push_back(static_cast<std::uint16_t>(g));
      }
      cay.right.push_back(j);
    }
  }
  store.shrink();
  std::vector<Index> gi;
  for (const auto& g : gens)
    gi.push_back(store.find(g.data()));
  std::size_t order = store.size();
  const GroupTable::Cayley* cp = order <= kTableLimit ? &cay : nullptr;
  return std::make_shared<const GroupTable>(std::move(be), order, std::move(gi),
                                            std::move(label), cp);
}

} // namespace impl

inline GroupPtr enumerate_group(const std::vector<Permutation>& gens,
                                std::size_t cap = kDefaultCap, std::string label = "") {
  if (gens.empty())
    throw DomainMismatch("no generators");
  int n = gens[0].degree();
  if (n < 1 || n > 255)
    throw DomainMismatch("permutation degree must be in 1..255");
  std::vector<std::vector<std::uint8_t>> raw;
  for (const auto& g : gens) {
    if (g.degree() != n)
      throw DomainMismatch("generators act on different point sets");
    raw.emplace_back(g.images().begin(), g.images().end());
  }
  std::vector<std::uint8_t> id(n);
  for (int i = 0; i < n; ++i)
    id[i] = static_cast<std::uint8_t>(i);
  if (gens.size() > 65535)
    throw DomainMismatch("too many generators");
  return impl::enumerate_flat(std::make_shared<impl::PermBackend>(n), raw, id, cap,
                              std::move(label));
}

inline GroupPtr enumerate_group(const std::vector<MatrixGF>& gens,
                                std::size_t cap = kDefaultCap, std::string label = "") {
  if (gens.empty())
    throw DomainMismatch("no generators");
  const MatrixGF& g0 = gens[0];
  if (g0.dim() > 15)
    throw DomainMismatch("matrix dimension above 15");
  std::vector<std::vector<std::uint8_t>> raw;
  for (const auto& g : gens) {
    if (!g.compatible(g0))
      throw DomainMismatch("generators over different fields or dimensions");
    if (g.det() == 0)
      throw DomainMismatch("singular matrix generator");
    raw.push_back(g.entries());
  }
  auto id = MatrixGF::identity(g0.field(), g0.dim()).entries();
  return impl::enumerate_flat(std::make_shared<impl::MatrixBackend>(g0.field(), g0.dim()),
                              raw, id, cap, std::move(label));
}

// Group whose elements are parent elements reps[i], with products mapped back
// through proj (parent index -> local index). Serves subgroups (proj is the
// inverse of reps) and quotients (proj sends each element to its coset).
class DerivedBackend final : public Backend {
public:
  DerivedBackend(GroupPtr parent, std::vector<Index> reps, std::vector<Index> proj)
      : parent_(std::move(parent)), reps_(std::move(reps)), proj_(std::move(proj)) {}

  Index mult(Index a, Index b) const override {
    return proj_[parent_->mult(reps_[a], reps_[b])];
  }
  Index inverse(Index a) const override { return proj_[parent_->inverse(reps_[a])]; }
  std::vector<int> encode(Index a) const override { return parent_->encode(reps_[a]); }
  std::string describe(Index a) const override { return parent_->describe(reps_[a]); }
  ElementKind kind() const override { return parent_->kind(); }
  int degree() const override { return parent_->degree(); }
  Index find(const std::vector<int>& enc) const override {
    auto i = parent_->index_of(enc);
    if (!i || proj_[*i] == kNoIndex || reps_[proj_[*i]] != *i)
      return kNoIndex;
    return proj_[*i];
  }

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Index>& reps() const { return reps_; }
  const std::vector<Index>& proj() const { return proj_; }

private:
  GroupPtr parent_;
  std::vector<Index> reps_;
  std::vector<Index> proj_;
};

// T^r with index sum c_i |T|^i (coordinate 0 least significant).
class DirectPowerBackend final : public Backend {
public:
  DirectPowerBackend(GroupPtr t, int r) : t_(std::move(t)), r_(r) {
    width_ = t_->encode(0).size();
  }

  std::vector<Index> coords(Index a) const {
    std::vector<Index> c(r_);
    for (int i = 0; i < r_; ++i) {
      c[i] = static_cast<Index>(a % t_->order());
      a = static_cast<Index>(a / t_->order());
    }
    return c;
  }
  Index from_coords(const std::vector<Index>& c) const {
    std::size_t x = 0;
    for (int i = r_; i-- > 0;)
      x = x * t_->order() + c[i];
    return static_cast<Index>(x);
  }

  Index mult(Index a, Index b) const override {
    auto ca = coords(a), cb = coords(b);
    for (int i = 0; i < r_; ++i)
      ca[i] = t_->mult(ca[i], cb[i]);
    return from_coords(ca);
  }
  Index inverse(Index a) const override {
    auto c = coords(a);
    for (auto& x : c)
      x = t_->inverse(x);
    return from_coords(c);
  }
  std::vector<int> encode(Index a) const override {
    std::vector<int> out;
    for (Index x : coords(a)) {
      auto e = t_->encode(x);
      out.insert(out.end(), e.begin(), e.end());
    }
    return out;
  }
  std::string describe(Index a) const override {
    std::string s = "(";
    auto c = coords(a);
    for (int i = 0; i < r_; ++i)
      s += (i ? ", " : "") + t_->describe(c[i]);
    return s + ")";
  }
  ElementKind kind() const override { return ElementKind::Abstract; }
  Index find(const std::vector<int>& enc) const override {
    if (enc.size() != width_ * r_)
      return kNoIndex;
    std::vector<Index> c(r_);
    for (int i = 0; i < r_; ++i) {
      auto x = t_->index_of(std::vector<int>(enc.begin() + i * width_,
                                             enc.begin() + (i + 1) * width_));
      if (!x)
        return kNoIndex;
      c[i] = *x;
    }
    return from_coords(c);
  }

  const GroupPtr& factor() const { return t_; }
  int power() const { return r_; }

private:
  GroupPtr t_;
  int r_;
  std::size_t width_;
};

inline GroupPtr direct_power(const GroupPtr& t, int r, std::size_t cap = kDefaultCap) {
  if (r < 1)
    throw UnsupportedParameter("direct power exponent must be positive");
  std::size_t order = 1;
  for (int i = 0; i < r; ++i) {
    order *= t->order();
    if (order > cap)
      throw CapExceeded("direct power order exceeds cap");
  }
  auto be = std::make_shared<DirectPowerBackend>(t, r);
  std::vector<Index> gens;
  for (int i = 0; i < r; ++i)
    for (Index g : t->generators()) {
      std::vector<Index> c(r, 0);
      c[i] = g;
      gens.push_back(be->from_coords(c));
    }
  return std::make_shared<const GroupTable>(be, order, std::move(gens),
                                            t->label() + "^" + std::to_string(r));
}

struct ConjugacyClasses {
  // classes ordered by least member; members sorted ascending
  std::vector<std::vector<Index>> classes;
  std::vector<std::uint32_t> class_of;
};

inline ConjugacyClasses conjugacy_classes(const GroupTable& g) {
  ConjugacyClasses cc;
  cc.class_of.assign(g.order(), ~std::uint32_t(0));
  std::vector<Index> gens;
  for (Index x : g.generators())
    if (x != 0)
      gens.push_back(x);
  for (Index x = 0; x < g.order(); ++x) {
    if (cc.class_of[x] != ~std::uint32_t(0))
      continue;
    std::uint32_t id = static_cast<std::uint32_t>(cc.classes.size());
    std::vector<Index> orbit{x};
    cc.class_of[x] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Index s : gens) {
        Index y = g.conjugate(orbit[i], s);
        if (cc.class_of[y] == ~std::uint32_t(0)) {
          cc.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    cc.classes.push_back(std::move(orbit));
  }
  return cc;
}

} // namespace cpfact

#endif
