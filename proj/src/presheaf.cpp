#include "eqcat/presheaf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "eqcat/error.hpp"

namespace eqcat {

namespace {

constexpr std::size_t kNoOp = static_cast<std::size_t>(-1);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// ---------------------------------------------------------------- Shape

std::shared_ptr<const Shape> Shape::simplicial(int trunc) {
  if (trunc < 0) throw InvalidInput("truncation level must be non-negative");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Shape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[trunc];
  if (!slot) {
    auto s = std::shared_ptr<Shape>(new Shape(ShapeKind::Simplicial, trunc));
    s->build_simplicial();
    slot = s;
  }
  return slot;
}

std::shared_ptr<const Shape> Shape::bisimplicial(int trunc) {
  if (trunc < 0) throw InvalidInput("truncation level must be non-negative");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Shape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[trunc];
  if (!slot) {
    auto s = std::shared_ptr<Shape>(new Shape(ShapeKind::Bisimplicial, trunc));
    s->build_bisimplicial();
    slot = s;
  }
  return slot;
}

std::size_t Shape::lookup(const std::vector<std::size_t>& table, std::size_t key) const {
  if (key >= table.size() || table[key] == kNoOp) throw InvalidInput("operator out of range for shape");
  return table[key];
}

std::size_t Shape::face_op(int n, int i) const {
  if (kind_ != ShapeKind::Simplicial || n < 1 || n > trunc_ || i < 0 || i > n) {
    throw InvalidInput("face operator out of range");
  }
  return lookup(face_, static_cast<std::size_t>(n) * (trunc_ + 2) + i);
}

std::size_t Shape::degen_op(int n, int i) const {
  if (kind_ != ShapeKind::Simplicial || n < 0 || n >= trunc_ || i < 0 || i > n) {
    throw InvalidInput("degeneracy operator out of range");
  }
  return lookup(degen_, static_cast<std::size_t>(n) * (trunc_ + 2) + i);
}

namespace {
std::size_t bikey(int trunc, int m, int n, int i) {
  return (static_cast<std::size_t>(m) * (trunc + 1) + n) * (trunc + 2) + i;
}
}  // namespace

std::size_t Shape::hface_op(int m, int n, int i) const {
  if (kind_ != ShapeKind::Bisimplicial || m < 1 || m > trunc_ || n < 0 || n > trunc_ || i < 0 || i > m) {
    throw InvalidInput("horizontal face out of range");
  }
  return lookup(hface_, bikey(trunc_, m, n, i));
}

std::size_t Shape::vface_op(int m, int n, int i) const {
  if (kind_ != ShapeKind::Bisimplicial || n < 1 || n > trunc_ || m < 0 || m > trunc_ || i < 0 || i > n) {
    throw InvalidInput("vertical face out of range");
  }
  return lookup(vface_, bikey(trunc_, m, n, i));
}

std::size_t Shape::hdegen_op(int m, int n, int i) const {
  if (kind_ != ShapeKind::Bisimplicial || m < 0 || m >= trunc_ || n < 0 || n > trunc_ || i < 0 || i > m) {
    throw InvalidInput("horizontal degeneracy out of range");
  }
  return lookup(hdegen_, bikey(trunc_, m, n, i));
}

std::size_t Shape::vdegen_op(int m, int n, int i) const {
  if (kind_ != ShapeKind::Bisimplicial || n < 0 || n >= trunc_ || m < 0 || m > trunc_ || i < 0 || i > n) {
    throw InvalidInput("vertical degeneracy out of range");
  }
  return lookup(vdegen_, bikey(trunc_, m, n, i));
}

namespace {

// Simplicial identities on one simplicial direction. `face(n,i)` / `degen(n,i)`
// return op indices; `object(n)` the shape object at level n.
template <class FaceFn, class DegenFn, class ObjFn>
void simplicial_relations(int trunc, FaceFn face, DegenFn degen, ObjFn object,
                          std::vector<Shape::Relation>& out) {
  for (int n = 2; n <= trunc; ++n) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        out.push_back({object(n), {face(n, j), face(n - 1, i)}, {face(n, i), face(n - 1, j - 1)}});
      }
    }
  }
  for (int n = 0; n < trunc; ++n) {
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n + 1; ++i) {
        std::vector<std::size_t> lhs = {degen(n, j), face(n + 1, i)};
        if (i == j || i == j + 1) {
          out.push_back({object(n), lhs, {}});
        } else if (i < j) {
          out.push_back({object(n), lhs, {face(n, i), degen(n - 1, j - 1)}});
        } else {
          out.push_back({object(n), lhs, {face(n, i - 1), degen(n - 1, j)}});
        }
      }
      if (n + 2 <= trunc) {
        for (int i = 0; i <= j; ++i) {
          out.push_back({object(n), {degen(n, j), degen(n + 1, i)}, {degen(n, i), degen(n + 1, j + 1)}});
        }
      }
    }
  }
}

}  // namespace

void Shape::build_simplicial() {
  const int N = trunc_;
  for (int n = 0; n <= N; ++n) degree_.push_back(n);
  face_.assign(static_cast<std::size_t>(N + 1) * (N + 2), kNoOp);
  degen_.assign(static_cast<std::size_t>(N + 1) * (N + 2), kNoOp);
  for (int n = 1; n <= N; ++n) {
    for (int i = 0; i <= n; ++i) {
      face_[static_cast<std::size_t>(n) * (N + 2) + i] = ops_.size();
      ops_.push_back({static_cast<std::size_t>(n), static_cast<std::size_t>(n - 1), false});
    }
  }
  for (int n = 0; n < N; ++n) {
    for (int i = 0; i <= n; ++i) {
      degen_[static_cast<std::size_t>(n) * (N + 2) + i] = ops_.size();
      ops_.push_back({static_cast<std::size_t>(n), static_cast<std::size_t>(n + 1), true});
    }
  }
  simplicial_relations(
      N, [&](int n, int i) { return face_op(n, i); }, [&](int n, int i) { return degen_op(n, i); },
      [](int n) { return static_cast<std::size_t>(n); }, relations_);
}

void Shape::build_bisimplicial() {
  const int N = trunc_;
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n) degree_.push_back(m + n);
  }
  const std::size_t table = static_cast<std::size_t>(N + 1) * (N + 1) * (N + 2);
  hface_.assign(table, kNoOp);
  vface_.assign(table, kNoOp);
  hdegen_.assign(table, kNoOp);
  vdegen_.assign(table, kNoOp);
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n) {
      for (int i = 0; m >= 1 && i <= m; ++i) {
        hface_[bikey(N, m, n, i)] = ops_.size();
        ops_.push_back({cell(m, n), cell(m - 1, n), false});
      }
      for (int i = 0; n >= 1 && i <= n; ++i) {
        vface_[bikey(N, m, n, i)] = ops_.size();
        ops_.push_back({cell(m, n), cell(m, n - 1), false});
      }
      for (int i = 0; m < N && i <= m; ++i) {
        hdegen_[bikey(N, m, n, i)] = ops_.size();
        ops_.push_back({cell(m, n), cell(m + 1, n), true});
      }
      for (int i = 0; n < N && i <= n; ++i) {
        vdegen_[bikey(N, m, n, i)] = ops_.size();
        ops_.push_back({cell(m, n), cell(m, n + 1), true});
      }
    }
  }
  for (int n = 0; n <= N; ++n) {
    simplicial_relations(
        N, [&](int m, int i) { return hface_op(m, n, i); }, [&](int m, int i) { return hdegen_op(m, n, i); },
        [&](int m) { return cell(m, n); }, relations_);
  }
  for (int m = 0; m <= N; ++m) {
    simplicial_relations(
        N, [&](int n, int i) { return vface_op(m, n, i); }, [&](int n, int i) { return vdegen_op(m, n, i); },
        [&](int n) { return cell(m, n); }, relations_);
  }
  // Horizontal and vertical operators commute.
  struct Family {
    std::size_t (Shape::*op)(int, int, int) const;
    int dm, dn;
  };
  const Family hfam[] = {{&Shape::hface_op, -1, 0}, {&Shape::hdegen_op, 1, 0}};
  const Family vfam[] = {{&Shape::vface_op, 0, -1}, {&Shape::vdegen_op, 0, 1}};
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n) {
      for (const auto& h : hfam) {
        const int m2 = m + h.dm;
        if (m2 < 0 || m2 > N) continue;
        for (const auto& v : vfam) {
          const int n2 = n + v.dn;
          if (n2 < 0 || n2 > N) continue;
          for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= n; ++j) {
              relations_.push_back({cell(m, n),
                                    {(this->*h.op)(m, n, i), (this->*v.op)(m2, n, j)},
                                    {(this->*v.op)(m, n, j), (this->*h.op)(m, n2, i)}});
            }
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------- Presheaf

Presheaf::Presheaf(ShapePtr shape) : shape_(std::move(shape)) {
  sizes_.assign(shape_->object_count(), 0);
  tables_.resize(shape_->ops().size());
}

Presheaf::Presheaf(ShapePtr shape, std::vector<std::size_t> sizes, std::vector<std::vector<Index>> tables)
    : shape_(std::move(shape)), sizes_(std::move(sizes)), tables_(std::move(tables)) {
  if (sizes_.size() != shape_->object_count() || tables_.size() != shape_->ops().size()) {
    throw InvalidInput("presheaf data does not match its shape");
  }
}

std::size_t Presheaf::total_size() const { return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0}); }

void Presheaf::validate() const {
  const auto& ops = shape_->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& t = tables_[k];
    if (t.size() != sizes_[ops[k].src]) {
      std::ostringstream msg;
      msg << "operator table " << k << " has " << t.size() << " entries, expected " << sizes_[ops[k].src];
      throw InvalidInput(msg.str());
    }
    for (Index v : t) {
      if (v >= sizes_[ops[k].dst]) throw InvalidInput("operator table entry out of range");
    }
  }
  for (const auto& rel : shape_->relations()) {
    for (Index x = 0; x < sizes_[rel.object]; ++x) {
      Index a = x, b = x;
      for (std::size_t op : rel.lhs) a = tables_[op][a];
      for (std::size_t op : rel.rhs) b = tables_[op][b];
      if (a != b) {
        std::ostringstream msg;
        msg << "structure identity fails on element " << x << " of object " << rel.object;
        throw InvalidInput(msg.str());
      }
    }
  }
}

std::vector<std::vector<char>> Presheaf::nondegenerate_mask() const {
  std::vector<std::vector<char>> mask(sizes_.size());
  for (std::size_t o = 0; o < sizes_.size(); ++o) mask[o].assign(sizes_[o], 1);
  const auto& ops = shape_->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (!ops[k].raises) continue;
    for (Index v : tables_[k]) mask[ops[k].dst][v] = 0;
  }
  return mask;
}

FinStructure Presheaf::structure() const {
  FinStructure s;
  s.sort_sizes = sizes_;
  const auto& ops = shape_->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) s.unary.push_back({ops[k].src, ops[k].dst, tables_[k]});
  // Nondegenerate simplices of high degree first: everything else is forced.
  auto nd = nondegenerate_mask();
  int top = 0;
  for (std::size_t o = 0; o < sizes_.size(); ++o) top = std::max(top, shape_->degree(o));
  s.rank.resize(sizes_.size());
  for (std::size_t o = 0; o < sizes_.size(); ++o) {
    s.rank[o].resize(sizes_[o]);
    for (Index x = 0; x < sizes_[o]; ++x) {
      s.rank[o][x] = (nd[o][x] ? 0 : 1000) + (top - shape_->degree(o));
    }
  }
  return s;
}

bool Presheaf::operator==(const Presheaf& other) const {
  return shape_->same_as(*other.shape_) && sizes_ == other.sizes_ && tables_ == other.tables_;
}

void require_same_shape(const Presheaf& a, const Presheaf& b, const char* what) {
  if (!a.shape().same_as(b.shape())) {
    throw InvalidInput(std::string(what) + ": objects have different shapes or truncation levels");
  }
}

// ---------------------------------------------------------------- maps

PresheafMap identity_map(const Presheaf& x) {
  PresheafMap f(x.sizes().size());
  for (std::size_t o = 0; o < f.size(); ++o) {
    f[o].resize(x.size(o));
    std::iota(f[o].begin(), f[o].end(), Index{0});
  }
  return f;
}

PresheafMap compose(const PresheafMap& second, const PresheafMap& first) {
  PresheafMap out(first.size());
  for (std::size_t o = 0; o < first.size(); ++o) {
    out[o].resize(first[o].size());
    for (std::size_t x = 0; x < first[o].size(); ++x) out[o][x] = second[o][first[o][x]];
  }
  return out;
}

bool is_valid_map(const Presheaf& src, const Presheaf& dst, const PresheafMap& f) {
  if (!src.shape().same_as(dst.shape()) || f.size() != src.sizes().size()) return false;
  for (std::size_t o = 0; o < f.size(); ++o) {
    if (f[o].size() != src.size(o)) return false;
    for (Index v : f[o]) {
      if (v >= dst.size(o)) return false;
    }
  }
  const auto& ops = src.shape().ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    for (Index x = 0; x < src.size(ops[k].src); ++x) {
      if (f[ops[k].dst][src.apply(k, x)] != dst.apply(k, f[ops[k].src][x])) return false;
    }
  }
  return true;
}

bool is_injective(const PresheafMap& f) {
  for (const auto& level : f) {
    std::vector<Index> sorted(level);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  return true;
}

bool is_bijective(const Presheaf& src, const Presheaf& dst, const PresheafMap& f) {
  if (src.sizes() != dst.sizes()) return false;
  return is_injective(f);
}

PresheafMap invert(const Presheaf& dst, const PresheafMap& f) {
  PresheafMap inv(f.size());
  for (std::size_t o = 0; o < f.size(); ++o) {
    inv[o].assign(dst.size(o), kNone);
    for (Index x = 0; x < f[o].size(); ++x) inv[o][f[o][x]] = x;
    for (Index v : inv[o]) {
      if (v == kNone) throw InvalidInput("invert: map is not surjective");
    }
  }
  return inv;
}

bool maps_equal(const PresheafMap& f, const PresheafMap& g) { return f == g; }

// ---------------------------------------------------------------- hom-sets

std::vector<PresheafMap> hom_set(const Presheaf& x, const Presheaf& y, SearchOptions opts) {
  require_same_shape(x, y, "hom_set");
  const FinStructure sx = x.structure();
  const FinStructure sy = y.structure();
  HomProblem p = same_signature(sx, sy);
  p.budget = opts.budget;
  return all_homs(p);
}

std::size_t count_homs(const Presheaf& x, const Presheaf& y, SearchOptions opts) {
  require_same_shape(x, y, "count_homs");
  const FinStructure sx = x.structure();
  const FinStructure sy = y.structure();
  HomProblem p = same_signature(sx, sy);
  p.budget = opts.budget;
  return count_homs(p);
}

std::optional<PresheafMap> find_isomorphism(const Presheaf& x, const Presheaf& y, SearchOptions opts) {
  require_same_shape(x, y, "find_isomorphism");
  if (x.sizes() != y.sizes()) return std::nullopt;
  // Degeneracy profile pruning: nondegenerate counts per object must agree.
  auto ndx = x.nondegenerate_mask();
  auto ndy = y.nondegenerate_mask();
  for (std::size_t o = 0; o < ndx.size(); ++o) {
    if (std::count(ndx[o].begin(), ndx[o].end(), 1) != std::count(ndy[o].begin(), ndy[o].end(), 1)) {
      return std::nullopt;
    }
  }
  const FinStructure sx = x.structure();
  const FinStructure sy = y.structure();
  HomProblem p = same_signature(sx, sy);
  p.injective = true;
  p.budget = opts.budget;
  std::optional<PresheafMap> found;
  enumerate_homs(p, [&](const StructureMap& m) {
    found = m;
    return false;
  });
  return found;
}

// ---------------------------------------------------------------- (co)limits

Presheaf initial(ShapePtr shape) { return Presheaf(std::move(shape)); }

Presheaf terminal(ShapePtr shape) {
  const std::size_t objs = shape->object_count();
  std::vector<std::vector<Index>> tables(shape->ops().size(), std::vector<Index>{0});
  return Presheaf(shape, std::vector<std::size_t>(objs, 1), std::move(tables));
}

Cocone coproduct(const std::vector<Presheaf>& parts) {
  if (parts.empty()) throw InvalidInput("coproduct of an empty family needs an explicit shape");
  for (const auto& p : parts) require_same_shape(parts.front(), p, "coproduct");
  const auto& shape = parts.front().shape_ptr();
  const std::size_t objs = shape->object_count();
  std::vector<std::size_t> sizes(objs, 0);
  Cocone out;
  for (const auto& p : parts) {
    PresheafMap leg(objs);
    for (std::size_t o = 0; o < objs; ++o) {
      leg[o].resize(p.size(o));
      for (Index x = 0; x < p.size(o); ++x) leg[o][x] = static_cast<Index>(sizes[o] + x);
      sizes[o] += p.size(o);
    }
    out.legs.push_back(std::move(leg));
  }
  const auto& ops = shape->ops();
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (Index x = 0; x < parts[i].size(ops[k].src); ++x) {
        tables[k].push_back(out.legs[i][ops[k].dst][parts[i].apply(k, x)]);
      }
    }
  }
  out.object = Presheaf(shape, std::move(sizes), std::move(tables));
  return out;
}

PresheafMap product_map(const PresheafMap& f, const PresheafMap& g, const std::vector<std::size_t>& second_sizes) {
  if (f.size() != g.size() || f.size() != second_sizes.size()) throw InvalidInput("product_map: shape mismatch");
  PresheafMap out(f.size());
  for (std::size_t o = 0; o < f.size(); ++o) {
    out[o].reserve(f[o].size() * g[o].size());
    for (Index i : f[o]) {
      for (Index j : g[o]) out[o].push_back(static_cast<Index>(i * second_sizes[o] + j));
    }
  }
  return out;
}

Cone product(const Presheaf& a, const Presheaf& b) {
  require_same_shape(a, b, "product");
  const auto& shape = a.shape_ptr();
  const std::size_t objs = shape->object_count();
  std::vector<std::size_t> sizes(objs);
  PresheafMap pa(objs), pb(objs);
  for (std::size_t o = 0; o < objs; ++o) {
    sizes[o] = a.size(o) * b.size(o);
    pa[o].resize(sizes[o]);
    pb[o].resize(sizes[o]);
    for (std::size_t i = 0; i < a.size(o); ++i) {
      for (std::size_t j = 0; j < b.size(o); ++j) {
        pa[o][i * b.size(o) + j] = static_cast<Index>(i);
        pb[o][i * b.size(o) + j] = static_cast<Index>(j);
      }
    }
  }
  const auto& ops = shape->ops();
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::size_t s = ops[k].src, d = ops[k].dst;
    tables[k].resize(sizes[s]);
    for (std::size_t i = 0; i < a.size(s); ++i) {
      for (std::size_t j = 0; j < b.size(s); ++j) {
        tables[k][i * b.size(s) + j] =
            static_cast<Index>(a.apply(k, static_cast<Index>(i)) * b.size(d) + b.apply(k, static_cast<Index>(j)));
      }
    }
  }
  Cone out;
  out.object = Presheaf(shape, std::move(sizes), std::move(tables));
  out.legs = {std::move(pa), std::move(pb)};
  return out;
}

Cocone quotient(const Presheaf& x, const std::vector<std::vector<std::pair<Index, Index>>>& pairs) {
  const auto& shape = x.shape_ptr();
  const std::size_t objs = shape->object_count();
  std::vector<UnionFind> uf;
  for (std::size_t o = 0; o < objs; ++o) uf.emplace_back(x.size(o));
  for (std::size_t o = 0; o < pairs.size() && o < objs; ++o) {
    for (auto [a, b] : pairs[o]) uf[o].unite(a, b);
  }
  // Close under operators until the relation is a congruence.
  const auto& ops = shape->ops();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::size_t s = ops[k].src, d = ops[k].dst;
      for (Index e = 0; e < x.size(s); ++e) {
        const std::size_t r = uf[s].find(e);
        if (r != e && uf[d].unite(x.apply(k, e), x.apply(k, static_cast<Index>(r)))) changed = true;
      }
    }
  }
  Cocone out;
  PresheafMap leg(objs);
  std::vector<std::size_t> sizes(objs, 0);
  std::vector<std::vector<Index>> rep(objs);
  for (std::size_t o = 0; o < objs; ++o) {
    leg[o].assign(x.size(o), kNone);
    std::vector<Index> cls(x.size(o), kNone);
    for (Index e = 0; e < x.size(o); ++e) {
      const std::size_t r = uf[o].find(e);
      if (cls[r] == kNone) {
        cls[r] = static_cast<Index>(sizes[o]++);
        rep[o].push_back(e);
      }
      leg[o][e] = cls[r];
    }
  }
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::size_t s = ops[k].src, d = ops[k].dst;
    tables[k].resize(sizes[s]);
    for (std::size_t c = 0; c < sizes[s]; ++c) tables[k][c] = leg[d][x.apply(k, rep[s][c])];
  }
  out.object = Presheaf(shape, std::move(sizes), std::move(tables));
  out.legs.push_back(std::move(leg));
  return out;
}

Cocone pushout(const Presheaf& a, const Presheaf& b, const Presheaf& c, const PresheafMap& f,
               const PresheafMap& g) {
  require_same_shape(a, b, "pushout");
  require_same_shape(a, c, "pushout");
  if (!is_valid_map(a, b, f) || !is_valid_map(a, c, g)) throw InvalidInput("pushout: legs are not valid maps");
  Cocone sum = coproduct({b, c});
  const std::size_t objs = a.sizes().size();
  std::vector<std::vector<std::pair<Index, Index>>> pairs(objs);
  for (std::size_t o = 0; o < objs; ++o) {
    for (Index x = 0; x < a.size(o); ++x) pairs[o].emplace_back(sum.legs[0][o][f[o][x]], sum.legs[1][o][g[o][x]]);
  }
  Cocone q = quotient(sum.object, pairs);
  Cocone out;
  out.object = std::move(q.object);
  out.legs = {compose(q.legs[0], sum.legs[0]), compose(q.legs[0], sum.legs[1])};
  return out;
}

Cocone coequalizer(const Presheaf& a, const Presheaf& b, const PresheafMap& f, const PresheafMap& g) {
  if (!is_valid_map(a, b, f) || !is_valid_map(a, b, g)) throw InvalidInput("coequalizer: invalid maps");
  std::vector<std::vector<std::pair<Index, Index>>> pairs(a.sizes().size());
  for (std::size_t o = 0; o < pairs.size(); ++o) {
    for (Index x = 0; x < a.size(o); ++x) pairs[o].emplace_back(f[o][x], g[o][x]);
  }
  return quotient(b, pairs);
}

Cone subpresheaf(const Presheaf& x, const std::vector<std::vector<char>>& keep) {
  const auto& shape = x.shape_ptr();
  const std::size_t objs = shape->object_count();
  std::vector<std::vector<Index>> index(objs);
  std::vector<std::size_t> sizes(objs, 0);
  PresheafMap incl(objs);
  for (std::size_t o = 0; o < objs; ++o) {
    index[o].assign(x.size(o), kNone);
    for (Index e = 0; e < x.size(o); ++e) {
      if (keep[o][e]) {
        index[o][e] = static_cast<Index>(sizes[o]++);
        incl[o].push_back(e);
      }
    }
  }
  const auto& ops = shape->ops();
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::size_t s = ops[k].src, d = ops[k].dst;
    for (Index e : incl[s]) {
      const Index v = index[d][x.apply(k, e)];
      if (v == kNone) throw InvalidInput("subpresheaf: kept elements are not closed under operators");
      tables[k].push_back(v);
    }
  }
  Cone out;
  out.object = Presheaf(shape, std::move(sizes), std::move(tables));
  out.legs.push_back(std::move(incl));
  return out;
}

Cone pullback(const Presheaf& b, const Presheaf& c, const Presheaf& d, const PresheafMap& f,
              const PresheafMap& g) {
  if (!is_valid_map(b, d, f) || !is_valid_map(c, d, g)) throw InvalidInput("pullback: invalid maps");
  Cone prod = product(b, c);
  const std::size_t objs = b.sizes().size();
  std::vector<std::vector<char>> keep(objs);
  for (std::size_t o = 0; o < objs; ++o) {
    keep[o].resize(prod.object.size(o));
    for (Index e = 0; e < prod.object.size(o); ++e) {
      keep[o][e] = f[o][prod.legs[0][o][e]] == g[o][prod.legs[1][o][e]];
    }
  }
  Cone sub = subpresheaf(prod.object, keep);
  Cone out;
  out.object = std::move(sub.object);
  out.legs = {compose(prod.legs[0], sub.legs[0]), compose(prod.legs[1], sub.legs[0])};
  return out;
}

Cone equalizer(const Presheaf& a, const Presheaf& b, const PresheafMap& f, const PresheafMap& g) {
  if (!is_valid_map(a, b, f) || !is_valid_map(a, b, g)) throw InvalidInput("equalizer: invalid maps");
  std::vector<std::vector<char>> keep(a.sizes().size());
  for (std::size_t o = 0; o < keep.size(); ++o) {
    keep[o].resize(a.size(o));
    for (Index e = 0; e < a.size(o); ++e) keep[o][e] = f[o][e] == g[o][e];
  }
  return subpresheaf(a, keep);
}

Cocone chain_colimit(const std::vector<Presheaf>& objects, const std::vector<PresheafMap>& maps) {
  if (objects.empty()) throw InvalidInput("chain_colimit: empty chain");
  if (maps.size() + 1 != objects.size()) throw InvalidInput("chain_colimit: need one map per consecutive pair");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!is_valid_map(objects[i], objects[i + 1], maps[i])) throw InvalidInput("chain_colimit: invalid map");
  }
  Cocone sum = coproduct(objects);
  const std::size_t objs = objects.front().sizes().size();
  std::vector<std::vector<std::pair<Index, Index>>> pairs(objs);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t o = 0; o < objs; ++o) {
      for (Index x = 0; x < objects[i].size(o); ++x) {
        pairs[o].emplace_back(sum.legs[i][o][x], sum.legs[i + 1][o][maps[i][o][x]]);
      }
    }
  }
  Cocone q = quotient(sum.object, pairs);
  Cocone out;
  out.object = std::move(q.object);
  for (const auto& leg : sum.legs) out.legs.push_back(compose(q.legs[0], leg));
  return out;
}

PresheafMap induced_from_cocone(const Cocone& cocone, const std::vector<PresheafMap>& maps,
                                const Presheaf& target) {
  if (maps.size() != cocone.legs.size()) throw InvalidInput("induced map: one map per cocone leg required");
  const std::size_t objs = cocone.object.sizes().size();
  PresheafMap out(objs);
  for (std::size_t o = 0; o < objs; ++o) out[o].assign(cocone.object.size(o), kNone);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t o = 0; o < objs; ++o) {
      for (std::size_t x = 0; x < cocone.legs[i][o].size(); ++x) {
        const Index c = cocone.legs[i][o][x];
        const Index v = maps[i][o][x];
        if (out[o][c] == kNone) {
          out[o][c] = v;
        } else if (out[o][c] != v) {
          throw InvalidInput("induced map: maps do not agree on the diagram");
        }
      }
    }
  }
  for (const auto& level : out) {
    for (Index v : level) {
      if (v == kNone) throw InvalidInput("induced map: cocone legs are not jointly surjective");
    }
  }
  if (!is_valid_map(cocone.object, target, out)) throw InvalidInput("induced map: result is not natural");
  return out;
}

}  // namespace eqcat
