#pragma once

// Builds presheaves whose elements are described by ordered keys; operators
// are given as key-level functions and resolved through a lookup table.

#include <map>
#include <vector>

#include "eqcat/error.hpp"
#include "eqcat/presheaf.hpp"

namespace eqcat::detail {

template <class Key>
class KeyIndex {
 public:
  explicit KeyIndex(std::size_t objects) : keys_(objects), index_(objects) {}

  Index add(std::size_t object, const Key& key) {
    auto [it, inserted] = index_[object].emplace(key, static_cast<Index>(keys_[object].size()));
    if (inserted) keys_[object].push_back(key);
    return it->second;
  }
  Index find(std::size_t object, const Key& key) const {
    auto it = index_[object].find(key);
    if (it == index_[object].end()) throw InvalidInput("construction produced an element outside its object");
    return it->second;
  }
  bool contains(std::size_t object, const Key& key) const { return index_[object].count(key) != 0; }
  const std::vector<Key>& keys(std::size_t object) const { return keys_[object]; }
  std::size_t size(std::size_t object) const { return keys_[object].size(); }

 private:
  std::vector<std::vector<Key>> keys_;
  std::vector<std::map<Key, Index>> index_;
};

/// `op_fn(op_index, key)` returns the image key of `key` under the operator.
template <class Key, class OpFn>
Presheaf build_presheaf(const ShapePtr& shape, const KeyIndex<Key>& idx, OpFn op_fn) {
  const auto& ops = shape->ops();
  std::vector<std::size_t> sizes(shape->object_count());
  for (std::size_t o = 0; o < sizes.size(); ++o) sizes[o] = idx.size(o);
  std::vector<std::vector<Index>> tables(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    tables[k].reserve(sizes[ops[k].src]);
    for (const Key& key : idx.keys(ops[k].src)) tables[k].push_back(idx.find(ops[k].dst, op_fn(k, key)));
  }
  Presheaf p(shape, std::move(sizes), std::move(tables));
  p.validate();
  return p;
}

/// Decodes a simplicial-shape op index into (is_face, level, i).
struct SimplicialOp {
  bool face;
  int level;
  int i;
};

inline std::vector<SimplicialOp> decode_simplicial_ops(const Shape& shape) {
  std::vector<SimplicialOp> out(shape.ops().size());
  for (int n = 1; n <= shape.trunc(); ++n) {
    for (int i = 0; i <= n; ++i) out[shape.face_op(n, i)] = {true, n, i};
  }
  for (int n = 0; n < shape.trunc(); ++n) {
    for (int i = 0; i <= n; ++i) out[shape.degen_op(n, i)] = {false, n, i};
  }
  return out;
}

/// Decodes a bisimplicial-shape op index.
struct BisimplicialOp {
  bool horizontal;
  bool face;
  int m;
  int n;
  int i;
};

inline std::vector<BisimplicialOp> decode_bisimplicial_ops(const Shape& shape) {
  const int N = shape.trunc();
  std::vector<BisimplicialOp> out(shape.ops().size());
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n) {
      for (int i = 0; m >= 1 && i <= m; ++i) out[shape.hface_op(m, n, i)] = {true, true, m, n, i};
      for (int i = 0; n >= 1 && i <= n; ++i) out[shape.vface_op(m, n, i)] = {false, true, m, n, i};
      for (int i = 0; m < N && i <= m; ++i) out[shape.hdegen_op(m, n, i)] = {true, false, m, n, i};
      for (int i = 0; n < N && i <= n; ++i) out[shape.vdegen_op(m, n, i)] = {false, false, m, n, i};
    }
  }
  return out;
}

/// Applies d_i / s_i to a vertex sequence of a simplex.
inline std::vector<int> face_seq(const std::vector<int>& s, int i) {
  std::vector<int> out(s);
  out.erase(out.begin() + i);
  return out;
}

inline std::vector<int> degen_seq(const std::vector<int>& s, int i) {
  std::vector<int> out(s);
  out.insert(out.begin() + i, s[i]);
  return out;
}

}  // namespace eqcat::detail
