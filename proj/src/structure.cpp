#include "eqcat/structure.hpp"

#include <algorithm>
#include <tuple>

#include "eqcat/error.hpp"

namespace eqcat {

HomProblem same_signature(const FinStructure& source, const FinStructure& target) {
  if (source.sort_sizes.size() != target.sort_sizes.size() ||
      source.unary.size() != target.unary.size() ||
      source.binary.size() != target.binary.size() ||
      source.constants.size() != target.constants.size()) {
    throw InvalidInput("structures do not share a signature");
  }
  HomProblem p;
  p.source = &source;
  p.target = &target;
  auto iota = [](std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
  };
  p.sort_map = iota(source.sort_sizes.size());
  p.unary_map = iota(source.unary.size());
  p.binary_map = iota(source.binary.size());
  p.constant_map = iota(source.constants.size());
  return p;
}

namespace {

class Search {
 public:
  Search(const HomProblem& p, const std::function<bool(const StructureMap&)>& visit)
      : p_(p), src_(*p.source), tgt_(*p.target), visit_(visit) {
    const std::size_t sorts = src_.sort_sizes.size();
    if (p_.sort_map.size() != sorts || p_.unary_map.size() != src_.unary.size() ||
        p_.binary_map.size() != src_.binary.size() ||
        p_.constant_map.size() != src_.constants.size()) {
      throw InvalidInput("hom problem: correspondence tables have the wrong length");
    }
    assign_.resize(sorts);
    assigned_list_.resize(sorts);
    unary_out_.resize(sorts);
    binary_lhs_.resize(sorts);
    binary_rhs_.resize(sorts);
    for (std::size_t s = 0; s < sorts; ++s) {
      assign_[s].assign(src_.sort_sizes[s], kNone);
    }
    used_.resize(tgt_.sort_sizes.size());
    if (p_.injective) {
      for (std::size_t t = 0; t < tgt_.sort_sizes.size(); ++t) used_[t].assign(tgt_.sort_sizes[t], 0);
    }
    for (std::size_t u = 0; u < src_.unary.size(); ++u) unary_out_[src_.unary[u].src].push_back(u);
    for (std::size_t b = 0; b < src_.binary.size(); ++b) {
      binary_lhs_[src_.binary[b].lhs].push_back(b);
      binary_rhs_[src_.binary[b].rhs].push_back(b);
    }
    std::vector<std::tuple<int, std::size_t, Index>> order;
    for (std::size_t s = 0; s < sorts; ++s) {
      for (Index e = 0; e < src_.sort_sizes[s]; ++e) {
        int r = 0;
        if (s < src_.rank.size() && e < src_.rank[s].size()) r = src_.rank[s][e];
        order.emplace_back(r, s, e);
      }
    }
    std::stable_sort(order.begin(), order.end());
    for (auto& [r, s, e] : order) order_.emplace_back(s, e);
  }

  std::size_t run() {
    for (std::size_t c = 0; c < src_.constants.size(); ++c) {
      const auto& k = src_.constants[c];
      const auto& kt = tgt_.constants[p_.constant_map[c]];
      if (!assign(k.sort, k.value, kt.value) || !propagate()) return 0;
    }
    recurse(0);
    return found_;
  }

 private:
  bool assign(std::size_t s, Index e, Index v) {
    Index& slot = assign_[s][e];
    if (slot != kNone) return slot == v;
    const std::size_t ts = p_.sort_map[s];
    if (v >= tgt_.sort_sizes[ts]) return false;
    if (p_.injective) {
      if (used_[ts][v]) return false;
      used_[ts][v] = 1;
    }
    slot = v;
    trail_.emplace_back(s, e);
    assigned_list_[s].push_back(e);
    queue_.emplace_back(s, e);
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      auto [s, e] = queue_.back();
      queue_.pop_back();
      const Index v = assign_[s][e];
      for (std::size_t u : unary_out_[s]) {
        const auto& op = src_.unary[u];
        const auto& top = tgt_.unary[p_.unary_map[u]];
        if (!assign(op.dst, op.table[e], top.table[v])) return fail();
      }
      for (std::size_t b : binary_lhs_[s]) {
        const auto& op = src_.binary[b];
        const auto& top = tgt_.binary[p_.binary_map[b]];
        const std::size_t rsz = src_.sort_sizes[op.rhs];
        const std::size_t trsz = tgt_.sort_sizes[top.rhs];
        const auto& rl = assigned_list_[op.rhs];
        for (std::size_t i = 0, n = rl.size(); i < n; ++i) {
          const Index r = rl[i];
          const Index vr = assign_[op.rhs][r];
          if (!assign(op.dst, op.table[e * rsz + r], top.table[v * trsz + vr])) return fail();
        }
      }
      for (std::size_t b : binary_rhs_[s]) {
        const auto& op = src_.binary[b];
        const auto& top = tgt_.binary[p_.binary_map[b]];
        const std::size_t rsz = src_.sort_sizes[op.rhs];
        const std::size_t trsz = tgt_.sort_sizes[top.rhs];
        const auto& ll = assigned_list_[op.lhs];
        for (std::size_t i = 0, n = ll.size(); i < n; ++i) {
          const Index l = ll[i];
          const Index vl = assign_[op.lhs][l];
          if (!assign(op.dst, op.table[l * rsz + e], top.table[vl * trsz + v])) return fail();
        }
      }
    }
    return true;
  }

  bool fail() {
    queue_.clear();
    return false;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [s, e] = trail_.back();
      trail_.pop_back();
      if (p_.injective) used_[p_.sort_map[s]][assign_[s][e]] = 0;
      assign_[s][e] = kNone;
      assigned_list_[s].pop_back();
    }
  }

  bool recurse(std::size_t pos) {
    while (pos < order_.size() && assign_[order_[pos].first][order_[pos].second] != kNone) ++pos;
    if (pos == order_.size()) {
      ++found_;
      return visit_(assign_);
    }
    auto [s, e] = order_[pos];
    const std::size_t range = tgt_.sort_sizes[p_.sort_map[s]];
    for (Index v = 0; v < range; ++v) {
      if (++nodes_ > p_.budget) throw BudgetExceeded("hom search exceeded its node budget");
      const std::size_t mark = trail_.size();
      bool keep_going = true;
      if (assign(s, e, v) && propagate()) keep_going = recurse(pos + 1);
      undo(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  const HomProblem& p_;
  const FinStructure& src_;
  const FinStructure& tgt_;
  const std::function<bool(const StructureMap&)>& visit_;
  StructureMap assign_;
  std::vector<std::vector<Index>> assigned_list_;
  std::vector<std::vector<std::size_t>> unary_out_, binary_lhs_, binary_rhs_;
  std::vector<std::vector<char>> used_;
  std::vector<std::pair<std::size_t, Index>> order_;
  std::vector<std::pair<std::size_t, Index>> trail_;
  std::vector<std::pair<std::size_t, Index>> queue_;
  std::size_t nodes_ = 0;
  std::size_t found_ = 0;
};

}  // namespace

std::size_t enumerate_homs(const HomProblem& problem,
                           const std::function<bool(const StructureMap&)>& visit) {
  Search search(problem, visit);
  return search.run();
}

std::vector<StructureMap> all_homs(const HomProblem& problem) {
  std::vector<StructureMap> out;
  enumerate_homs(problem, [&](const StructureMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::size_t count_homs(const HomProblem& problem) {
  return enumerate_homs(problem, [](const StructureMap&) { return true; });
}

bool is_hom(const HomProblem& p, const StructureMap& map) {
  const auto& src = *p.source;
  const auto& tgt = *p.target;
  if (map.size() != src.sort_sizes.size()) return false;
  for (std::size_t s = 0; s < map.size(); ++s) {
    if (map[s].size() != src.sort_sizes[s]) return false;
    for (Index v : map[s]) {
      if (v >= tgt.sort_sizes[p.sort_map[s]]) return false;
    }
  }
  for (std::size_t u = 0; u < src.unary.size(); ++u) {
    const auto& op = src.unary[u];
    const auto& top = tgt.unary[p.unary_map[u]];
    for (Index e = 0; e < src.sort_sizes[op.src]; ++e) {
      if (map[op.dst][op.table[e]] != top.table[map[op.src][e]]) return false;
    }
  }
  for (std::size_t b = 0; b < src.binary.size(); ++b) {
    const auto& op = src.binary[b];
    const auto& top = tgt.binary[p.binary_map[b]];
    const std::size_t rsz = src.sort_sizes[op.rhs];
    const std::size_t trsz = tgt.sort_sizes[top.rhs];
    for (Index l = 0; l < src.sort_sizes[op.lhs]; ++l) {
      for (Index r = 0; r < rsz; ++r) {
        if (map[op.dst][op.table[l * rsz + r]] !=
            top.table[map[op.lhs][l] * trsz + map[op.rhs][r]]) {
          return false;
        }
      }
    }
  }
  for (std::size_t c = 0; c < src.constants.size(); ++c) {
    const auto& k = src.constants[c];
    if (map[k.sort][k.value] != tgt.constants[p.constant_map[c]].value) return false;
  }
  if (p.injective) {
    std::vector<std::vector<char>> seen(tgt.sort_sizes.size());
    for (std::size_t t = 0; t < seen.size(); ++t) seen[t].assign(tgt.sort_sizes[t], 0);
    for (std::size_t s = 0; s < map.size(); ++s) {
      for (Index v : map[s]) {
        auto& flag = seen[p.sort_map[s]][v];
        if (flag) return false;
        flag = 1;
      }
    }
  }
  return true;
}

}  // namespace eqcat
