#include "eqcat/suite.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "eqcat/error.hpp"

namespace eqcat {

namespace {

const std::vector<std::string> kModels{"qcat", "css", "sc", "secat_c", "secat_f"};

bool is_segal_model(const std::string& m) { return m == "css" || m == "secat_c" || m == "secat_f"; }

struct Ctx {
  const CheckSuiteConfig& cfg;
  std::vector<Subgroup> lattice;  // canonical subgroup order, for keys
  std::mt19937 rng;
  std::vector<SuiteCell> cells;

  std::size_t label(const Subgroup& h) const {
    return static_cast<std::size_t>(std::find(lattice.begin(), lattice.end(), h) - lattice.begin());
  }
  std::size_t pick(std::size_t n) { return n == 0 ? 0 : rng() % n; }

  void add(CheckReport r, const std::string& tag) {
    auto pad = [](std::size_t i) {
      auto s = std::to_string(i);
      return std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
    };
    std::string key = r.condition + "|" + r.generator + "|H" + pad(label(r.h)) + "|K" + pad(label(r.k)) + "|" + tag;
    cells.push_back({std::move(key), std::move(r)});
  }
};

GSet orbit_sum(const FiniteGroup& g, const std::vector<Subgroup>& stabilizers) {
  GSet s{g, 0, {}};
  std::vector<GSet> parts;
  for (const auto& h : stabilizers) {
    parts.push_back(coset_gset(g, h).gset);
    s.size += parts.back().size;
  }
  s.action.assign(g.order() * s.size, 0);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (Index e = 0; e < g.order(); ++e) {
      for (Index x = 0; x < p.size; ++x) s.action[e * s.size + offset + x] = static_cast<Index>(offset + p.act(e, x));
    }
    offset += p.size;
  }
  return s;
}

/// One or two random orbits.
GSet random_gset(Ctx& c) {
  std::vector<Subgroup> stab;
  const std::size_t count = 1 + c.pick(2);
  for (std::size_t i = 0; i < count; ++i) stab.push_back(c.lattice[c.pick(c.lattice.size())]);
  return orbit_sum(c.cfg.group, stab);
}

/// A fixed point first, then a random orbit.
GSet gset_with_fixed_point(Ctx& c) {
  return orbit_sum(c.cfg.group, {whole_group(c.cfg.group), c.lattice[c.pick(c.lattice.size())]});
}

struct Named {
  std::string name;
  TruncSSet value;
};

Named small_sset(Ctx& c) {
  const int t = c.cfg.trunc;
  switch (c.pick(3)) {
    case 0:
      return {"Delta[0]", standard_simplex(0, t)};
    case 1:
      return {"Delta[1]", standard_simplex(1, t)};
    default:
      return {"2 points", discrete(2, t)};
  }
}

Named pool_sset(Ctx& c) {
  const int t = c.cfg.trunc;
  switch (c.pick(5)) {
    case 0:
      return {"Delta[0]", standard_simplex(0, t)};
    case 1:
      return {"Delta[1]", standard_simplex(1, t)};
    case 2:
      return {"dDelta[2]", boundary(2, t)};
    case 3:
      return {"V[2,1]", horn(2, 1, t)};
    default:
      return {"2 points", discrete(2, t)};
  }
}

// carrier lifts of simplicial sets
TruncSSet lift(const TruncSSet& k, const TruncSSet*) { return k; }
TruncBiSSet lift(const TruncSSet& k, const TruncBiSSet*) { return transpose(k); }
SCategory lift(const TruncSSet& k, const SCategory*) { return UK(k); }
SSetMap lift_map(const SSetMap& f, const TruncSSet*) { return f; }
BiMap lift_map(const SSetMap& f, const TruncBiSSet*) { return transpose_map(f); }

template <class T>
T lifted(const TruncSSet& k) {
  return lift(k, static_cast<const T*>(nullptr));
}

template <class T>
void suite_cellularity_3(Ctx& c) {
  const auto& g = c.cfg.group;
  for (int s = 0; s < c.cfg.seeds; ++s) {
    const auto a = pool_sset(c);
    const auto value = lifted<T>(a.value);
    for (const auto& h : c.cfg.family) {
      for (const auto& k : c.cfg.family) {
        auto r = check_cellularity_3(g, h, k, value);
        r.generator = "A=" + a.name;
        c.add(std::move(r), "s" + std::to_string(s));
      }
    }
  }
}

template <class T>
void suite_adjunction(Ctx& c) {
  for (int s = 0; s < c.cfg.seeds; ++s) {
    const auto a = small_sset(c);
    const auto b = pool_sset(c);
    const auto target = tensor_set(random_gset(c), lifted<T>(b.value));
    for (const auto& h : c.cfg.family) {
      const auto r = check_adjunction(h, lifted<T>(a.value), target);
      std::ostringstream ev;
      ev << "equivariant maps G/H (x) A -> B: " << r.left_count << ", maps A -> B^H: " << r.right_count
         << (r.passes() ? ", bijection" : ", not a bijection");
      c.add({"adjunction", "A=" + a.name + " B=S(x)" + b.name, h, h, r.passes(), ev.str()}, "s" + std::to_string(s));
    }
  }
}

template <class T>
void suite_cellularity_1(Ctx& c) {
  const int t = c.cfg.trunc;
  using M = MapOf<T>;
  for (int s = 0; s < c.cfg.seeds; ++s) {
    const auto set = random_gset(c);
    std::vector<GMap<T>> chain;
    std::string name;
    if (t >= 2) {
      const auto into = boundary_inclusion(2, t);
      const auto hrn = horn(2, 1, t);
      SSetMap first{hrn, into.source, {}};
      for (const auto& f : hom_set(hrn, into.source)) {
        if (is_injective(f)) {
          first.components = f;
          break;
        }
      }
      chain.push_back(tensor_set_map<T>(set, M(lift_map(first, static_cast<const T*>(nullptr)))));
      chain.push_back(tensor_set_map<T>(set, M(lift_map(into, static_cast<const T*>(nullptr)))));
      name = "V[2,1] -> dDelta[2] -> Delta[2]";
    } else {
      chain.push_back(tensor_set_map<T>(set, M(lift_map(boundary_inclusion(1, t), static_cast<const T*>(nullptr)))));
      name = "dDelta[1] -> Delta[1]";
    }
    for (const auto& h : c.cfg.family) {
      auto r = check_cellularity_1(h, chain);
      r.generator = name;
      c.add(std::move(r), "s" + std::to_string(s));
    }
  }
}

template <class T>
void suite_elmendorf(Ctx& c) {
  const auto& g = c.cfg.group;
  for (int s = 0; s < c.cfg.seeds; ++s) {
    const auto a = small_sset(c);
    const auto b = pool_sset(c);
    const auto x = tensor_set(random_gset(c), lifted<T>(a.value));
    const auto y = tensor_set(random_gset(c), lifted<T>(b.value));
    const auto r = check_elmendorf_adjunction(x, fixed_point_diagram(y));
    std::ostringstream ev;
    ev << "maps i_* X -> F: " << r.left_count << ", equivariant maps X -> i^* F: " << r.right_count
       << ", unit triangle " << (r.unit_triangle ? "holds" : "fails") << ", counit triangle "
       << (r.counit_triangle ? "holds" : "fails");
    if (!r.notes.empty()) ev << "; " << r.notes;
    const auto e = trivial_subgroup(g);
    c.add({"elmendorf", "X=S(x)" + a.name + " F=fixed points of S(x)" + b.name, e, e, r.passes(), ev.str()},
          "s" + std::to_string(s));
  }
}

template <class T>
void suite_presheaf_cellularity_2(Ctx& c, const std::vector<std::pair<std::string, MapOf<T>>>& gens) {
  for (int s = 0; s < c.cfg.seeds; ++s) {
    for (const auto& [name, gen] : gens) {
      const auto b = pool_sset(c);
      const auto x = tensor_set(gset_with_fixed_point(c), lifted<T>(b.value));
      for (const auto& k : c.cfg.family) {
        const auto xk = fixed_points(x, k);
        const auto maps = hom_set(gen.source, xk.object);
        const MapOf<T> attach =
            compose(xk.inclusion, MapOf<T>{gen.source, xk.object, maps[c.pick(maps.size())]});
        for (const auto& h : c.cfg.family) {
          auto r = check_cellularity_2<T>(k, h, gen, x, attach);
          r.generator = name + " into S(x)" + b.name;
          c.add(std::move(r), "s" + std::to_string(s));
        }
      }
    }
  }
}

void suite_scat_cellularity_2(Ctx& c) {
  const int t = c.cfg.trunc;
  for (int s = 0; s < c.cfg.seeds; ++s) {
    const auto x = tensor_set(gset_with_fixed_point(c), SCategory::from_category(FiniteCategory::ordinal(1), t));
    for (const auto& k : c.cfg.family) {
      for (const auto& h : c.cfg.family) {
        auto r = check_cellularity_2_objects(k, h, x);
        r.generator = "adjoin an object";
        c.add(std::move(r), "s" + std::to_string(s));
      }
    }
    // the copy at the fixed point is pointwise fixed, so its cells are K-fixed for every K
    for (int n = 0; n <= std::min(2, t); ++n) {
      const auto bd = boundary(n, t);
      SSetMap phi{bd, x.value.map(0, 1), PresheafMap(static_cast<std::size_t>(t) + 1)};
      for (int lvl = 0; lvl <= t; ++lvl) phi.components[lvl].assign(bd.size(lvl), 0);
      for (const auto& k : c.cfg.family) {
        for (const auto& h : c.cfg.family) {
          auto r = check_cellularity_2_cell(k, h, x, n, {0, 1, phi}, c.cfg.budget);
          r.generator = "UdDelta[" + std::to_string(n) + "] -> UDelta[" + std::to_string(n) + "]";
          c.add(std::move(r), "s" + std::to_string(s));
        }
      }
    }
  }
}

void suite_segal_cellularity_2(Ctx& c, bool projective) {
  const int t = c.cfg.trunc;
  const auto x = tensor_set(gset_with_fixed_point(c), transpose(nerve(FiniteCategory::ordinal(1), t)));
  for (int m = 0; m <= std::min(2, t); ++m) {
    for (int n = 0; n <= std::min(2, t); ++n) {
      // the Reedy-type set has n >= 1 together with (0,0)
      if (!projective && n == 0 && m > 0) continue;
      const std::string mn = std::to_string(m) + "," + std::to_string(n) + "]";
      BiMap gen = projective ? projective_generator(m, n, t) : reedy_generator(m, n, t);
      std::string name = (projective ? "projective[" : "reedy[") + mn;
      if (projective && m == 1) {
        // Delta[n]^t -> Delta[1] x Delta[n]^t at the end 0, whose reduction is Delta[n]^t -> Q[1,n]
        const auto end = const_map(yoneda_map(standard_simplex(1, t), 0, 0));
        gen = product(end, identity(transpose(standard_simplex(n, t))));
        name = "end[" + mn;
      }
      const auto ar = reduce(gen.source).object.space();
      for (const auto& k : c.cfg.family) {
        const auto xk = fixed_points(x, k);
        const auto maps = hom_set(ar, xk.object);
        const BiMap attach = compose(xk.inclusion, BiMap{ar, xk.object, maps[c.pick(maps.size())]});
        for (const auto& h : c.cfg.family) {
          const auto r = check_cellularity_2_segal(k, h, gen, x, attach);
          CheckReport out = r.fixed;
          out.generator = name;
          out.verdict = r.passes();
          out.evidence += std::string("; left square ") + (r.left_square ? "is" : "is not") +
                          " a pushout; outer rectangle " + (r.outer_rectangle ? "is" : "is not") + " a pushout";
          c.add(std::move(out), "");
        }
      }
    }
  }
}

void suite_pq(Ctx& c) {
  const int t = c.cfg.trunc;
  const auto e = trivial_subgroup(c.cfg.group);
  for (int m = 0; m <= std::min(3, t); ++m) {
    for (int n = 0; n <= std::min(2, t); ++n) {
      const std::string mn = std::to_string(m) + "," + std::to_string(n);
      const auto pq = pq_generator(m, n, t);
      const auto gen = projective_generator(m, n, t);
      const auto& p = pq.i.source;
      const auto& q = pq.i.target;
      const bool q_ok = is_isomorphic(q, reduce(gen.target).object.space()).has_value();
      c.add({"P/Q identity", "Q[" + mn + "]", e, e, q_ok,
             std::string("Q[") + mn + "] " + (q_ok ? "=" : "!=") + " (Delta[" + std::to_string(m) +
                 "] x Delta[" + std::to_string(n) + "]^t)_r"},
            "");
      bool p_ok = false;
      std::string ev;
      if (m == 0) {
        p_ok = p.presheaf().total_size() == 0;
        ev = std::string("P[") + mn + "] " + (p_ok ? "is" : "is not") + " empty";
      } else if (m == 1) {
        const auto tn = transpose(standard_simplex(n, t));
        const bool literal = is_isomorphic(p, tn).has_value();
        const auto v = transpose_vertices(standard_simplex(n, t));
        const auto glued = pushout(v, v).object;
        p_ok = is_isomorphic(p, glued).has_value();
        ev = std::string("P[") + mn + "] " + (p_ok ? "=" : "!=") + " two copies of Delta[" + std::to_string(n) +
             "]^t glued along their vertices; literal identification P[1,n] = Delta[n]^t " +
             (literal ? "holds" : "does not hold") + " here";
      } else {
        p_ok = is_isomorphic(p, reduce(gen.source).object.space()).has_value();
        ev = std::string("P[") + mn + "] " + (p_ok ? "=" : "!=") + " (dDelta[" + std::to_string(m) +
             "] x Delta[" + std::to_string(n) + "]^t)_r";
      }
      c.add({"P/Q identity", "P[" + mn + "]", e, e, p_ok, ev}, "");
    }
  }
}

}  // namespace

void CheckSuiteConfig::validate() const {
  if (std::find(kModels.begin(), kModels.end(), model) == kModels.end()) {
    throw InvalidInput("model: unknown model '" + model + "' (expected qcat, css, sc, secat_c or secat_f)");
  }
  if (trunc < 1) throw InvalidInput("trunc: must be at least 1");
  if (is_segal_model(model) && trunc < 2) throw InvalidInput("trunc: Segal models need N >= 2");
  if (seeds < 1) throw InvalidInput("seeds: must be at least 1");
  if (family.empty()) throw InvalidInput("family: empty");
  if (orbit_comparison && !SubgroupFamily{family}.contains_trivial()) {
    throw InvalidInput("family: orbit comparison requires the trivial subgroup in the family");
  }
}

std::vector<Subgroup> parse_family(const FiniteGroup& g, const io::Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "all") throw InvalidInput("family: expected \"all\" or a list of subgroups");
    return subgroups(g);
  }
  if (!j.is_array()) throw InvalidInput("family: expected \"all\" or a list of subgroups");
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto path = "family[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw InvalidInput(path + ": expected a list of elements");
    std::vector<Index> members;
    for (std::size_t e = 0; e < j[i].size(); ++e) {
      const auto& el = j[i][e];
      const auto epath = path + "[" + std::to_string(e) + "]";
      if (el.is_number_unsigned()) {
        const auto v = el.get<std::size_t>();
        if (v >= g.order()) throw InvalidInput(epath + ": element index out of range");
        members.push_back(static_cast<Index>(v));
      } else if (el.is_string()) {
        const auto& names = g.names();
        const auto it = std::find(names.begin(), names.end(), el.get<std::string>());
        if (it == names.end()) throw InvalidInput(epath + ": unknown element '" + el.get<std::string>() + "'");
        members.push_back(static_cast<Index>(it - names.begin()));
      } else {
        throw InvalidInput(epath + ": expected an element name or index");
      }
    }
    try {
      out.push_back(make_subgroup(g, members));
    } catch (const InvalidInput& err) {
      throw InvalidInput(path + ": " + err.what());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CheckSuiteConfig parse_suite_config(const io::Json& j) {
  if (!j.is_object()) throw InvalidInput("config: expected an object");
  static const std::vector<std::string> known{"model", "group", "family", "trunc", "budget",
                                              "seed",  "seeds", "orbit_comparison"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) throw InvalidInput("config: unknown field '" + k + "'");
  }
  auto need = [&](const char* f) -> const io::Json& {
    if (!j.contains(f)) throw InvalidInput(std::string(f) + ": missing");
    return j.at(f);
  };
  auto integer = [&](const char* f, long lo) {
    const auto& v = j.at(f);
    if (!v.is_number_integer() || v.get<long>() < lo) {
      throw InvalidInput(std::string(f) + ": expected an integer >= " + std::to_string(lo));
    }
    return v.get<long>();
  };
  CheckSuiteConfig c;
  const auto& model = need("model");
  if (!model.is_string()) throw InvalidInput("model: expected a string");
  c.model = model.get<std::string>();
  try {
    c.group = io::group_from_ref(need("group"));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("group: ") + e.what());
  }
  c.family = parse_family(c.group, j.contains("family") ? j.at("family") : io::Json("all"));
  if (j.contains("trunc")) c.trunc = static_cast<int>(integer("trunc", 0));
  if (j.contains("budget")) c.budget = static_cast<std::size_t>(integer("budget", 1));
  if (j.contains("seed")) c.seed = static_cast<unsigned>(integer("seed", 0));
  if (j.contains("seeds")) c.seeds = static_cast<int>(integer("seeds", 1));
  if (j.contains("orbit_comparison")) {
    if (!j.at("orbit_comparison").is_boolean()) throw InvalidInput("orbit_comparison: expected a boolean");
    c.orbit_comparison = j.at("orbit_comparison").get<bool>();
  }
  c.validate();
  return c;
}

bool SuiteResult::passes() const { return first_failure() == nullptr; }

const SuiteCell* SuiteResult::first_failure() const {
  for (const auto& c : cells) {
    if (!c.report.verdict) return &c;
  }
  return nullptr;
}

SuiteResult run_check_suite(const CheckSuiteConfig& config) {
  config.validate();
  Ctx c{config, subgroups(config.group), std::mt19937(config.seed), {}};
  const int t = config.trunc;
  if (config.model == "qcat") {
    suite_cellularity_3<TruncSSet>(c);
    suite_adjunction<TruncSSet>(c);
    suite_cellularity_1<TruncSSet>(c);
    std::vector<std::pair<std::string, SSetMap>> gens;
    for (int n = 0; n <= std::min(2, t); ++n) {
      gens.emplace_back("dDelta[" + std::to_string(n) + "] -> Delta[" + std::to_string(n) + "]",
                        boundary_inclusion(n, t));
    }
    suite_presheaf_cellularity_2<TruncSSet>(c, gens);
    if (config.orbit_comparison) suite_elmendorf<TruncSSet>(c);
  } else if (config.model == "css") {
    suite_cellularity_3<TruncBiSSet>(c);
    suite_adjunction<TruncBiSSet>(c);
    suite_cellularity_1<TruncBiSSet>(c);
    std::vector<std::pair<std::string, BiMap>> gens;
    for (int m = 0; m <= 1; ++m) {
      for (int n = 0; n <= 1; ++n) {
        gens.emplace_back("reedy[" + std::to_string(m) + "," + std::to_string(n) + "]", reedy_generator(m, n, t));
      }
    }
    suite_presheaf_cellularity_2<TruncBiSSet>(c, gens);
    if (config.orbit_comparison) suite_elmendorf<TruncBiSSet>(c);
  } else if (config.model == "sc") {
    suite_cellularity_3<SCategory>(c);
    suite_adjunction<SCategory>(c);
    suite_scat_cellularity_2(c);
  } else {
    suite_cellularity_3<TruncBiSSet>(c);
    suite_adjunction<TruncBiSSet>(c);
    suite_cellularity_1<TruncBiSSet>(c);
    suite_segal_cellularity_2(c, config.model == "secat_f");
    suite_pq(c);
    if (config.orbit_comparison) suite_elmendorf<TruncBiSSet>(c);
  }
  SuiteResult out{std::move(c.cells)};
  std::stable_sort(out.cells.begin(), out.cells.end(),
                   [](const SuiteCell& a, const SuiteCell& b) { return a.key < b.key; });
  return out;
}

io::Json encode(const SuiteResult& r, const CheckSuiteConfig& config) {
  io::Json cells = io::Json::array();
  for (const auto& c : r.cells) {
    auto j = io::encode(c.report, config.group);
    j["key"] = c.key;
    cells.push_back(std::move(j));
  }
  io::Json out{{"kind", "check-report"},
               {"model", config.model},
               {"trunc", config.trunc},
               {"seed", config.seed},
               {"passed", r.passes()},
               {"cells", cells}};
  if (const auto* f = r.first_failure()) out["first_failure"] = f->key;
  return out;
}

}  // namespace eqcat
