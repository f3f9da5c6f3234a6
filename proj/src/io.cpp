#include "eqcat/io.hpp"

#include <fstream>
#include <sstream>

#include "eqcat/error.hpp"

namespace eqcat::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidInput(where + ": " + what);
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where, std::string("missing field \"") + name + "\"");
  return *it;
}

std::size_t as_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

int as_trunc(const Json& j, const std::string& where) {
  const std::size_t n = as_size(j, where);
  if (n > 12) fail(where, "truncation above 12 is not supported");
  return static_cast<int>(n);
}

std::vector<Index> as_indices(const Json& j, const std::string& where, std::size_t expected, std::size_t bound) {
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() != expected) fail(where, "expected " + std::to_string(expected) + " entries, found " + std::to_string(j.size()));
  std::vector<Index> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t v = as_size(j[i], where + "[" + std::to_string(i) + "]");
    if (v >= bound) fail(where + "[" + std::to_string(i) + "]", "index " + std::to_string(v) + " out of range");
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

const Json& array_at(const Json& j, std::size_t i, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (i >= j.size()) fail(where, "expected at least " + std::to_string(i + 1) + " entries");
  return j[i];
}

void expect_kind(const Json& j, const char* kind, const std::string& where) {
  const auto& k = field(j, "kind", where);
  if (!k.is_string() || k.get<std::string>() != kind) fail(where, std::string("expected kind \"") + kind + "\"");
}

Json encode_map(const PresheafMap& m) { return Json(m); }

PresheafMap decode_map(const Json& j, const Presheaf& src, const Presheaf& dst, const std::string& where) {
  PresheafMap m;
  for (std::size_t o = 0; o < src.sizes().size(); ++o) {
    m.push_back(as_indices(array_at(j, o, where), where + "[" + std::to_string(o) + "]", src.size(o), dst.size(o)));
  }
  if (j.size() != src.sizes().size()) fail(where, "wrong number of components");
  return m;
}

}  // namespace

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("JSON syntax error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << canonical(j);
}

std::string kind_of(const Json& j) {
  const auto& k = field(j, "kind", "object");
  if (!k.is_string()) fail("kind", "expected a string");
  return k.get<std::string>();
}

// ---------------------------------------------------------------- simplicial sets

Json encode(const TruncSSet& x) {
  const auto& shape = x.presheaf().shape();
  const int n = x.trunc();
  Json levels = Json::array(), d = Json::array(), s = Json::array();
  for (int k = 0; k <= n; ++k) {
    levels.push_back(x.size(k));
    Json faces = Json::array(), degens = Json::array();
    for (int i = 0; k > 0 && i <= k; ++i) faces.push_back(x.presheaf().table(shape.face_op(k, i)));
    for (int i = 0; k < n && i <= k; ++i) degens.push_back(x.presheaf().table(shape.degen_op(k, i)));
    d.push_back(faces);
    if (k < n) s.push_back(degens);
  }
  return {{"kind", "sset"}, {"trunc", n}, {"levels", levels}, {"d", d}, {"s", s}};
}

TruncSSet decode_sset(const Json& j) {
  expect_kind(j, "sset", "sset");
  const int n = as_trunc(field(j, "trunc", "sset"), "trunc");
  auto shape = Shape::simplicial(n);
  const auto& levels = field(j, "levels", "sset");
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= n; ++k) sizes.push_back(as_size(array_at(levels, k, "levels"), "levels[" + std::to_string(k) + "]"));
  if (levels.size() != sizes.size()) fail("levels", "expected trunc + 1 entries");
  std::vector<std::vector<Index>> tables(shape->ops().size());
  const auto& d = field(j, "d", "sset");
  const auto& s = field(j, "s", "sset");
  for (int k = 1; k <= n; ++k) {
    const auto& faces = array_at(d, k, "d");
    for (int i = 0; i <= k; ++i) {
      const std::string where = "d[" + std::to_string(k) + "][" + std::to_string(i) + "]";
      tables[shape->face_op(k, i)] = as_indices(array_at(faces, i, where), where, sizes[k], sizes[k - 1]);
    }
  }
  for (int k = 0; k < n; ++k) {
    const auto& degens = array_at(s, k, "s");
    for (int i = 0; i <= k; ++i) {
      const std::string where = "s[" + std::to_string(k) + "][" + std::to_string(i) + "]";
      tables[shape->degen_op(k, i)] = as_indices(array_at(degens, i, where), where, sizes[k], sizes[k + 1]);
    }
  }
  return TruncSSet(Presheaf(shape, sizes, tables));
}

Json encode(const TruncBiSSet& x) {
  const auto& shape = x.presheaf().shape();
  const int n = x.trunc();
  Json sizes = Json::array(), hd = Json::array(), vd = Json::array(), hs = Json::array(), vs = Json::array();
  for (int a = 0; a <= n; ++a) {
    Json srow = Json::array(), hdr = Json::array(), vdr = Json::array(), hsr = Json::array(), vsr = Json::array();
    for (int b = 0; b <= n; ++b) {
      srow.push_back(x.size(a, b));
      Json t1 = Json::array(), t2 = Json::array(), t3 = Json::array(), t4 = Json::array();
      for (int i = 0; a > 0 && i <= a; ++i) t1.push_back(x.presheaf().table(shape.hface_op(a, b, i)));
      for (int i = 0; b > 0 && i <= b; ++i) t2.push_back(x.presheaf().table(shape.vface_op(a, b, i)));
      for (int i = 0; a < n && i <= a; ++i) t3.push_back(x.presheaf().table(shape.hdegen_op(a, b, i)));
      for (int i = 0; b < n && i <= b; ++i) t4.push_back(x.presheaf().table(shape.vdegen_op(a, b, i)));
      hdr.push_back(t1);
      vdr.push_back(t2);
      hsr.push_back(t3);
      vsr.push_back(t4);
    }
    sizes.push_back(srow);
    hd.push_back(hdr);
    vd.push_back(vdr);
    hs.push_back(hsr);
    vs.push_back(vsr);
  }
  return {{"kind", "bisset"}, {"trunc", n}, {"sizes", sizes}, {"hd", hd}, {"vd", vd}, {"hs", hs}, {"vs", vs}};
}

TruncBiSSet decode_bisset(const Json& j) {
  expect_kind(j, "bisset", "bisset");
  const int n = as_trunc(field(j, "trunc", "bisset"), "trunc");
  auto shape = Shape::bisimplicial(n);
  std::vector<std::size_t> sizes(shape->object_count());
  const auto& sz = field(j, "sizes", "bisset");
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const std::string where = "sizes[" + std::to_string(a) + "][" + std::to_string(b) + "]";
      sizes[shape->cell(a, b)] = as_size(array_at(array_at(sz, a, "sizes"), b, where), where);
    }
  }
  std::vector<std::vector<Index>> tables(shape->ops().size());
  struct Family {
    const char* name;
    bool horizontal;
    bool face;
  };
  for (const Family f : {Family{"hd", true, true}, Family{"vd", false, true}, Family{"hs", true, false},
                         Family{"vs", false, false}}) {
    const auto& all = field(j, f.name, "bisset");
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        const int level = f.horizontal ? a : b;
        if (f.face ? level == 0 : level == n) continue;
        const std::string cell = std::string(f.name) + "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
        const auto& ops = array_at(array_at(all, a, f.name), b, cell);
        for (int i = 0; i <= level; ++i) {
          const std::string where = cell + "[" + std::to_string(i) + "]";
          std::size_t op;
          std::size_t dst;
          if (f.horizontal) {
            op = f.face ? shape->hface_op(a, b, i) : shape->hdegen_op(a, b, i);
            dst = shape->cell(f.face ? a - 1 : a + 1, b);
          } else {
            op = f.face ? shape->vface_op(a, b, i) : shape->vdegen_op(a, b, i);
            dst = shape->cell(a, f.face ? b - 1 : b + 1);
          }
          tables[op] = as_indices(array_at(ops, i, where), where, sizes[shape->cell(a, b)], sizes[dst]);
        }
      }
    }
  }
  return TruncBiSSet(Presheaf(shape, sizes, tables));
}

// ---------------------------------------------------------------- categories and groups

Json encode(const FiniteCategory& c) {
  const std::size_t m = c.morphism_count();
  Json comp = Json::array();
  for (std::size_t g = 0; g < m; ++g) {
    Json row = Json::array();
    for (std::size_t f = 0; f < m; ++f) {
      const Index v = c.comp[g * m + f];
      row.push_back(v == kNone ? Json(-1) : Json(v));
    }
    comp.push_back(row);
  }
  return {{"kind", "category"}, {"objects", c.objects}, {"src", c.src}, {"tgt", c.tgt},
          {"identity", c.identity}, {"comp", comp}};
}

FiniteCategory decode_category(const Json& j) {
  expect_kind(j, "category", "category");
  FiniteCategory c;
  c.objects = as_size(field(j, "objects", "category"), "objects");
  const auto& src = field(j, "src", "category");
  if (!src.is_array()) fail("src", "expected an array");
  const std::size_t m = src.size();
  c.src = as_indices(src, "src", m, c.objects);
  c.tgt = as_indices(field(j, "tgt", "category"), "tgt", m, c.objects);
  c.identity = as_indices(field(j, "identity", "category"), "identity", c.objects, m);
  const auto& comp = field(j, "comp", "category");
  for (std::size_t g = 0; g < m; ++g) {
    const auto& row = array_at(comp, g, "comp");
    for (std::size_t f = 0; f < m; ++f) {
      const std::string where = "comp[" + std::to_string(g) + "][" + std::to_string(f) + "]";
      const auto& v = array_at(row, f, where);
      if (v.is_number_integer() && v.get<long long>() == -1) {
        c.comp.push_back(kNone);
      } else {
        const std::size_t h = as_size(v, where);
        if (h >= m) fail(where, "morphism out of range");
        c.comp.push_back(static_cast<Index>(h));
      }
    }
  }
  c.validate();
  return c;
}

Json encode(const FiniteGroup& g) {
  return {{"kind", "group"}, {"names", g.names()}, {"mul", g.table()}, {"identity", g.id()}};
}

FiniteGroup decode_group(const Json& j) {
  expect_kind(j, "group", "group");
  const auto& names = field(j, "names", "group");
  if (!names.is_array()) fail("names", "expected an array");
  const std::size_t n = names.size();
  std::vector<std::string> nm;
  for (std::size_t i = 0; i < n; ++i) {
    if (!names[i].is_string()) fail("names[" + std::to_string(i) + "]", "expected a string");
    nm.push_back(names[i].get<std::string>());
  }
  std::vector<std::vector<Index>> mul;
  const auto& table = field(j, "mul", "group");
  for (std::size_t a = 0; a < n; ++a) {
    mul.push_back(as_indices(array_at(table, a, "mul"), "mul[" + std::to_string(a) + "]", n, n));
  }
  const std::size_t id = as_size(field(j, "identity", "group"), "identity");
  if (id >= n) fail("identity", "out of range");
  return FiniteGroup(nm, mul, static_cast<Index>(id));
}

FiniteGroup group_from_ref(const Json& j) {
  if (j.is_object()) return decode_group(j);
  if (!j.is_string()) fail("group", "expected a group name or an encoded group");
  std::string s = j.get<std::string>();
  if (s == "trivial") return FiniteGroup::trivial();
  auto number = [&](std::size_t from) -> std::size_t {
    const std::string digits = s.substr(from);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      fail("group", "unknown group \"" + s + "\"");
    }
    return std::stoul(digits);
  };
  if (s.rfind("Z/", 0) == 0) return FiniteGroup::cyclic(number(2));
  if (s.rfind("Z", 0) == 0) return FiniteGroup::cyclic(number(1));
  if (s.rfind("S", 0) == 0) return FiniteGroup::symmetric(number(1));
  if (s.rfind("D", 0) == 0) return FiniteGroup::dihedral(number(1));
  fail("group", "unknown group \"" + s + "\"");
}

Json encode(const OrbitCategory& o) {
  Json objects = Json::array();
  for (std::size_t h = 0; h < o.objects.size(); ++h) {
    objects.push_back({{"subgroup", o.objects[h].members}, {"cosets", o.orbits[h].gset.size}});
  }
  Json homs = Json::array();
  for (std::size_t h = 0; h < o.objects.size(); ++h) {
    Json row = Json::array();
    for (std::size_t k = 0; k < o.objects.size(); ++k) row.push_back(o.hom(h, k));
    homs.push_back(row);
  }
  return {{"kind", "orbit-category"}, {"group", encode(o.group)}, {"objects", objects}, {"homs", homs}};
}

// ---------------------------------------------------------------- simplicial categories

Json encode(const SCategory& c) {
  Json maps = Json::array();
  for (const auto& m : c.maps) maps.push_back(encode(m));
  return {{"kind", "scategory"}, {"trunc", c.trunc}, {"objects", c.objects}, {"maps", maps},
          {"comp", c.comp}, {"units", c.units}};
}

SCategory decode_scategory(const Json& j) {
  expect_kind(j, "scategory", "scategory");
  SCategory c;
  c.trunc = as_trunc(field(j, "trunc", "scategory"), "trunc");
  c.objects = as_size(field(j, "objects", "scategory"), "objects");
  const auto& maps = field(j, "maps", "scategory");
  for (std::size_t p = 0; p < c.objects * c.objects; ++p) {
    try {
      c.maps.push_back(decode_sset(array_at(maps, p, "maps")));
    } catch (const InvalidInput& e) {
      fail("maps[" + std::to_string(p) + "]", e.what());
    }
  }
  const auto& comp = field(j, "comp", "scategory");
  if (!comp.is_array() || comp.size() != c.objects * c.objects * c.objects) fail("comp", "wrong number of triples");
  try {
    c.comp = comp.get<std::vector<std::vector<std::vector<Index>>>>();
  } catch (const Json::exception&) {
    fail("comp", "expected nested arrays of indices");
  }
  c.units = as_indices(field(j, "units", "scategory"), "units", c.objects, kNone);
  c.validate();
  return c;
}

// ---------------------------------------------------------------- G-objects and reports

Json encode(const GObject<TruncSSet>& x) {
  Json action = Json::array();
  for (const auto& a : x.action) action.push_back(encode_map(a.components));
  return {{"kind", "gobject"}, {"carrier", encode(x.value)}, {"group", encode(x.group)}, {"action", action}};
}

GObject<TruncSSet> decode_gobject(const Json& j) {
  expect_kind(j, "gobject", "gobject");
  GObject<TruncSSet> x;
  x.group = group_from_ref(field(j, "group", "gobject"));
  x.value = decode_sset(field(j, "carrier", "gobject"));
  const auto& action = field(j, "action", "gobject");
  if (!action.is_array() || action.size() != x.group.order()) fail("action", "expected one map per group element");
  for (std::size_t g = 0; g < action.size(); ++g) {
    auto m = decode_map(action[g], x.value.presheaf(), x.value.presheaf(), "action[" + std::to_string(g) + "]");
    x.action.push_back(SSetMap{x.value, x.value, std::move(m)});
  }
  validate(x);
  return x;
}

Json encode(const HomologyResult& h) {
  Json groups = Json::array();
  for (const auto& g : h.groups) {
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(t.str());
    groups.push_back({{"degree", g.degree}, {"betti", g.betti}, {"torsion", torsion}, {"reliable", g.reliable},
                      {"group", g.to_string()}});
  }
  return {{"kind", "homology"}, {"groups", groups}};
}

Json encode(const CheckReport& r, const FiniteGroup& g) {
  auto names = [&](const Subgroup& h) {
    Json out = Json::array();
    for (Index e : h.members) out.push_back(g.name(e));
    return out;
  };
  return {{"condition", r.condition}, {"generator", r.generator}, {"H", names(r.h)}, {"K", names(r.k)},
          {"verdict", r.verdict}, {"evidence", r.evidence}};
}

}  // namespace eqcat::io
