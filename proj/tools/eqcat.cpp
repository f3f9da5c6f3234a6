// eqcat: load objects from JSON files, run constructions and check suites.
// Exit codes: 0 pass, 1 check failure, 2 input error, 3 budget exceeded.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eqcat/error.hpp"
#include "eqcat/io.hpp"
#include "eqcat/suite.hpp"

using namespace eqcat;
using io::Json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;
constexpr int kBudget = 3;

struct Flags {
  std::optional<int> trunc;
  std::optional<std::size_t> budget;
  std::optional<unsigned> seed;
  std::string family;
  bool json = false;
  std::string output;
};

int trunc_or(const Flags& f, int fallback) { return f.trunc ? *f.trunc : fallback; }

SearchOptions search(const Flags& f) {
  SearchOptions o;
  if (f.budget) o.budget = *f.budget;
  return o;
}

void emit(const Flags& f, const Json& j) {
  if (f.output.empty()) {
    std::cout << io::canonical(j);
  } else {
    io::write_file(f.output, j);
  }
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput(std::string(what) + ": expected an integer, got '" + s + "'");
  }
}

TruncSSet load_sset(const std::string& path) {
  const auto j = io::read_file(path);
  if (io::kind_of(j) == "category") return nerve(io::decode_category(j), 3);
  return io::decode_sset(j);
}

// --- build ---

Json build(const std::vector<std::string>& args, const Flags& f) {
  if (args.empty()) throw InvalidInput("build: missing construction name");
  const auto& name = args[0];
  auto arg = [&](std::size_t i) {
    if (i >= args.size()) throw InvalidInput("build " + name + ": missing argument " + std::to_string(i));
    return to_int(args[i], ("build " + name).c_str());
  };
  auto arity = [&](std::size_t n) {
    if (args.size() != n + 1) {
      throw InvalidInput("build " + name + ": expected " + std::to_string(n) + " argument(s)");
    }
  };
  if (name == "simplex") {
    arity(1);
    return io::encode(standard_simplex(arg(1), trunc_or(f, std::max(arg(1), 1))));
  }
  if (name == "boundary") {
    arity(1);
    return io::encode(boundary(arg(1), trunc_or(f, std::max(arg(1), 1))));
  }
  if (name == "horn") {
    arity(2);
    return io::encode(horn(arg(1), arg(2), trunc_or(f, arg(1))));
  }
  if (name == "point") {
    arity(0);
    return io::encode(TruncSSet::point(trunc_or(f, 2)));
  }
  if (name == "discrete") {
    arity(1);
    return io::encode(discrete(static_cast<std::size_t>(arg(1)), trunc_or(f, 2)));
  }
  if (name == "circle") {
    arity(0);
    const int t = trunc_or(f, 2);
    const auto ends = boundary_inclusion(1, t);
    const auto pt = TruncSSet::point(t);
    const SSetMap collapse{ends.source, pt, hom_set(ends.source, pt).front()};
    return io::encode(pushout(ends, collapse).object);
  }
  if (name == "E") {
    arity(0);
    return io::encode(walking_iso_nerve(trunc_or(f, 3)));
  }
  if (name == "Et") {
    arity(0);
    return io::encode(transpose(walking_iso_nerve(trunc_or(f, 2))));
  }
  if (name == "transpose") {
    arity(1);
    return io::encode(transpose(standard_simplex(arg(1), trunc_or(f, std::max(arg(1), 2)))));
  }
  if (name == "P" || name == "Q") {
    arity(2);
    const int m = arg(1), n = arg(2);
    const int t = trunc_or(f, std::max({m, n, 2}));
    return io::encode(name == "P" ? build_P(m, n, t).space() : build_Q(m, n, t).space());
  }
  if (name == "ordinal") {
    arity(1);
    return io::encode(FiniteCategory::ordinal(arg(1)));
  }
  if (name == "walking-iso") {
    arity(0);
    return io::encode(FiniteCategory::walking_isomorphism());
  }
  if (name == "group") {
    arity(1);
    return io::encode(io::group_from_ref(Json(args[1])));
  }
  if (name == "orbit-category") {
    arity(1);
    return io::encode(orbit_category(io::group_from_ref(Json(args[1]))));
  }
  if (name == "resolution") {
    arity(1);
    return io::encode(resolution(arg(1), trunc_or(f, 2)));
  }
  if (name == "UK") {
    arity(1);
    return io::encode(UK(load_sset(args[1])));
  }
  if (name == "tensor") {
    // tensor <group> <file>: G/e (x) A as a G-object
    arity(2);
    const auto g = io::group_from_ref(Json(args[1]));
    return io::encode(tensor_orbit(g, trivial_subgroup(g), load_sset(args[2])));
  }
  throw InvalidInput("build: unknown construction '" + name + "'");
}

// --- reports ---

int print_homology(const HomologyResult& h, const Flags& f) {
  if (f.json) {
    emit(f, io::encode(h));
    return kPass;
  }
  for (const auto& g : h.groups) {
    std::cout << "H_" << g.degree << " = " << g.to_string();
    if (!g.reliable) std::cout << "  (unreliable: truncation degree)";
    std::cout << "\n";
  }
  return kPass;
}

int quasicat(const std::string& path, int max_dim, const Flags& f) {
  const auto x = load_sset(path);
  const auto r = is_quasicategory(x, std::min(max_dim, x.trunc()), search(f));
  Json fails = Json::array();
  for (const auto& h : r.failures) {
    Json comps = Json::array();
    for (const auto& c : h.horn_map) comps.push_back(c);
    fails.push_back({{"n", h.n}, {"k", h.k}, {"horn_map", comps}});
  }
  if (f.json) {
    emit(f, {{"kind", "quasicat-report"}, {"max_dim", r.max_dim}, {"horns_checked", r.horns_checked},
             {"passes", r.passes()}, {"failures", fails}});
  } else {
    std::cout << (r.passes() ? "PASS" : "FAIL") << " inner horns up to dimension " << r.max_dim << ": "
              << r.horns_checked << " horn maps checked\n";
    for (const auto& h : r.failures) {
      std::cout << "  unfillable horn V[" << h.n << "," << h.k << "]";
      if (!h.horn_map.empty() && !h.horn_map[0].empty()) {
        std::cout << " on vertices";
        for (auto v : h.horn_map[0]) std::cout << " " << v;
      }
      std::cout << "\n";
    }
  }
  return r.passes() ? kPass : kFail;
}

int segal(const std::string& path, const Flags& f) {
  const auto w = io::decode_bisset(io::read_file(path));
  bool ok = true;
  Json rows = Json::array();
  for (int k = 2; k <= w.trunc(); ++k) {
    const auto r = segal_check(w, k);
    ok = ok && r.isomorphism;
    rows.push_back({{"k", k}, {"isomorphism", r.isomorphism}, {"pi0_bijective", r.pi0_bijective},
                    {"homology_agrees", r.homology_agrees}, {"notes", r.notes}});
    if (!f.json) {
      std::cout << (r.isomorphism ? "PASS" : "FAIL") << " Segal map k=" << k << ": "
                << (r.isomorphism ? "isomorphism" : "not an isomorphism") << ", pi_0 "
                << (r.pi0_bijective ? "bijective" : "not bijective") << ", homology "
                << (r.homology_agrees ? "agrees" : "differs") << "\n";
    }
  }
  if (f.json) emit(f, {{"kind", "segal-report"}, {"passes", ok}, {"levels", rows}});
  return ok ? kPass : kFail;
}

int complete(const std::string& path, const Flags& f) {
  const auto w = io::decode_bisset(io::read_file(path));
  const auto e = completeness_evidence(w, search(f));
  const bool ok = e.pi0_bijective && e.homology_agrees;
  if (f.json) {
    emit(f, {{"kind", "completeness-evidence"}, {"label", e.label}, {"pi0_bijective", e.pi0_bijective},
             {"homology_agrees", e.homology_agrees}, {"isomorphism", e.isomorphism},
             {"mapping_space", io::encode(e.mapping_space)}});
  } else {
    std::cout << e.label << (ok ? " positive" : " negative") << ": W_0 -> Map(E^t, W) pi_0 "
              << (e.pi0_bijective ? "bijective" : "not bijective") << ", homology "
              << (e.homology_agrees ? "agrees" : "differs") << ", "
              << (e.isomorphism ? "isomorphism" : "not an isomorphism") << "\n";
  }
  return ok ? kPass : kFail;
}

int nerve_cmd(const std::string& path, const Flags& f) {
  const auto j = io::read_file(path);
  const auto kind = io::kind_of(j);
  if (kind == "category") {
    emit(f, io::encode(nerve(io::decode_category(j), trunc_or(f, 3))));
  } else if (kind == "scategory") {
    emit(f, io::encode(simplicial_nerve(io::decode_scategory(j))));
  } else {
    throw InvalidInput("nerve: expected a category or scategory, got '" + kind + "'");
  }
  return kPass;
}

int orbit_cat(const std::string& ref, const Flags& f) {
  Json gj;
  try {
    gj = io::read_file(ref);
  } catch (const InvalidInput&) {
    gj = Json(ref);
  }
  const auto o = orbit_category(io::group_from_ref(gj));
  if (f.json || !f.output.empty()) {
    emit(f, io::encode(o));
    return kPass;
  }
  const auto n = o.objects.size();
  std::cout << n << " objects\n";
  for (std::size_t h = 0; h < n; ++h) {
    std::cout << "G/H" << h << "  H = {";
    for (std::size_t i = 0; i < o.objects[h].members.size(); ++i) {
      std::cout << (i ? ", " : "") << o.group.name(o.objects[h].members[i]);
    }
    std::cout << "}  |G/H| = " << o.orbits[h].gset.size << "\n";
  }
  std::cout << "|hom(G/Hi, G/Hj)|:\n";
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) std::cout << (k ? " " : "") << o.hom(h, k).size();
    std::cout << "\n";
  }
  return kPass;
}

int check(const std::string& path, const Flags& f) {
  auto j = io::read_file(path);
  if (f.trunc) j["trunc"] = *f.trunc;
  if (f.budget) j["budget"] = *f.budget;
  if (f.seed) j["seed"] = *f.seed;
  if (!f.family.empty()) j["family"] = f.family == "all" ? Json("all") : io::parse(f.family);
  const auto cfg = parse_suite_config(j);
  const auto r = run_check_suite(cfg);
  if (f.json) {
    emit(f, encode(r, cfg));
  } else {
    for (const auto& c : r.cells) {
      std::cout << (c.report.verdict ? "PASS " : "FAIL ") << c.key << "  " << c.report.evidence << "\n";
    }
    std::cout << r.cells.size() << " cells, " << (r.passes() ? "all passed" : "failures present") << "\n";
  }
  if (const auto* bad = r.first_failure()) {
    std::cerr << "first failing cell: " << bad->key << "\n";
    return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite models for equivariant homotopy theory of categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--trunc", flags.trunc, "truncation level");
  app.add_option("--budget", flags.budget, "enumeration or attach budget");
  app.add_option("--seed", flags.seed, "random seed for check suites");
  app.add_option("--family", flags.family, "subgroup family: all, or a JSON list of element lists");
  app.add_flag("--json", flags.json, "emit JSON");
  app.add_option("-o,--output", flags.output, "write JSON to a file");

  std::vector<std::string> build_args;
  auto* b = app.add_subcommand("build", "write a construction as JSON");
  b->add_option("args", build_args, "name and arguments")->required();

  std::string file;
  int up_to = 3;
  auto* hom = app.add_subcommand("homology", "integral homology of a simplicial set");
  hom->add_option("file", file)->required();
  hom->add_option("--up-to", up_to, "highest degree");

  int max_dim = 4;
  auto* qc = app.add_subcommand("quasicat", "inner horn filling");
  qc->add_option("file", file)->required();
  qc->add_option("--max-dim", max_dim);

  auto* sg = app.add_subcommand("segal", "Segal maps of a bisimplicial set");
  sg->add_option("file", file)->required();
  auto* cp = app.add_subcommand("complete", "completeness evidence");
  cp->add_option("file", file)->required();
  auto* rd = app.add_subcommand("reduce", "reduction to a Segal precategory");
  rd->add_option("file", file)->required();
  auto* nv = app.add_subcommand("nerve", "nerve of a category or simplicial category");
  nv->add_option("file", file)->required();
  auto* cn = app.add_subcommand("coherent-nerve", "homotopy coherent nerve of a simplicial category");
  cn->add_option("file", file)->required();
  cn->add_option("--up-to", up_to);
  std::string group_ref;
  auto* oc = app.add_subcommand("orbit-cat", "orbit category of a finite group");
  oc->add_option("group", group_ref, "Z/n, Sn, Dn, trivial, or a group file")->required();
  auto* ck = app.add_subcommand("check", "run a check suite");
  ck->add_option("config", file)->required();
  auto* dg = app.add_subcommand("diag", "diagonal of a bisimplicial set");
  dg->add_option("file", file)->required();
  auto* tt = app.add_subcommand("total", "total simplicial set of a bisimplicial set");
  tt->add_option("file", file)->required();
  auto* r0 = app.add_subcommand("row0", "row 0 of a bisimplicial set");
  r0->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (b->parsed()) {
      emit(flags, build(build_args, flags));
      return kPass;
    }
    if (hom->parsed()) {
      const auto x = load_sset(file);
      return print_homology(homology(x, std::min(up_to, x.trunc())), flags);
    }
    if (qc->parsed()) return quasicat(file, max_dim, flags);
    if (sg->parsed()) return segal(file, flags);
    if (cp->parsed()) return complete(file, flags);
    if (rd->parsed()) {
      emit(flags, io::encode(reduce(io::decode_bisset(io::read_file(file))).object.space()));
      return kPass;
    }
    if (nv->parsed()) return nerve_cmd(file, flags);
    if (cn->parsed()) {
      emit(flags, io::encode(coherent_nerve(io::decode_scategory(io::read_file(file)), up_to, search(flags))));
      return kPass;
    }
    if (oc->parsed()) return orbit_cat(group_ref, flags);
    if (ck->parsed()) return check(file, flags);
    if (dg->parsed() || tt->parsed() || r0->parsed()) {
      const auto w = io::decode_bisset(io::read_file(file));
      emit(flags, io::encode(dg->parsed() ? diagonal(w) : tt->parsed() ? total(w) : w.row(0)));
      return kPass;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SegalFailure& e) {
    std::cerr << "Segal condition fails: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
