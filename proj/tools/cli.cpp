#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "mackey/errors.hpp"
#include "mackey/groups.hpp"
#include "mackey/izext.hpp"
#include "mackey/mackeydim.hpp"
#include "mackey/oracle.hpp"
#include "mackey/posets.hpp"
#include "mackey/transfer.hpp"

namespace mackey::cli {
namespace {

using nlohmann::json;

struct Output {
  std::string format = "text";
  std::string path;  // empty means the run's out stream
};

void emit(const Output& o, std::ostream& out, const std::string& text) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw ParseError("cannot write output file '" + o.path + "'");
  f << text;
}

std::string join_labels(const FinitePoset& p, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return "-";
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : ",") + p.label(i);
  return s;
}

std::string join_integers(const std::vector<Integer>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x.to_string();
  return s;
}

LatticePtr lattice_of(const std::string& spec) { return std::make_shared<const SubgroupLattice>(parse_group(spec)); }

// ---------------------------------------------------------------------------
// lattice

std::string render_lattice(const SubgroupLattice& l, const std::string& format) {
  const auto& p = l.poset();
  if (format == "dot") return to_dot(p, "subgroups");
  if (format == "poset") return write_poset_text(p);
  if (format == "json") {
    json rows = json::array();
    for (std::size_t h = 0; h < l.size(); ++h) {
      json inv = json::array();
      for (const auto& x : l.invariants(h)) inv.push_back(x.to_string());
      json lower = json::array();
      for (auto k : p.lower_covers(h)) lower.push_back(p.label(k));
      rows.push_back({{"index", h},
                      {"label", p.label(h)},
                      {"order", l.subgroup(h).order()},
                      {"invariants", inv},
                      {"frattini", p.label(l.frattini(h))},
                      {"lower_covers", lower}});
    }
    json j{{"schema", 1}, {"group", l.group().spec()}, {"order", l.group().order()}, {"subgroups", rows}};
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "# subgroups of " << l.group().spec() << ": " << l.size() << "\n";
  s << "index\tlabel\torder\tinvariants\tfrattini\tlower_covers\n";
  for (std::size_t h = 0; h < l.size(); ++h) {
    s << h << '\t' << p.label(h) << '\t' << l.subgroup(h).order() << '\t' << join_integers(l.invariants(h)) << '\t'
      << p.label(l.frattini(h)) << '\t' << join_labels(p, p.lower_covers(h)) << '\n';
  }
  return s.str();
}

// ---------------------------------------------------------------------------
// gldim-ia

struct IaInput {
  std::string source;  // group spec or poset path, as given
  FinitePoset poset;
};

IaInput load_ia_input(const std::string& group, const std::string& poset_path) {
  if (!group.empty()) return {group, SubgroupLattice(parse_group(group)).poset()};
  return {poset_path, read_poset_file(poset_path)};
}

std::string render_gldim_ia(const IaInput& in, bool table, const std::string& format, ExtMethod method) {
  const auto& p = in.poset;
  const auto g = gldim_incidence_detailed(p);
  std::optional<ExtTable> t;
  if (table || format == "tsv" || method == ExtMethod::literal) {
    t = ext_table(p, method);
    if (static_cast<std::size_t>(std::max(t->max_degree(), 0)) != g.gldim) {
      throw CrossCheckError("full Ext table has top degree " + std::to_string(t->max_degree()) +
                            " but the degree search found " + std::to_string(g.gldim));
    }
  }
  if (format == "tsv") return t->to_tsv();
  if (format == "json") {
    json j{{"schema", 1},
           {"source", in.source},
           {"elements", p.size()},
           {"gldim", g.gldim},
           {"witness", {{"x", p.label(g.x)}, {"y", p.label(g.y)}}}};
    if (table) j["table"] = json::parse(t->to_json());
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "gldim " << g.gldim << "\n";
  if (g.gldim > 0) s << "attained at Ext^" << g.gldim << "(S_" << p.label(g.x) << ", S_" << p.label(g.y) << ")\n";
  if (table) s << t->to_tsv();
  return s.str();
}

// ---------------------------------------------------------------------------
// oracle-check

struct OracleConfig {
  std::size_t max_elements = 7;
  std::size_t samples = 500;
  unsigned seed = 1;
  std::uint64_t max_order = 60;
  bool inject_fault = false;
};

using EntryKey = std::tuple<std::size_t, std::size_t, int>;

std::map<EntryKey, std::size_t> as_map(const std::vector<ExtEntry>& entries) {
  std::map<EntryKey, std::size_t> m;
  for (const auto& e : entries) m[{e.x, e.y, e.n}] = e.dim;
  return m;
}

struct Diff {
  std::string case_name;
  std::string x;
  std::string y;
  int n;
  std::size_t izext;
  std::size_t oracle;
};

void compare(const std::string& name, const FinitePoset& p, bool& fault_pending, std::vector<Diff>& diffs) {
  auto iz = as_map(ext_table(p).entries());
  auto orc = as_map(oracle_ext_table(p).entries());
  if (fault_pending && !iz.empty()) {
    auto& d = iz.rbegin()->second;
    d += 1;
    fault_pending = false;
  }
  std::map<EntryKey, std::pair<std::size_t, std::size_t>> both;
  for (const auto& [k, v] : iz) both[k].first = v;
  for (const auto& [k, v] : orc) both[k].second = v;
  for (const auto& [k, v] : both) {
    if (v.first != v.second) {
      diffs.push_back({name, p.label(std::get<0>(k)), p.label(std::get<1>(k)), std::get<2>(k), v.first, v.second});
    }
  }
}

struct OracleResult {
  std::size_t posets = 0;
  std::size_t lattices = 0;
  std::vector<Diff> diffs;
};

OracleResult oracle_check(const OracleConfig& c) {
  if (c.max_elements == 0) throw DomainError("--max-elements must be positive");
  OracleResult r;
  bool fault_pending = c.inject_fault;
  std::mt19937 rng(c.seed);
  for (std::size_t i = 0; i < c.samples; ++i) {
    const std::size_t n = 1 + rng() % c.max_elements;
    const double density = 0.2 + 0.1 * static_cast<double>(rng() % 6);
    compare("random#" + std::to_string(i), random_poset(rng, n, density), fault_pending, r.diffs);
    ++r.posets;
  }
  for (const auto& g : abelian_groups_up_to(c.max_order)) {
    compare(g.spec(), SubgroupLattice(g).poset(), fault_pending, r.diffs);
    ++r.lattices;
  }
  return r;
}

std::string render_oracle(const OracleConfig& c, const OracleResult& r, const std::string& format) {
  if (format == "json") {
    json diffs = json::array();
    for (const auto& d : r.diffs) {
      diffs.push_back({{"case", d.case_name}, {"x", d.x}, {"y", d.y}, {"n", d.n}, {"izext", d.izext}, {"oracle", d.oracle}});
    }
    json j{{"schema", 1},
           {"config",
            {{"max_elements", c.max_elements},
             {"samples", c.samples},
             {"seed", c.seed},
             {"max_order", c.max_order},
             {"inject_fault", c.inject_fault}}},
           {"random_posets", r.posets},
           {"lattices", r.lattices},
           {"diffs", diffs}};
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  for (const auto& d : r.diffs) {
    s << "diff " << d.case_name << " Ext^" << d.n << "(S_" << d.x << ", S_" << d.y << "): izext " << d.izext
      << ", oracle " << d.oracle << "\n";
  }
  s << "random posets " << r.posets << ", lattices " << r.lattices << ", diffs " << r.diffs.size() << "\n";
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global dimensions of incidence algebras and incomplete Mackey functor categories", "mackeydim"};
  app.require_subcommand(1);
  const std::vector<std::string> text_json{"text", "json"};

  Output o;
  auto add_output = [&](CLI::App* sub, const std::vector<std::string>& formats) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", o.path, "Write the report to this file instead of stdout");
  };

  std::string group;
  std::string poset_path;
  std::string gens_path;
  std::string scan_kind;
  std::size_t max_subgroups = 16;
  bool table = false;
  std::string method = "core";
  OracleConfig oc;

  auto* lat = app.add_subcommand("lattice", "List the subgroup lattice of a finite abelian group");
  lat->add_option("group", group, "Group, e.g. C12, C2xC2 or 2^2*3")->required();
  add_output(lat, {"text", "json", "dot", "poset"});

  auto* ia = app.add_subcommand("gldim-ia", "Global dimension of the rational incidence algebra of a poset");
  auto* ia_group = ia->add_option("--group", group, "Use the subgroup lattice of this group");
  auto* ia_poset = ia->add_option("--poset", poset_path, "Read the poset from this file");
  ia_group->excludes(ia_poset);
  ia->add_flag("--table", table, "Include the full table of nonzero Ext dimensions");
  ia->add_option("--method", method, "Complex used for interval cohomology")->check(CLI::IsMember({"core", "literal"}));
  add_output(ia, {"text", "json", "tsv"});

  auto* mk = app.add_subcommand("gldim-mackey", "Global dimension for a disk-like transfer system");
  mk->add_option("--group", group, "Ambient group")->required();
  mk->add_option("--gens", gens_path, "Generator file with lines 'gen: K -> G'")->required();
  add_output(mk, text_json);

  auto* sc = app.add_subcommand("scan", "Property scans over a lattice or poset");
  auto* sc_group = sc->add_option("--group", group, "Ambient group");
  auto* sc_poset = sc->add_option("--poset", poset_path, "Lattice-shaped poset file (conjectures only)");
  sc_group->excludes(sc_poset);
  sc->add_option("kind", scan_kind, "monotonicity, frattini or conjectures")
      ->required()
      ->check(CLI::IsMember({"monotonicity", "frattini", "conjectures"}));
  sc->add_option("--max-subgroups", max_subgroups, "Largest lattice for which disk-like systems are enumerated")
      ->check(CLI::PositiveNumber);
  add_output(sc, text_json);

  auto* orc = app.add_subcommand("oracle-check", "Compare interval cohomology with minimal resolutions");
  orc->add_option("--max-elements", oc.max_elements, "Largest random poset")->check(CLI::PositiveNumber);
  orc->add_option("--samples", oc.samples, "Number of random posets");
  orc->add_option("--seed", oc.seed, "Random seed");
  orc->add_option("--max-order", oc.max_order, "Include subgroup lattices of abelian groups up to this order");
  orc->add_flag("--inject-fault", oc.inject_fault, "Perturb one cohomology dimension to exercise the diff path");
  add_output(orc, text_json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (lat->parsed()) {
      emit(o, out, render_lattice(SubgroupLattice(parse_group(group)), o.format));
      return exit_ok;
    }
    if (ia->parsed()) {
      if (group.empty() == poset_path.empty()) {
        err << "error: gldim-ia needs exactly one of --group and --poset\n";
        return exit_usage;
      }
      auto m = method == "literal" ? ExtMethod::literal : ExtMethod::core;
      emit(o, out, render_gldim_ia(load_ia_input(group, poset_path), table, o.format, m));
      return exit_ok;
    }
    if (mk->parsed()) {
      auto l = lattice_of(group);
      auto t = close(l, read_generator_file(gens_path, *l));
      auto r = gldim_mackey_checked(t);
      emit(o, out, o.format == "json" ? r.to_json() : r.to_text());
      return exit_ok;
    }
    if (sc->parsed()) {
      if (group.empty() == poset_path.empty()) {
        err << "error: scan needs exactly one of --group and --poset\n";
        return exit_usage;
      }
      if (!poset_path.empty() && scan_kind != "conjectures") {
        err << "error: scan " << scan_kind << " needs --group\n";
        return exit_usage;
      }
      if (scan_kind == "conjectures") {
        auto r = poset_path.empty() ? scan_conjectures(lattice_of(group), max_subgroups)
                                    : scan_conjectures(read_poset_file(poset_path));
        emit(o, out, o.format == "json" ? r.to_json() : r.to_text());
        return exit_ok;
      }
      if (scan_kind == "monotonicity") {
        auto r = scan_monotonicity(lattice_of(group), max_subgroups);
        emit(o, out, o.format == "json" ? r.to_json() : r.to_text());
        return r.violations.empty() ? exit_ok : exit_discrepancy;
      }
      auto r = scan_frattini(lattice_of(group));
      emit(o, out, o.format == "json" ? r.to_json() : r.to_text());
      return r.ok() ? exit_ok : exit_discrepancy;
    }
    if (orc->parsed()) {
      auto r = oracle_check(oc);
      emit(o, out, render_oracle(oc, r, o.format));
      return r.diffs.empty() ? exit_ok : exit_discrepancy;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const CrossCheckError& e) {
    err << "error: " << e.what() << "\n";
    return exit_discrepancy;
  }
  return exit_usage;
}

}  // namespace mackey::cli
