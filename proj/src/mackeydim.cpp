#include "mackey/mackeydim.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "mackey/errors.hpp"

namespace mackey {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::size_t>& class_members(const InseparabilityPartition& partition, std::size_t h) {
  auto c = partition.class_with_representative(h);
  if (!c) throw DomainError(partition.lattice->poset().label(h) + " is not an inseparability class representative");
  return partition.classes[*c];
}

std::vector<std::size_t> minimal_members(const FinitePoset& p, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> out;
  for (auto k : members) {
    bool minimal = std::none_of(members.begin(), members.end(), [&](std::size_t j) { return p.less(j, k); });
    if (minimal) out.push_back(k);
  }
  return out;
}

std::size_t factor_count(const SubgroupLattice& l, std::size_t big, std::size_t small) {
  return count_prime_power_factors(l.quotient_invariants(big, small));
}

Json label_list(const FinitePoset& p, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(p.label(i));
  return out;
}

Json arrows_json(const TransferSystem& t, bool into_top_only) {
  const auto& p = t.lattice().poset();
  Json out = Json::array();
  for (auto [k, h] : t.arrows()) {
    if (into_top_only && h != t.lattice().top()) continue;
    out.push_back({p.label(k), p.label(h)});
  }
  return out;
}

}  // namespace

std::size_t class_dim_all_pairs(const InseparabilityPartition& partition, std::size_t h) {
  const auto& members = class_members(partition, h);
  const auto& l = *partition.lattice;
  std::size_t best = 0;
  for (auto k : members) {
    for (auto big : members) {
      if (l.poset().leq(k, big)) best = std::max(best, factor_count(l, big, k));
    }
  }
  return best;
}

std::size_t class_dim_minimal(const InseparabilityPartition& partition, std::size_t h) {
  const auto& l = *partition.lattice;
  std::size_t best = 0;
  for (auto k : minimal_members(l.poset(), class_members(partition, h))) best = std::max(best, factor_count(l, h, k));
  return best;
}

std::size_t class_dim(const InseparabilityPartition& partition, std::size_t h) {
  const std::size_t a = class_dim_all_pairs(partition, h);
  const std::size_t b = class_dim_minimal(partition, h);
  if (a != b) {
    throw CrossCheckError("class of " + partition.lattice->poset().label(h) + ": all-pairs dimension " +
                          std::to_string(a) + " differs from minimal-element dimension " + std::to_string(b));
  }
  return a;
}

namespace {

void require_disk_like(const TransferSystem& t) {
  if (auto v = validate(t)) throw DomainError("not a transfer system: " + v->describe(t.lattice()));
  std::vector<Arrow> into_top;
  const std::size_t top = t.lattice().top();
  t.sub_o().for_each([&](std::size_t k) { into_top.emplace_back(k, top); });
  const auto generated = close(t.lattice_ptr(), into_top);
  if (generated == t) return;
  const auto& p = t.lattice().poset();
  for (auto [k, h] : t.arrows()) {
    if (!generated.has(k, h)) {
      throw DomainError("transfer system is not disk-like: " + p.label(k) + " -> " + p.label(h) +
                        " is not generated by the transfers into G");
    }
  }
  throw DomainError("transfer system is not disk-like");
}

}  // namespace

MackeyDimReport gldim_mackey(const TransferSystem& t) {
  require_disk_like(t);
  const auto partition = inseparability_classes(t);
  const auto& p = t.lattice().poset();
  MackeyDimReport report{t.lattice().group(), t, {}, 0, 0};
  for (std::size_t c = 0; c < partition.classes.size(); ++c) {
    const auto h = partition.representative[c];
    ClassRow row{h, partition.classes[c].size(), minimal_members(p, partition.classes[c]), class_dim(partition, h),
                 height(class_poset(partition, h))};
    report.gldim = std::max(report.gldim, row.dim);
    report.height_bound = std::max(report.height_bound, row.height);
    report.per_class.push_back(std::move(row));
  }
  if (report.gldim > report.height_bound) {
    throw CrossCheckError("global dimension " + std::to_string(report.gldim) + " exceeds the height bound " +
                          std::to_string(report.height_bound));
  }
  return report;
}

std::size_t gldim_mackey_via_ext(const TransferSystem& t) {
  require_disk_like(t);
  const auto partition = inseparability_classes(t);
  std::size_t best = 0;
  for (auto h : partition.representative) best = std::max(best, gldim_incidence(class_poset(partition, h)));
  return best;
}

MackeyDimReport gldim_mackey_checked(const TransferSystem& t) {
  auto report = gldim_mackey(t);
  const std::size_t via_ext = gldim_mackey_via_ext(t);
  if (via_ext != report.gldim) {
    throw CrossCheckError("class-dimension formula gives " + std::to_string(report.gldim) +
                          " but the class posets give " + std::to_string(via_ext));
  }
  return report;
}

std::string MackeyDimReport::to_json() const {
  const auto& p = system.lattice().poset();
  Json j;
  j["schema"] = 1;
  j["group"] = group.spec();
  j["generators"] = arrows_json(system, true);
  j["classes"] = Json::array();
  for (const auto& row : per_class) {
    j["classes"].push_back({{"representative", p.label(row.representative)},
                            {"size", row.size},
                            {"minimal", label_list(p, row.minimal)},
                            {"dim", row.dim},
                            {"height", row.height}});
  }
  j["gldim"] = gldim;
  j["height_bound"] = height_bound;
  return j.dump(2) + "\n";
}

std::string MackeyDimReport::to_text() const {
  const auto& p = system.lattice().poset();
  std::ostringstream out;
  out << "group " << group.spec() << "\n";
  out << "class\tsize\tminimal\tdim\theight\n";
  for (const auto& row : per_class) {
    out << p.label(row.representative) << '\t' << row.size << '\t';
    for (std::size_t i = 0; i < row.minimal.size(); ++i) out << (i ? "," : "") << p.label(row.minimal[i]);
    out << '\t' << row.dim << '\t' << row.height << '\n';
  }
  out << "gldim " << gldim << "\nheight_bound " << height_bound << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Monotonicity

MonotonicityReport scan_monotonicity(const LatticePtr& lattice, std::size_t max_subgroups) {
  MonotonicityReport report{enumerate_disk_like(lattice, max_subgroups), {}, 0, {}};
  for (const auto& t : report.family.systems) report.gldim.push_back(gldim_mackey_checked(t).gldim);
  const auto& inc = report.family.inclusion;
  for (std::size_t a = 0; a < inc.size(); ++a) {
    for (std::size_t b = 0; b < inc.size(); ++b) {
      if (!inc.less(a, b)) continue;
      ++report.comparable_pairs;
      if (report.gldim[b] > report.gldim[a]) report.violations.emplace_back(a, b);
    }
  }
  return report;
}

std::string MonotonicityReport::to_json() const {
  Json j;
  j["schema"] = 1;
  j["group"] = family.systems.front().lattice().group().spec();
  j["systems"] = Json::array();
  for (std::size_t i = 0; i < family.systems.size(); ++i) {
    j["systems"].push_back({{"name", family.inclusion.label(i)},
                            {"generators", arrows_json(family.systems[i], true)},
                            {"arrows", family.systems[i].arrows().size()},
                            {"gldim", gldim[i]}});
  }
  j["covers"] = Json::array();
  for (auto [lo, hi] : family.inclusion.covers()) {
    j["covers"].push_back({family.inclusion.label(lo), family.inclusion.label(hi)});
  }
  j["comparable_pairs"] = comparable_pairs;
  j["violations"] = Json::array();
  for (auto [a, b] : violations) j["violations"].push_back({family.inclusion.label(a), family.inclusion.label(b)});
  return j.dump(2) + "\n";
}

std::string MonotonicityReport::to_text() const {
  std::ostringstream out;
  out << "system\tarrows\tgldim\n";
  for (std::size_t i = 0; i < family.systems.size(); ++i) {
    out << family.inclusion.label(i) << '\t' << family.systems[i].arrows().size() << '\t' << gldim[i] << '\n';
  }
  out << "comparable_pairs " << comparable_pairs << "\nviolations " << violations.size() << '\n';
  for (auto [a, b] : violations) out << "  " << family.inclusion.label(a) << " < " << family.inclusion.label(b) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Frattini

FrattiniReport scan_frattini(const LatticePtr& lattice) {
  const auto& p = lattice->poset();
  FrattiniReport report;
  report.lattice = lattice;
  for (std::size_t h = 0; h < lattice->size(); ++h) {
    const std::size_t phi = lattice->frattini(h);
    p.down_set(h).for_each([&](std::size_t k) {
      if (k == h || p.leq(phi, k) || open_interval_mask(p, h, k).none()) return;
      ++report.eligible_pairs;
      auto ext = ext_dims(p, h, k);
      if (!ext.empty()) report.nonvanishing.push_back({h, k, std::move(ext)});
    });
  }
  report.gldim = gldim_incidence(p);
  const std::size_t top = lattice->top();
  report.top_degree = static_cast<std::size_t>(top_ext_degree(p, top, lattice->frattini(top)).value_or(0));
  return report;
}

std::string FrattiniReport::to_json() const {
  const auto& p = lattice->poset();
  Json j;
  j["schema"] = 1;
  j["group"] = lattice->group().spec();
  j["eligible_pairs"] = eligible_pairs;
  j["nonvanishing"] = Json::array();
  for (const auto& w : nonvanishing) {
    Json ext = Json::object();
    for (auto [n, d] : w.ext) ext[std::to_string(n)] = d;
    j["nonvanishing"].push_back({{"h", p.label(w.h)}, {"k", p.label(w.k)}, {"ext", ext}});
  }
  j["gldim"] = gldim;
  j["realization"] = {{"h", p.label(lattice->top())},
                      {"frattini", p.label(lattice->frattini(lattice->top()))},
                      {"degree", top_degree}};
  j["ok"] = ok();
  return j.dump(2) + "\n";
}

std::string FrattiniReport::to_text() const {
  const auto& p = lattice->poset();
  std::ostringstream out;
  out << "group " << lattice->group().spec() << "\n";
  out << "eligible_pairs " << eligible_pairs << "\nnonvanishing " << nonvanishing.size() << "\n";
  for (const auto& w : nonvanishing) out << "  " << p.label(w.h) << " > " << p.label(w.k) << "\n";
  out << "gldim " << gldim << "\n";
  out << "realization " << p.label(lattice->top()) << " " << p.label(lattice->frattini(lattice->top())) << " "
      << top_degree << "\n";
  out << (ok() ? "ok" : "FAILED") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Conjectures

namespace {

std::size_t meet_of_lower_covers(const FinitePoset& p, std::size_t h) {
  const auto& lower = p.lower_covers(h);
  if (lower.empty()) return h;
  Bitset common = p.down_set(lower.front());
  for (auto c : lower) common &= p.down_set(c);
  std::size_t found = h;
  common.for_each([&](std::size_t m) {
    if (common.is_subset_of(p.down_set(m))) found = m;
  });
  if (found == h) throw DomainError("the lower covers of " + p.label(h) + " have no meet");
  return found;
}

}  // namespace

ConjectureReport scan_conjectures(const FinitePoset& poset) {
  if (poset.empty()) throw DomainError("conjecture scan needs a non-empty poset");
  ConjectureReport report;
  report.poset = poset;
  report.gldim = gldim_incidence(poset);
  for (std::size_t h = 0; h < poset.size(); ++h) {
    const std::size_t phi = meet_of_lower_covers(poset, h);
    const auto degree = static_cast<std::size_t>(top_ext_degree(poset, h, phi).value_or(0));
    report.frattini_rows.push_back({h, phi, degree});
    if (degree == report.gldim) report.frattini_attained = true;
  }
  std::vector<std::size_t> maximal;
  for (std::size_t h = 0; h < poset.size(); ++h) {
    if (poset.upper_covers(h).empty()) maximal.push_back(h);
  }
  report.top_attained = maximal.size() == 1 && report.frattini_rows[maximal.front()].degree == report.gldim;
  return report;
}

ConjectureReport scan_conjectures(const LatticePtr& lattice, std::size_t max_subgroups) {
  auto report = scan_conjectures(lattice->poset());
  if (lattice->size() > max_subgroups) return report;
  auto family = enumerate_disk_like(lattice, max_subgroups);
  for (const auto& t : family.systems) {
    const auto g = gldim_mackey(t).gldim;
    report.system_gldim.push_back(g);
    report.system_arrows.push_back(t.arrows().size());
    if (g == 0) ++report.zero_systems;
  }
  return report;
}

std::string ConjectureReport::to_json() const {
  Json j;
  j["schema"] = 1;
  j["poset_labels"] = poset.labels();
  j["gldim"] = gldim;
  j["frattini"] = Json::array();
  for (const auto& r : frattini_rows) {
    j["frattini"].push_back({{"h", poset.label(r.h)}, {"frattini", poset.label(r.frattini)}, {"degree", r.degree}});
  }
  j["frattini_attained"] = frattini_attained;
  j["top_attained"] = top_attained;
  if (!system_gldim.empty()) {
    j["systems"] = Json::array();
    for (std::size_t i = 0; i < system_gldim.size(); ++i) {
      j["systems"].push_back({{"arrows", system_arrows[i]}, {"gldim", system_gldim[i]}});
    }
    j["zero_systems"] = zero_systems;
  }
  return j.dump(2) + "\n";
}

std::string ConjectureReport::to_text() const {
  std::ostringstream out;
  out << "h\tfrattini\tdegree\n";
  for (const auto& r : frattini_rows) out << poset.label(r.h) << '\t' << poset.label(r.frattini) << '\t' << r.degree << '\n';
  out << "gldim " << gldim << "\n";
  out << "frattini_attained " << (frattini_attained ? "yes" : "no") << "\n";
  out << "top_attained " << (top_attained ? "yes" : "no") << "\n";
  if (!system_gldim.empty()) {
    out << "disk_like_systems " << system_gldim.size() << "\nzero_systems " << zero_systems << "\n";
  }
  return out.str();
}

}  // namespace mackey
