#include "doctest.h"
#include "json.hpp"
#include "mackey/errors.hpp"
#include "mackey/mackeydim.hpp"
#include "support/group_corpus.hpp"

using namespace mackey;

namespace {

LatticePtr lattice_of(const std::string& spec) { return std::make_shared<const SubgroupLattice>(parse_group(spec)); }

std::size_t at(const LatticePtr& l, const std::string& label) {
  auto i = l->resolve_label(label);
  REQUIRE(i.has_value());
  return *i;
}

TransferSystem into_top(const LatticePtr& l, const std::vector<std::string>& sources) {
  std::vector<Arrow> gens;
  for (const auto& s : sources) gens.emplace_back(at(l, s), l->top());
  return close(l, gens);
}

}  // namespace

TEST_CASE("class dimensions") {
  auto c12 = lattice_of("2^2*3");
  auto part = inseparability_classes(into_top(c12, {"e"}));
  CHECK(class_dim(part, c12->top()) == 2);
  CHECK(class_dim_minimal(part, c12->top()) == 2);
  CHECK(class_dim_all_pairs(part, c12->top()) == 2);
  CHECK(class_dim(part, c12->bottom()) == 0);
  CHECK_THROWS_AS(class_dim(part, at(c12, "C6")), DomainError);

  auto complete = inseparability_classes(TransferSystem::complete(c12));
  for (auto h : complete.representative) CHECK(class_dim(complete, h) == 0);
}

TEST_CASE("global dimension of the C12 and C72 disk-like examples") {
  auto c12 = lattice_of("2^2*3");
  auto r12 = gldim_mackey_checked(into_top(c12, {"e"}));
  CHECK(r12.gldim == 2);
  REQUIRE(r12.per_class.size() == 2);
  const auto& top_row = r12.per_class.back();
  CHECK(top_row.representative == c12->top());
  CHECK(top_row.size == 5);
  CHECK(top_row.minimal == std::vector<std::size_t>{at(c12, "C2"), at(c12, "C3")});

  auto c72 = lattice_of("2^3*3^2");
  CHECK(gldim_mackey_checked(into_top(c72, {"C8"})).gldim == 2);
  CHECK(gldim_mackey_checked(into_top(c72, {"C8", "C6"})).gldim == 2);
  auto r = gldim_mackey_checked(into_top(c72, {"C8", "C6", "C12"}));
  CHECK(r.gldim == 1);
  CHECK(gldim_mackey_via_ext(into_top(c72, {"C8", "C6", "C12"})) == 1);

  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["group"] == "2^3*3^2");
  CHECK(j["gldim"] == 1);
  CHECK(j["height_bound"] == r.height_bound);
  CHECK(j["classes"].size() == r.per_class.size());
}

TEST_CASE("extreme systems") {
  for (const auto& g : abelian_groups_up_to(100)) {
    auto l = std::make_shared<const SubgroupLattice>(g);
    CHECK(gldim_mackey_checked(TransferSystem::complete(l)).gldim == 0);
    CHECK(gldim_mackey_checked(TransferSystem::trivial(l)).gldim == g.factors().size());
  }
}

TEST_CASE("rejects systems that are not disk-like") {
  auto c4 = lattice_of("C4");
  auto t = close(c4, {{at(c4, "e"), at(c4, "C2")}});
  try {
    (void)gldim_mackey(t);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("C1 -> C2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)gldim_mackey_via_ext(t), DomainError);

  auto raw = TransferSystem::trivial(c4).relation();
  raw[c4->top()].set(c4->bottom());
  CHECK_THROWS_AS((void)gldim_mackey(TransferSystem(c4, raw)), DomainError);
}

TEST_CASE("both routes, both class formulas and the height bound on every small system") {
  std::size_t systems = 0;
  for (const auto& g : abelian_groups_up_to(100)) {
    auto l = std::make_shared<const SubgroupLattice>(g);
    if (l->size() > 12) continue;
    for (const auto& t : enumerate_disk_like(l).systems) {
      ++systems;
      auto part = inseparability_classes(t);
      for (auto h : part.representative) CHECK(class_dim_all_pairs(part, h) == class_dim_minimal(part, h));
      auto r = gldim_mackey(t);
      CHECK(r.gldim == gldim_mackey_via_ext(t));
      CHECK(r.gldim <= r.height_bound);
      CHECK((r.gldim == 0) == t.is_complete());
    }
  }
  CHECK(systems > 100);
}

TEST_CASE("monotonicity scans") {
  auto cp = scan_monotonicity(lattice_of("C5"));
  CHECK(cp.family.systems.size() == 2);
  CHECK(cp.comparable_pairs == 1);
  CHECK(cp.violations.empty());

  auto c6 = scan_monotonicity(lattice_of("C6"));
  CHECK(c6.violations.empty());
  CHECK(*std::min_element(c6.gldim.begin(), c6.gldim.end()) == 0);
  CHECK(*std::max_element(c6.gldim.begin(), c6.gldim.end()) == 2);

  auto c9 = scan_monotonicity(lattice_of("C9"));
  CHECK(*std::max_element(c9.gldim.begin(), c9.gldim.end()) == 1);
  auto j = nlohmann::json::parse(c9.to_json());
  CHECK(j["violations"].empty());
  CHECK(j["systems"].size() == 4);
}

TEST_CASE("Frattini scans") {
  auto v4 = lattice_of("C2xC2");
  auto r = scan_frattini(v4);
  CHECK(r.ok());
  CHECK(r.top_degree == 2);
  CHECK(v4->frattini(v4->top()) == v4->bottom());

  auto c4 = lattice_of("C4");
  auto r4 = scan_frattini(c4);
  CHECK(r4.ok());
  CHECK(r4.top_degree == 1);
  CHECK(c4->frattini(c4->top()) == at(c4, "C2"));

  auto c60 = lattice_of("C60");
  auto r60 = scan_frattini(c60);
  CHECK(r60.ok());
  CHECK(r60.top_degree == 3);
  CHECK(c60->frattini(c60->top()) == at(c60, "C2"));
  CHECK(r60.eligible_pairs > 0);

  auto j = nlohmann::json::parse(r60.to_json());
  CHECK(j["realization"]["frattini"] == "C2");
  CHECK(j["ok"] == true);
}

TEST_CASE("conjecture witness tables") {
  auto f5 = read_poset_file("fixtures/f5_subgroups.poset");
  auto r = scan_conjectures(f5);
  CHECK(r.gldim == 2);
  CHECK(r.frattini_attained);
  CHECK_FALSE(r.top_attained);
  CHECK(r.frattini_rows[*f5.index_of("D5")].degree == 2);
  CHECK(r.frattini_rows[*f5.index_of("F5")].frattini == *f5.index_of("e"));

  auto c12 = lattice_of("C12");
  auto rc = scan_conjectures(c12);
  CHECK(rc.top_attained);
  CHECK(rc.zero_systems == 1);
  for (std::size_t h = 0; h < c12->size(); ++h) CHECK(rc.frattini_rows[h].frattini == c12->frattini(h));

  CHECK_THROWS_AS(scan_conjectures(FinitePoset::from_covers({"a", "b", "c", "d"}, {{0, 2}, {1, 2}, {0, 3}, {1, 3}})),
                  DomainError);
}
