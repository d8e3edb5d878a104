#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mackey/errors.hpp"
#include "mackey/groups.hpp"
#include "support/element_engine.hpp"
#include "support/group_corpus.hpp"

using namespace mackey;
using testsupport::Element;
using testsupport::ElementEngine;
using testsupport::ElementSet;
using testsupport::elements_of;
using testsupport::moduli64;

TEST_CASE("parse_group") {
  CHECK(parse_group("C1").order() == 1);
  CHECK(parse_group("C1").factors().empty());
  auto c12 = parse_group("C12");
  CHECK(c12.factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(c12.order() == 12);
  CHECK(parse_group("C2xC2").factors() == std::vector<PrimePower>{{2, 1}, {2, 1}});
  CHECK(parse_group("2^2*3") == c12);
  CHECK(parse_group("c4 X c3") == c12);
  CHECK(parse_group("3*2^1*2^1").factors() == std::vector<PrimePower>{{2, 1}, {2, 1}, {3, 1}});
  CHECK_THROWS_AS(parse_group(""), ParseError);
  CHECK_THROWS_AS(parse_group("C"), ParseError);
  CHECK_THROWS_AS(parse_group("C2x"), ParseError);
  CHECK_THROWS_AS(parse_group("2^"), ParseError);
  CHECK_THROWS_AS(parse_group("Q8"), ParseError);
  CHECK_THROWS_AS(parse_group("C0"), DomainError);
  CHECK_THROWS_AS(parse_group("C2xC1"), DomainError);
  CHECK_THROWS_AS(parse_group("4^2"), DomainError);
  CHECK_THROWS_AS(parse_group("1^3"), DomainError);
  CHECK(parse_group("C6xC4").invariant_factors() == std::vector<std::uint64_t>{2, 12});
}

TEST_CASE("lattice sizes") {
  SubgroupLattice c6(parse_group("C6"));
  CHECK(c6.size() == 4);
  CHECK(c6.poset().covers().size() == 4);
  CHECK(c6.poset().labels() == std::vector<std::string>{"C1", "C2", "C3", "C6"});
  CHECK(SubgroupLattice(parse_group("C1")).size() == 1);
  CHECK(SubgroupLattice(parse_group("C2xC2")).size() == 5);
  CHECK(SubgroupLattice(parse_group("2^1*2^1*2^1")).size() == 16);
  CHECK(SubgroupLattice(parse_group("C4xC2")).size() == 8);
  CHECK_THROWS_AS(SubgroupLattice(parse_group("C1000"), 999), BudgetExceeded);
}

TEST_CASE("subgroup count of C_n equals the divisor count") {
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    AbelianGroup g(factorize(n));
    std::size_t divisors = 0;
    for (std::uint64_t d = 1; d <= n; ++d) divisors += (n % d == 0) ? 1 : 0;
    CHECK(SubgroupLattice(g).size() == divisors);
  }
}

TEST_CASE("lattice agrees with the element-set engine") {
  for (const auto& g : abelian_groups_up_to(64)) {
    ElementEngine engine(moduli64(g));
    SubgroupLattice lattice(g);
    auto subs = engine.all_subgroups();
    REQUIRE(subs.size() == lattice.size());
    std::vector<ElementSet> sets;
    for (const auto& s : lattice.subgroups()) {
      sets.push_back(elements_of(engine, s));
      CHECK(sets.back().size() == s.order());
      CHECK(subs.count(sets.back()) == 1);
    }
    for (std::size_t a = 0; a < lattice.size(); ++a) {
      for (std::size_t b = 0; b < lattice.size(); ++b) {
        bool incl = std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(), sets[a].end());
        CHECK(lattice.poset().leq(a, b) == incl);
      }
    }
  }
}

TEST_CASE("canonical form is independent of the generating set") {
  std::mt19937 rng(21);
  for (const auto& g : abelian_groups_up_to(200)) {
    if (g.order() < 2 || rng() % 4 != 0) continue;
    ElementEngine engine(moduli64(g));
    const auto& elems = engine.elements();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Element> gens1;
      std::vector<Element> gens2;
      for (std::size_t t = 0, m = 1 + rng() % 3; t < m; ++t) gens1.push_back(elems[rng() % elems.size()]);
      auto set1 = engine.closure(gens1);
      // A second generating set of the same subgroup: random elements of it plus gens1 shifted.
      for (std::size_t t = 0; t < 3; ++t) gens2.push_back(set1[rng() % set1.size()]);
      for (const auto& x : gens1) gens2.push_back(engine.add(x, set1[rng() % set1.size()]));
      auto set2 = engine.closure(gens2);
      auto to_int = [](const std::vector<Element>& gs) {
        std::vector<std::vector<Integer>> out;
        for (const auto& x : gs) out.emplace_back(x.begin(), x.end());
        return out;
      };
      auto h1 = Subgroup::generated_by(g, to_int(gens1));
      auto h2 = Subgroup::generated_by(g, to_int(gens2));
      CHECK((set1 == set2) == (h1 == h2));
      CHECK(h1.order() == set1.size());
    }
  }
}

TEST_CASE("quotient invariants") {
  SubgroupLattice l(parse_group("C12"));
  auto idx = [&](const char* s) { return l.resolve_label(s).value(); };
  CHECK(l.quotient_invariants(idx("G"), idx("C3")) == std::vector<Integer>{4});
  CHECK(l.quotient_invariants(idx("G"), idx("C2")) == std::vector<Integer>{6});
  CHECK(count_prime_power_factors(l.quotient_invariants(idx("G"), idx("C2"))) == 2);
  CHECK(l.quotient_invariants(idx("C4"), idx("C4")).empty());
  CHECK_THROWS_AS((void)l.quotient_invariants(idx("C3"), idx("C2")), DomainError);

  CHECK(count_prime_power_factors(std::vector<std::uint64_t>{6}) == 2);
  CHECK(count_prime_power_factors(std::vector<std::uint64_t>{}) == 0);
  CHECK(count_prime_power_factors(std::vector<std::uint64_t>{2, 2}) == 2);

  for (const auto& g : abelian_groups_up_to(100)) {
    SubgroupLattice lat(g);
    std::vector<Integer> expect;
    for (auto d : g.invariant_factors()) expect.emplace_back(static_cast<std::int64_t>(d));
    CHECK(lat.invariants(lat.top()) == expect);
    CHECK(count_prime_power_factors(lat.invariants(lat.top())) == g.rank());
  }
}

TEST_CASE("quotient invariants match element-level torsion counts") {
  for (const auto& g : abelian_groups_up_to(48)) {
    ElementEngine engine(moduli64(g));
    SubgroupLattice lat(g);
    std::vector<ElementSet> sets;
    for (const auto& s : lat.subgroups()) sets.push_back(elements_of(engine, s));
    for (std::size_t h = 0; h < lat.size(); ++h) {
      for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!lat.poset().leq(k, h)) continue;
        auto inv = lat.quotient_invariants(h, k);
        for (std::int64_t d = 1; d <= 12; ++d) {
          std::size_t predicted = 1;
          for (const auto& x : inv) predicted *= static_cast<std::size_t>(std::gcd(d, x.to_int64()));
          CHECK(engine.quotient_torsion(sets[h], sets[k], d) == predicted);
        }
      }
    }
  }
}

TEST_CASE("frattini subgroups") {
  SubgroupLattice c8(parse_group("C8"));
  CHECK(c8.poset().label(c8.frattini(c8.resolve_label("C4").value())) == "C2");
  SubgroupLattice v4(parse_group("C2xC2"));
  CHECK(v4.frattini(v4.top()) == v4.bottom());
  SubgroupLattice c12(parse_group("C12"));
  CHECK(c12.poset().label(c12.frattini(c12.top())) == "C2");
  CHECK(c12.frattini(c12.bottom()) == c12.bottom());

  // Closed form: Phi(H) = m H with m the product of the primes dividing |H|.
  for (const auto& g : abelian_groups_up_to(200)) {
    if (g.order() > 96 && g.rank() > 4) continue;
    SubgroupLattice lat(g);
    for (std::size_t h = 0; h < lat.size(); ++h) {
      const auto& s = lat.subgroup(h);
      std::int64_t m = 1;
      for (auto [p, e] : factorize(s.order())) m *= static_cast<std::int64_t>(p);
      std::vector<std::vector<Integer>> gens;
      for (std::size_t j = 0; j < s.basis().cols(); ++j) {
        auto col = s.basis().column(j);
        for (auto& x : col) x *= Integer(m);
        gens.push_back(col);
      }
      CHECK(lat.frattini(h) == lat.index_of(Subgroup::generated_by(g, gens)).value());
    }
  }
}

TEST_CASE("meet and join") {
  SubgroupLattice c6(parse_group("C6"));
  auto c2 = c6.subgroup(1);
  auto c3 = c6.subgroup(2);
  CHECK(meet(c2, c3) == c6.subgroup(0));
  CHECK(join(c2, c3) == c6.subgroup(3));
  CHECK(meet(c2, c2) == c2);

  for (const char* spec : {"C2xC4", "2^1*2^1*3", "C9xC3", "C60", "2^1*2^1*2^1"}) {
    SubgroupLattice lat(parse_group(spec));
    const bool cyclic = lat.group().is_cyclic();
    for (std::size_t a = 0; a < lat.size(); ++a) {
      for (std::size_t b = 0; b < lat.size(); ++b) {
        const auto& ha = lat.subgroup(a);
        const auto& hb = lat.subgroup(b);
        auto m = meet(ha, hb);
        auto j = join(ha, hb);
        CHECK(lat.index_of(m).value() == lat.meet_index(a, b));
        CHECK(lat.index_of(j).value() == lat.join_index(a, b));
        CHECK(meet(hb, ha) == m);
        CHECK(join(hb, ha) == j);
        CHECK(meet(ha, join(ha, hb)) == ha);
        CHECK(join(ha, meet(ha, hb)) == ha);
        if (cyclic) CHECK(m.order() * j.order() == ha.order() * hb.order());
      }
    }
    for (std::size_t a = 0; a < lat.size(); a += 3) {
      for (std::size_t b = 1; b < lat.size(); b += 2) {
        for (std::size_t c = 0; c < lat.size(); c += 2) {
          const auto& x = lat.subgroup(a);
          const auto& y = lat.subgroup(b);
          const auto& z = lat.subgroup(c);
          CHECK(meet(meet(x, y), z) == meet(x, meet(y, z)));
          CHECK(join(join(x, y), z) == join(x, join(y, z)));
        }
      }
    }
  }
}

TEST_CASE("abelian groups by order") {
  // Number of abelian groups of order n for n = 1..32.
  const std::vector<std::size_t> counts{1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5,
                                        1, 2, 1, 2, 1, 1, 1, 3, 2, 1, 3, 2, 1, 1, 1, 7};
  for (std::size_t n = 1; n <= counts.size(); ++n) {
    auto gs = abelian_groups_of_order(n);
    CHECK(gs.size() == counts[n - 1]);
    for (const auto& g : gs) CHECK(g.order() == n);
  }
  CHECK(abelian_groups_of_order(1024).size() == 42);
  CHECK(abelian_groups_up_to(8).size() == 11);
}
