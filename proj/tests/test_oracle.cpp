#include <random>

#include "doctest.h"
#include "mackey/errors.hpp"
#include "mackey/groups.hpp"
#include "mackey/oracle.hpp"
#include "support/group_corpus.hpp"

using namespace mackey;

namespace {

PosetPtr share(FinitePoset p) { return std::make_shared<const FinitePoset>(std::move(p)); }

PosetPtr chain2() { return share(FinitePoset::chain(1)); }  // 0 < 1

std::vector<std::size_t> dims_of(const Presheaf& m) { return m.dims(); }

// Upper unitriangular matrix with small random entries above the diagonal.
QMatrix random_unitriangular(std::mt19937& rng, std::size_t n, bool inverse) {
  QMatrix u = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = static_cast<long>(rng() % 5) - 2;
  }
  if (!inverse) return u;
  // Back substitution for U^{-1}.
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = n; i-- > 0;) {
      mpq_class s = i == c ? 1 : 0;
      for (std::size_t k = i + 1; k < n; ++k) s -= u(i, k) * inv(k, c);
      inv(i, c) = s;
    }
  }
  return inv;
}

// The same presheaf after the base change M'(x) = A_x^{-1} M(x).
Presheaf rebased(std::mt19937& rng, const Presheaf& m) {
  const auto& p = m.poset();
  std::vector<unsigned> seeds;
  for (std::size_t x = 0; x < p.size(); ++x) seeds.push_back(static_cast<unsigned>(rng()));
  std::vector<QMatrix> a;
  std::vector<QMatrix> a_inv;
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::mt19937 r1(seeds[x]);
    std::mt19937 r2(seeds[x]);
    a.push_back(random_unitriangular(r1, m.dim(x), false));
    a_inv.push_back(random_unitriangular(r2, m.dim(x), true));
    REQUIRE(a.back() * a_inv.back() == QMatrix::identity(m.dim(x)));
  }
  std::map<std::pair<std::size_t, std::size_t>, QMatrix> maps;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (auto y : p.down_set(x).to_indices()) {
      if (y != x) maps.emplace(std::make_pair(y, x), a_inv[y] * m.map(y, x) * a[x]);
    }
  }
  return {m.poset_ptr(), m.dims(), std::move(maps)};
}

}  // namespace

TEST_CASE("simple and representable presheaves") {
  auto point = share(FinitePoset::chain(0));
  CHECK(simple(point, 0).total_dim() == 1);
  CHECK(representable(point, 0).total_dim() == 1);

  auto c = share(FinitePoset::chain(3));
  auto top = representable(c, 3);
  CHECK(dims_of(top) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(top.map(0, 3) == QMatrix::identity(1));
  CHECK(dims_of(representable(c, 0)) == dims_of(simple(c, 0)));
  for (std::size_t x = 0; x < 4; ++x) CHECK(simple(c, x).total_dim() == 1);

  SubgroupLattice c6(parse_group("C6"));
  auto p6 = share(c6.poset());
  CHECK(representable(p6, c6.top()).total_dim() == 4);
  CHECK_THROWS_AS(simple(p6, 7), DomainError);
}

TEST_CASE("functoriality is enforced") {
  auto c = share(FinitePoset::chain(2));
  std::map<std::pair<std::size_t, std::size_t>, QMatrix> maps;
  QMatrix one = QMatrix::identity(1);
  QMatrix two(1, 1);
  two(0, 0) = 2;
  maps.emplace(std::make_pair(0, 1), one);
  maps.emplace(std::make_pair(1, 2), one);
  maps.emplace(std::make_pair(0, 2), two);
  CHECK_THROWS_AS(Presheaf(c, {1, 1, 1}, maps), CrossCheckError);
  maps.erase({0, 2});
  CHECK_THROWS_AS(Presheaf(c, {1, 1, 1}, maps), DomainError);
}

TEST_CASE("radical") {
  auto c = share(FinitePoset::chain(3));
  CHECK(radical(simple(c, 2)).module.total_dim() == 0);
  CHECK(dims_of(radical(representable(c, 2)).module) == std::vector<std::size_t>{1, 1, 0, 0});
  auto ab = chain2();
  CHECK(dims_of(radical(representable(ab, 1)).module) == std::vector<std::size_t>{1, 0});
  auto rad = radical(representable(ab, 1));
  CHECK(is_natural(rad.inclusion, rad.module, representable(ab, 1)));
}

TEST_CASE("projective covers") {
  auto ab = chain2();
  auto rep = representable(ab, 1);
  auto pc = projective_cover(rep);
  CHECK(pc.locations == std::vector<std::size_t>{1});
  for (const auto& comp : pc.cover.components) CHECK(rank(comp) == comp.rows());
  CHECK(kernel(pc.cover, pc.module).module.total_dim() == 0);

  auto s = simple(ab, 1);
  auto ps = projective_cover(s);
  CHECK(ps.locations == std::vector<std::size_t>{1});
  auto k = kernel(ps.cover, ps.module);
  CHECK(dims_of(k.module) == std::vector<std::size_t>{1, 0});

  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = share(random_poset(rng, 2 + rng() % 5, 0.5));
    // A syzygy with nontrivial structure maps, seen in a random basis.
    auto first = projective_cover(simple(p, rng() % p->size()));
    auto m = kernel(first.cover, first.module).module;
    auto m2 = rebased(rng, m);
    auto base = projective_cover(m);
    auto other = projective_cover(m2);
    CHECK(base.locations == other.locations);
    CHECK(is_natural(other.cover, other.module, m2));
    CHECK(top_dims(m) == top_dims(m2));
  }
}

TEST_CASE("minimal resolutions") {
  auto ab = chain2();
  auto r = minimal_resolution(*ab, 1);
  REQUIRE(r.length() == 1);
  CHECK(r.multiplicities[0] == std::vector<std::size_t>{0, 1});
  CHECK(r.multiplicities[1] == std::vector<std::size_t>{1, 0});

  SubgroupLattice c6(parse_group("C6"));
  auto r6 = minimal_resolution(c6.poset(), c6.top());
  REQUIRE(r6.length() == 2);
  CHECK(r6.multiplicities[2][c6.bottom()] == 1);
  CHECK(r6.multiplicities[1][c6.bottom()] == 0);

  auto d = FinitePoset::discrete(3);
  for (std::size_t x = 0; x < 3; ++x) CHECK(minimal_resolution(d, x).length() == 0);

  CHECK_THROWS_AS(minimal_resolution(c6.poset(), c6.top(), 2), DomainError);
  CHECK_NOTHROW(minimal_resolution(c6.poset(), c6.top(), 3));
}

TEST_CASE("gldim_oracle") {
  CHECK(gldim_oracle(SubgroupLattice(parse_group("C9")).poset()) == 1);
  CHECK(gldim_oracle(SubgroupLattice(parse_group("C30")).poset()) == 3);
  CHECK(gldim_oracle(read_poset_file("fixtures/f5_subgroups.poset")) == 2);
  CHECK(gldim_oracle(read_poset_file("fixtures/f5_conjugacy.poset")) == 2);
  CHECK(gldim_oracle(FinitePoset::discrete(2)) == 0);
  CHECK_THROWS_AS(gldim_oracle(FinitePoset::discrete(0)), DomainError);
}

TEST_CASE("global-coordinate and presheaf resolutions agree") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    auto p = share(random_poset(rng, 1 + rng() % 6, 0.3 + 0.1 * (rng() % 5)));
    for (std::size_t x = 0; x < p->size(); ++x) {
      CHECK(minimal_resolution(*p, x).multiplicities == minimal_resolution_presheaf(p, x).multiplicities);
    }
  }
  SubgroupLattice c12(parse_group("C12"));
  auto p12 = share(c12.poset());
  for (std::size_t x = 0; x < c12.size(); ++x) {
    CHECK(minimal_resolution(*p12, x).multiplicities == minimal_resolution_presheaf(p12, x).multiplicities);
  }
}

TEST_CASE("oracle agrees with interval cohomology") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    auto p = random_poset(rng, 1 + rng() % 8, 0.2 + 0.1 * (rng() % 6));
    CHECK(oracle_ext_table(p).entries() == ext_table(p).entries());
  }
  for (const auto& g : abelian_groups_up_to(100)) {
    SubgroupLattice l(g);
    CHECK(oracle_ext_table(l.poset()).entries() == ext_table(l.poset()).entries());
  }
}
