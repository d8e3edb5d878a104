#include <random>

#include "doctest.h"
#include "mackey/groups.hpp"
#include "mackey/qlinalg.hpp"
#include "support/rational.hpp"

using namespace mackey;

namespace {

ExactMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi, double zero_prob) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution zero(zero_prob);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = zero(rng) ? 0 : val(rng);
  }
  return m;
}

std::vector<Integer> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

FinitePoset proper_part(const char* spec) {
  SubgroupLattice l(parse_group(spec));
  return open_interval(l.poset(), l.top(), l.bottom());
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(ExactMatrix(3, 4)) == 0);
  CHECK(rank(ExactMatrix(0, 0)) == 0);
  CHECK(rank(ExactMatrix::identity(5)) == 5);
  CHECK(rank(ExactMatrix::from_rows({ints({1, 2}), ints({2, 4})})) == 1);
}

TEST_CASE("Bareiss rank agrees with rational elimination") {
  std::mt19937 rng(1);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t r = 1 + rng() % 7;
    const std::size_t c = 1 + rng() % 7;
    auto m = random_matrix(rng, r, c, -50, 50, 0.4);
    if (iter % 3 == 0 && r > 1) {  // force dependent rows
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Integer(3) - m(r - 2, j);
    }
    CHECK(rank(m) == testsupport::rational_rank(m));
  }
  // Entries beyond 64 bits.
  auto big = Integer::parse("340282366920938463463374607431768211457");
  auto m = ExactMatrix::from_rows({{big, Integer(1)}, {big * Integer(2), Integer(2)}});
  CHECK(rank(m) == 1);
}

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(ExactMatrix::from_rows({ints({4, 0}), ints({0, 6})})) == ints({2, 12}));
  CHECK(smith_normal_form(ExactMatrix::identity(3)) == ints({1, 1, 1}));
  CHECK(smith_normal_form(ExactMatrix::from_rows({ints({2, 0}), ints({0, 3})})) == ints({1, 6}));
  CHECK(smith_normal_form(ExactMatrix::from_rows({ints({0, 0, 0})})) == ints({0}));
}

TEST_CASE("Smith normal form divisibility and determinant on random matrices") {
  std::mt19937 rng(2);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + rng() % 5;
    const std::size_t c = n + rng() % 3;
    auto m = random_matrix(rng, n, c, -20, 20, 0.3);
    auto d = smith_normal_form(m);
    REQUIRE(d.size() == n);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(divides(d[i], d[i + 1]));
    std::size_t nonzero = 0;
    for (auto& x : d) nonzero += x.is_zero() ? 0 : 1;
    CHECK(nonzero == rank(m));
  }
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng() % 4;
    auto m = random_matrix(rng, n, n, -9, 9, 0.2);
    auto d = smith_normal_form(m);
    Integer prod = 1;
    for (auto& x : d) prod *= x;
    // |det| from rational elimination must equal the product of the diagonal.
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = mpq_class(m(i, j).to_mpz());
    }
    mpq_class det = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      while (p < n && a[p][col] == 0) ++p;
      if (p == n) {
        det = 0;
        break;
      }
      if (p != col) {
        std::swap(a[p], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (std::size_t i = col + 1; i < n; ++i) {
        mpq_class f = a[i][col] / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      }
    }
    CHECK(mpq_class(abs(prod).to_mpz()) == abs(det));
  }
}

TEST_CASE("Hermite normal form is canonical under unimodular column operations") {
  std::mt19937 rng(4);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t k = 1 + rng() % 4;
    auto m = random_matrix(rng, k, k + 2, -12, 12, 0.2);
    for (std::size_t i = 0; i < k; ++i) m(i, k + (i % 2)) += 7;  // usually full row rank
    auto h = hermite_normal_form(m);
    auto shuffled = m;
    for (int step = 0; step < 8; ++step) {
      std::size_t a = rng() % m.cols();
      std::size_t b = rng() % m.cols();
      if (a == b) continue;
      int q = static_cast<int>(rng() % 5) - 2;
      for (std::size_t i = 0; i < k; ++i) shuffled(i, a) += Integer(q) * shuffled(i, b);
    }
    CHECK(hermite_normal_form(shuffled) == h);
    if (h.cols() == k) {
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(h(i, i) > Integer(0));
        for (std::size_t j = 0; j < i; ++j) CHECK((h(i, j) >= Integer(0) && h(i, j) < h(i, i)));
        for (std::size_t j = i + 1; j < k; ++j) CHECK(h(i, j).is_zero());
      }
      for (std::size_t j = 0; j < m.cols(); ++j) CHECK(solve_lower_triangular(h, m.column(j)).has_value());
    }
  }
}

TEST_CASE("integer kernel") {
  std::mt19937 rng(6);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t r = 1 + rng() % 4;
    const std::size_t c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c, -6, 6, 0.3);
    auto ker = integer_kernel(m);
    CHECK(ker.cols() == c - rank(m));
    CHECK((m * ker).is_zero());
    CHECK(rank(ker) == ker.cols());
  }
}

TEST_CASE("reduced cohomology examples") {
  using Dims = std::map<int, std::size_t>;
  CHECK(reduced_cohomology_dims(order_complex(FinitePoset::discrete(2))) == Dims{{0, 1}});
  CHECK(reduced_cohomology_dims(order_complex(FinitePoset::discrete(1))).empty());
  CHECK(reduced_cohomology_dims(order_complex(FinitePoset::discrete(0))) == Dims{{-1, 1}});
  CHECK(reduced_cohomology_dims(order_complex(proper_part("C30"))) == Dims{{1, 1}});
  // Boundary of the 3-cube: the proper part of (Sub_{C_p})^3.
  auto cube = product(product(FinitePoset::chain(1), FinitePoset::chain(1)), FinitePoset::chain(1));
  CHECK(reduced_cohomology_dims(order_complex(open_interval(cube, 7, 0))) == Dims{{1, 1}});
  // Proper part of Sub((C_2)^3) is a wedge of 2^3 circles (Moebius value -8).
  CHECK(reduced_cohomology_dims(order_complex(proper_part("2^1*2^1*2^1"))) == Dims{{1, 8}});
  CHECK(reduced_cohomology_dims(order_complex(proper_part("2^1*2^1"))) == Dims{{0, 2}});
  CHECK(reduced_cohomology_dims(order_complex(proper_part("C210"))) == Dims{{2, 1}});
  CHECK(reduced_cohomology_dims(order_complex(proper_part("C12"))).empty());
}

namespace {

// Cohomology from dense coboundary ranks, the textbook way.
std::map<int, std::size_t> cohomology_by_coboundaries(const OrderComplex& c) {
  std::map<int, std::size_t> out;
  if (c.empty()) return {{-1, 1}};
  std::vector<std::size_t> rk;  // rk[d + 1] = rank of coboundary C^d -> C^{d+1}, d >= -1
  for (int d = -1; d <= c.dimension(); ++d) rk.push_back(rank(coboundary_matrix(c, d)));
  for (int d = -1; d <= c.dimension(); ++d) {
    const std::size_t dim = d < 0 ? 1 : c.count(d);
    const std::size_t nullity = dim - rk[static_cast<std::size_t>(d + 1)];
    const std::size_t incoming = d < 0 ? 0 : rk[static_cast<std::size_t>(d)];
    if (nullity - incoming != 0) out[d] = nullity - incoming;
  }
  return out;
}

}  // namespace

TEST_CASE("homology and cohomology routes agree; Euler characteristic") {
  std::mt19937 rng(9);
  for (int iter = 0; iter < 150; ++iter) {
    auto p = random_poset(rng, 1 + iter % 9, 0.25 + 0.1 * (iter % 4));
    auto c = order_complex(p);
    auto dims = reduced_cohomology_dims(c);
    CHECK(dims == cohomology_by_coboundaries(c));
    long euler_h = 0;
    for (auto [d, v] : dims) euler_h += (d % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    long euler_c = -1;
    for (int d = 0; d <= c.dimension(); ++d) euler_c += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.count(d));
    CHECK(euler_h == euler_c);
    // Rank-nullity for each coboundary.
    for (int d = 0; d <= c.dimension(); ++d) {
      auto cob = coboundary_matrix(c, d);
      CHECK(cob.cols() == c.count(d));
      CHECK(rank(cob) <= cob.cols());
      CHECK(rank(cob) == testsupport::rational_rank(cob));
    }
  }
}

TEST_CASE("sparse rank with and without clearing") {
  std::mt19937 rng(10);
  for (int iter = 0; iter < 100; ++iter) {
    auto m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8, -3, 3, 0.5);
    std::vector<SparseColumn> cols(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!m(i, j).is_zero()) {
          cols[j].rows.push_back(i);
          cols[j].values.push_back(m(i, j));
        }
      }
    }
    CHECK(sparse_rank(cols) == rank(m));
  }
}
