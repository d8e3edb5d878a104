#include <limits>
#include <random>

#include "doctest.h"
#include "mackey/integer.hpp"

using mackey::Integer;

TEST_CASE("integer arithmetic promotes past 64 bits and demotes back") {
  const Integer big = Integer(std::numeric_limits<std::int64_t>::max()) + Integer(1);
  CHECK_FALSE(big.is_small());
  CHECK(big.to_string() == "9223372036854775808");
  const Integer back = big - Integer(1);
  CHECK(back.is_small());
  CHECK(back.to_int64() == std::numeric_limits<std::int64_t>::max());
  const Integer sq = big * big;
  CHECK(sq.to_string() == "85070591730234615865843651857942052864");
  CHECK(mackey::div_exact(sq, big) == big);
  CHECK(-Integer(std::numeric_limits<std::int64_t>::min()) == big);
}

TEST_CASE("integer division helpers round towards negative infinity") {
  CHECK(mackey::floor_div(Integer(-7), Integer(2)) == Integer(-4));
  CHECK(mackey::floor_mod(Integer(-7), Integer(2)) == Integer(1));
  CHECK(mackey::floor_mod(Integer(7), Integer(-3)) == Integer(1));
  CHECK(mackey::gcd(Integer(-12), Integer(18)) == Integer(6));
  CHECK(mackey::gcd(Integer(0), Integer(0)) == Integer(0));
  CHECK(mackey::lcm(Integer(4), Integer(6)) == Integer(12));
  CHECK_THROWS(mackey::div_exact(Integer(7), Integer(2)));
  CHECK(mackey::divides(Integer(3), Integer(-9)));
}

TEST_CASE("integer ops agree with mpz on random operands near the overflow boundary") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto a = static_cast<std::int64_t>(rng());
    const auto b = static_cast<std::int64_t>(rng() >> (rng() % 64));
    const mpz_class ma(Integer(a).to_mpz());
    const mpz_class mb(Integer(b).to_mpz());
    CHECK((Integer(a) + Integer(b)).to_mpz() == ma + mb);
    CHECK((Integer(a) - Integer(b)).to_mpz() == ma - mb);
    CHECK((Integer(a) * Integer(b)).to_mpz() == ma * mb);
    CHECK(((Integer(a) < Integer(b)) == (ma < mb)));
  }
}

TEST_CASE("integer parsing") {
  CHECK(Integer::parse("-123456789012345678901234567890").to_string() == "-123456789012345678901234567890");
  CHECK(Integer::parse("+5") == Integer(5));
  CHECK_THROWS_AS(Integer::parse("12a"), std::invalid_argument);
  CHECK_THROWS_AS(Integer::parse(""), std::invalid_argument);
}
