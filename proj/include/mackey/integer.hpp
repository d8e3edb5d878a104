#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace mackey {

/// Arbitrary-precision integer with an inline 64-bit fast path.
///
/// Values that fit in an int64 are stored inline; any operation whose result
/// would overflow is recomputed with GMP and the result is kept as an mpz
/// until it fits again. No operation ever wraps around.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v);

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept = default;
  ~Integer() = default;

  /// Parses an optionally signed decimal string; throws std::invalid_argument.
  static Integer parse(std::string_view text);

  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] bool is_zero() const { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && small_ == 1; }
  [[nodiscard]] int sign() const;
  [[nodiscard]] bool fits_int64() const { return !big_; }
  [[nodiscard]] std::int64_t to_int64() const;  // throws std::overflow_error
  [[nodiscard]] mpz_class to_mpz() const;
  [[nodiscard]] std::string to_string() const;
  /// Number of significant bits of |value|; 0 for zero.
  [[nodiscard]] std::size_t bit_length() const;
  [[nodiscard]] std::size_t hash() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  Integer operator-() const;

  friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
  friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
  friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  void assign_mpz(const mpz_class& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& v);
/// Non-negative gcd; gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Quotient rounded towards negative infinity; throws on division by zero.
Integer floor_div(const Integer& a, const Integer& b);
/// Remainder in [0, |b|); throws on division by zero.
Integer floor_mod(const Integer& a, const Integer& b);
/// a / b when b divides a exactly; throws std::domain_error otherwise.
Integer div_exact(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

struct IntegerHash {
  std::size_t operator()(const Integer& v) const { return v.hash(); }
};

}  // namespace mackey
