#include "mackey/integer.hpp"

#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace mackey {
namespace {

mpz_class mpz_from_int64(std::int64_t v) {
  mpz_class r;
  // mpz_set_si takes a long, which is 64 bits on every platform we target.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

bool mpz_fits_int64(const mpz_class& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

}  // namespace

Integer::Integer(const mpz_class& v) { assign_mpz(v); }

Integer::Integer(const Integer& other)
    : small_(other.small_), big_(other.big_ ? std::make_unique<mpz_class>(*other.big_) : nullptr) {}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpz_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Integer::assign_mpz(const mpz_class& v) {
  if (mpz_fits_int64(v)) {
    small_ = mpz_get_si(v.get_mpz_t());
    big_.reset();
  } else {
    small_ = 0;
    if (big_) {
      *big_ = v;
    } else {
      big_ = std::make_unique<mpz_class>(v);
    }
  }
}

Integer Integer::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed integer literal");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(mpz_class(digits, 10));
}

int Integer::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

std::int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("integer does not fit in 64 bits");
  return small_;
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_from_int64(small_); }

std::string Integer::to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }

std::size_t Integer::bit_length() const {
  if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
  if (small_ == 0) return 0;
  auto magnitude = small_ < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(small_)
                              : static_cast<std::uint64_t>(small_);
  return 64U - static_cast<std::size_t>(__builtin_clzll(magnitude));
}

std::size_t Integer::hash() const {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r = 0;
    if (!__builtin_add_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_mpz(to_mpz() + rhs.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r = 0;
    if (!__builtin_sub_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_mpz(to_mpz() - rhs.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r = 0;
    if (!__builtin_mul_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_mpz(to_mpz() * rhs.to_mpz());
  return *this;
}

Integer Integer::operator-() const {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(-small_);
  return Integer(mpz_class(-to_mpz()));
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  // Both sides are normalised, so a big value never equals a small one.
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer abs(const Integer& v) { return v.sign() < 0 ? -v : v; }

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t x = a.to_int64();
    std::int64_t y = b.to_int64();
    if (x != std::numeric_limits<std::int64_t>::min() && y != std::numeric_limits<std::int64_t>::min()) {
      x = x < 0 ? -x : x;
      y = y < 0 ? -y : y;
      while (y != 0) {
        std::int64_t t = x % y;
        x = y;
        y = t;
      }
      return Integer(x);
    }
  }
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return abs(div_exact(a, gcd(a, b)) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() && !(a.to_int64() == std::numeric_limits<std::int64_t>::min() && b.to_int64() == -1)) {
    std::int64_t x = a.to_int64();
    std::int64_t y = b.to_int64();
    std::int64_t q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return Integer(q);
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer floor_mod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() && b.to_int64() != std::numeric_limits<std::int64_t>::min()) {
    std::int64_t y = b.to_int64();
    y = y < 0 ? -y : y;
    std::int64_t r = a.to_int64() % y;
    if (r < 0) r += y;
    return Integer(r);
  }
  mpz_class r;
  mpz_class m = b.to_mpz();
  mpz_abs(m.get_mpz_t(), m.get_mpz_t());
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), m.get_mpz_t());
  return Integer(r);
}

Integer div_exact(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() && !(a.to_int64() == std::numeric_limits<std::int64_t>::min() && b.to_int64() == -1)) {
    std::int64_t x = a.to_int64();
    std::int64_t y = b.to_int64();
    if (x % y != 0) throw std::domain_error("inexact division");
    return Integer(x / y);
  }
  mpz_class av = a.to_mpz();
  mpz_class bv = b.to_mpz();
  if (mpz_divisible_p(av.get_mpz_t(), bv.get_mpz_t()) == 0) throw std::domain_error("inexact division");
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), av.get_mpz_t(), bv.get_mpz_t());
  return Integer(q);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return floor_mod(a, d).is_zero();
}

}  // namespace mackey
