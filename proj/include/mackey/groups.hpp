#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mackey/bitset.hpp"
#include "mackey/posets.hpp"
#include "mackey/qlinalg.hpp"

namespace mackey {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  [[nodiscard]] std::uint64_t value() const;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// G = prod C_{p^e}, factors sorted by (prime, exponent).
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<PrimePower> factors);

  [[nodiscard]] const std::vector<PrimePower>& factors() const { return factors_; }
  [[nodiscard]] std::size_t rank() const { return factors_.size(); }
  [[nodiscard]] std::uint64_t order() const { return order_; }
  /// Cyclic orders n_i of the factors, in factor order.
  [[nodiscard]] std::vector<std::uint64_t> moduli() const;
  [[nodiscard]] bool is_cyclic() const;
  /// Invariant factor form d_1 | d_2 | ... with every d_i > 1.
  [[nodiscard]] std::vector<std::uint64_t> invariant_factors() const;
  /// `p^e*q^f` form, or "1" for the trivial group.
  [[nodiscard]] std::string spec() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<PrimePower> factors_;
  std::uint64_t order_ = 1;
};

/// Accepts `C12`, `C2xC2`, `2^2*3`, case-insensitively. Throws ParseError on
/// malformed text and DomainError on a factor of 0 or 1 (other than `C1`).
AbelianGroup parse_group(std::string_view spec);

/// Every abelian group of the given order, one per partition of each prime
/// exponent, in a fixed order.
std::vector<AbelianGroup> abelian_groups_of_order(std::uint64_t n);
/// abelian_groups_of_order for n = 1, ..., max_order, concatenated.
std::vector<AbelianGroup> abelian_groups_up_to(std::uint64_t max_order);

/// Primary decomposition of a positive integer, ascending primes.
std::vector<PrimePower> factorize(std::uint64_t n);

/// A subgroup as the lattice L with diag(n_i) Z^k <= L <= Z^k, stored as the
/// canonical lower-triangular column HNF of L.
class Subgroup {
 public:
  Subgroup() = default;
  /// Subgroup generated by the given columns (elements of Z^k); the
  /// relations diag(n_i) are added automatically.
  static Subgroup generated_by(const AbelianGroup& g, const std::vector<std::vector<Integer>>& gens);
  static Subgroup whole(const AbelianGroup& g);
  static Subgroup trivial(const AbelianGroup& g);
  /// Wraps a basis already known to be canonical.
  static Subgroup from_canonical(const AbelianGroup& g, ExactMatrix basis);

  [[nodiscard]] const ExactMatrix& basis() const { return basis_; }
  [[nodiscard]] std::uint64_t order() const { return order_; }
  /// True when x (coordinates modulo n_i) lies in the subgroup.
  [[nodiscard]] bool contains(const std::vector<Integer>& x) const;
  [[nodiscard]] bool contains(const Subgroup& other) const;
  /// Entries of the basis in row-major order, for hashing and ordering.
  [[nodiscard]] std::vector<std::int64_t> key() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.basis_ == b.basis_; }

 private:
  friend Subgroup join(const Subgroup& a, const Subgroup& b);
  friend Subgroup meet(const Subgroup& a, const Subgroup& b);
  static Subgroup with_order(std::uint64_t ambient_order, ExactMatrix basis);

  ExactMatrix basis_;
  std::uint64_t order_ = 1;
  std::uint64_t ambient_order_ = 1;
};

Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup meet(const Subgroup& a, const Subgroup& b);

/// Invariant factors (> 1) of H/K; throws DomainError unless K <= H.
std::vector<Integer> quotient_invariants(const Subgroup& h, const Subgroup& k);

/// Sum over the entries of the number of distinct primes dividing each.
std::size_t count_prime_power_factors(const std::vector<Integer>& invariants);
std::size_t count_prime_power_factors(const std::vector<std::uint64_t>& invariants);

/// All subgroups of a finite abelian group with their inclusion order.
/// Subgroups are sorted by (order, basis entries), which makes index order a
/// linear extension of inclusion.
class SubgroupLattice {
 public:
  static constexpr std::uint64_t default_max_order = 100'000;

  /// Throws BudgetExceeded if |G| exceeds max_order.
  explicit SubgroupLattice(AbelianGroup g, std::uint64_t max_order = default_max_order);

  [[nodiscard]] const AbelianGroup& group() const { return group_; }
  [[nodiscard]] std::size_t size() const { return subgroups_.size(); }
  [[nodiscard]] const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  [[nodiscard]] const Subgroup& subgroup(std::size_t i) const { return subgroups_.at(i); }
  [[nodiscard]] const FinitePoset& poset() const { return poset_; }
  [[nodiscard]] std::size_t bottom() const { return 0; }
  [[nodiscard]] std::size_t top() const { return subgroups_.size() - 1; }

  [[nodiscard]] std::optional<std::size_t> index_of(const Subgroup& h) const;
  [[nodiscard]] std::size_t meet_index(std::size_t a, std::size_t b) const;
  [[nodiscard]] std::size_t join_index(std::size_t a, std::size_t b) const;
  /// Intersection of the maximal subgroups of subgroup h, read off the
  /// lattice; h itself when h is trivial.
  [[nodiscard]] std::size_t frattini(std::size_t h) const;
  [[nodiscard]] std::vector<Integer> quotient_invariants(std::size_t h, std::size_t k) const;
  /// Invariant factors of the subgroup itself.
  [[nodiscard]] std::vector<Integer> invariants(std::size_t h) const;
  /// Resolves a printed label, or the aliases `e` and `G`.
  [[nodiscard]] std::optional<std::size_t> resolve_label(std::string_view label) const;

 private:
  AbelianGroup group_;
  std::vector<Subgroup> subgroups_;
  FinitePoset poset_;
  std::map<std::vector<std::int64_t>, std::size_t> index_;
};

Subgroup frattini(const SubgroupLattice& lattice, std::size_t h);

}  // namespace mackey
