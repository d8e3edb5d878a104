#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mackey/bitset.hpp"

namespace mackey {

using Cover = std::pair<std::size_t, std::size_t>;  // (lower, upper)

/// A finite partially ordered set stored as dense down-set and up-set rows.
///
/// The relation is validated on construction and the Hasse covers are derived
/// from it, so every FinitePoset value is a genuine partial order.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// leq[i][j] is true iff element i <= element j.
  static FinitePoset from_relation(std::vector<std::string> labels,
                                   const std::vector<std::vector<bool>>& leq);
  /// down[j] holds every i with i <= j.
  static FinitePoset from_down_sets(std::vector<std::string> labels, std::vector<Bitset> down);
  /// Transitive closure of the given cover pairs; rejects cycles.
  static FinitePoset from_covers(std::vector<std::string> labels, const std::vector<Cover>& covers);
  /// 0 < 1 < ... < length, labelled by position.
  static FinitePoset chain(std::size_t length);
  static FinitePoset discrete(std::size_t n);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const;

  [[nodiscard]] bool leq(std::size_t i, std::size_t j) const { return down_[j].test(i); }
  [[nodiscard]] bool less(std::size_t i, std::size_t j) const { return i != j && down_[j].test(i); }
  [[nodiscard]] const Bitset& down_set(std::size_t j) const { return down_[j]; }
  [[nodiscard]] const Bitset& up_set(std::size_t i) const { return up_[i]; }

  [[nodiscard]] const std::vector<Cover>& covers() const { return covers_; }
  [[nodiscard]] const std::vector<std::size_t>& lower_covers(std::size_t j) const { return lower_[j]; }
  [[nodiscard]] const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_[i]; }

  /// Elements sorted so that i < j in the order implies i appears first.
  [[nodiscard]] const std::vector<std::size_t>& linear_extension() const { return linear_; }
  /// True when index order is itself a linear extension.
  [[nodiscard]] bool naturally_labeled() const { return natural_; }

  [[nodiscard]] Bitset full_mask() const;
  /// Induced sub-poset on the masked elements, keeping their relative index order.
  [[nodiscard]] FinitePoset induced(const Bitset& mask) const;
  [[nodiscard]] FinitePoset induced(const std::vector<std::size_t>& elements) const;

  friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
    return a.labels_ == b.labels_ && a.down_ == b.down_;
  }

 private:
  void finish();  // derives up-sets, covers, linear extension

  std::vector<std::string> labels_;
  std::vector<Bitset> down_;
  std::vector<Bitset> up_;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::size_t>> lower_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::size_t> linear_;
  bool natural_ = true;
};

/// Strict chains of a poset grouped by dimension. Chains are stored bottom to
/// top as element indices of the poset they came from; each dimension's list
/// is in lexicographic order.
class OrderComplex {
 public:
  OrderComplex() = default;
  explicit OrderComplex(std::vector<std::vector<std::uint32_t>> flat_by_dim);

  /// Largest simplex dimension, -1 for the empty complex.
  [[nodiscard]] int dimension() const { return static_cast<int>(flat_.size()) - 1; }
  [[nodiscard]] bool empty() const { return flat_.empty(); }
  [[nodiscard]] std::size_t count(int d) const;
  [[nodiscard]] std::span<const std::uint32_t> simplex(int d, std::size_t k) const;
  [[nodiscard]] std::vector<std::vector<std::uint32_t>> simplices(int d) const;
  /// Position of a chain in its dimension's list, if present.
  [[nodiscard]] std::optional<std::size_t> find(std::span<const std::uint32_t> chain) const;
  [[nodiscard]] std::size_t total_simplices() const;

 private:
  std::vector<std::vector<std::uint32_t>> flat_;
};

/// {z : y < z < x} as a mask; empty unless y < x.
Bitset open_interval_mask(const FinitePoset& p, std::size_t x, std::size_t y);
/// {z : y <= z <= x} as a mask; empty unless y <= x.
Bitset closed_interval_mask(const FinitePoset& p, std::size_t x, std::size_t y);
/// Induced poset on the open interval between y (below) and x (above).
FinitePoset open_interval(const FinitePoset& p, std::size_t x, std::size_t y);

/// Longest strict chain, counted in edges; 0 for discrete or empty posets.
std::size_t height(const FinitePoset& p);
std::size_t height(const FinitePoset& p, const Bitset& mask);
/// rank[x] = longest chain ending at x; minimal elements have rank 0.
std::vector<std::size_t> ranks(const FinitePoset& p);

/// Order complex of the whole poset, or of the masked sub-poset.
/// Throws BudgetExceeded when more than max_simplices chains would be produced.
OrderComplex order_complex(const FinitePoset& p, std::size_t max_simplices = 50'000'000);
OrderComplex order_complex(const FinitePoset& p, const Bitset& mask,
                           std::size_t max_simplices = 50'000'000);

/// Componentwise order on pairs; element (i, j) has index i * |q| + j.
FinitePoset product(const FinitePoset& p, const FinitePoset& q);

/// Random poset on n elements labelled v0.. : each pair of a shuffled order
/// becomes a cover candidate with the given probability, then the relation
/// is closed transitively.
FinitePoset random_poset(std::mt19937& rng, std::size_t n, double density);

/// Repeatedly removes beat points (elements whose strict down-set has a
/// unique maximum or whose strict up-set has a unique minimum) from the mask.
/// The order complex of the result is homotopy equivalent to the original.
Bitset core_mask(const FinitePoset& p, Bitset mask);

/// Exact isomorphism test by invariant-guided backtracking.
bool are_isomorphic(const FinitePoset& a, const FinitePoset& b);

/// `elements: a b c` followed by `cover: a < b` lines.
std::string write_poset_text(const FinitePoset& p);
FinitePoset parse_poset_text(std::string_view text);
FinitePoset read_poset_file(const std::string& path);

/// Hasse diagram in Graphviz syntax, edges drawn from lower to upper.
std::string to_dot(const FinitePoset& p, std::string_view graph_name = "poset");

}  // namespace mackey
