#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mackey/bitset.hpp"
#include "mackey/groups.hpp"
#include "mackey/posets.hpp"

namespace mackey {

using LatticePtr = std::shared_ptr<const SubgroupLattice>;
using Arrow = std::pair<std::size_t, std::size_t>;  // (K, H) meaning K -> H

/// A relation on the subgroups of an abelian group, stored as
/// sources[H] = {K : K -> H}. Values produced by close() always validate;
/// values built from raw relations may not, see validate().
class TransferSystem {
 public:
  TransferSystem(LatticePtr lattice, std::vector<Bitset> sources);
  static TransferSystem trivial(LatticePtr lattice);
  /// Every inclusion K <= H is a transfer.
  static TransferSystem complete(LatticePtr lattice);

  [[nodiscard]] const SubgroupLattice& lattice() const { return *lattice_; }
  [[nodiscard]] const LatticePtr& lattice_ptr() const { return lattice_; }
  [[nodiscard]] bool has(std::size_t k, std::size_t h) const { return sources_[h].test(k); }
  [[nodiscard]] const Bitset& sources(std::size_t h) const { return sources_[h]; }
  [[nodiscard]] const std::vector<Bitset>& relation() const { return sources_; }
  /// Non-reflexive arrows sorted by (H, K).
  [[nodiscard]] std::vector<Arrow> arrows() const;
  /// Sub_G^O = {H : H -> G}.
  [[nodiscard]] const Bitset& sub_o() const { return sources_[lattice_->top()]; }
  [[nodiscard]] bool is_complete() const;
  [[nodiscard]] bool is_subsystem_of(const TransferSystem& other) const;

  friend bool operator==(const TransferSystem& a, const TransferSystem& b) { return a.sources_ == b.sources_; }

 private:
  LatticePtr lattice_;
  std::vector<Bitset> sources_;
};

struct Violation {
  enum class Kind { not_inclusion, not_reflexive, not_transitive, not_restriction_closed };
  Kind kind;
  /// not_inclusion: K -> H with K not in H. not_reflexive: K = H = the element.
  /// not_transitive: K -> L -> H without K -> H.
  /// not_restriction_closed: K -> H and L <= H without (K meet L) -> L.
  std::size_t k;
  std::size_t h;
  std::size_t l;
  [[nodiscard]] std::string describe(const SubgroupLattice& lattice) const;
};

/// Smallest transfer system containing the generators. Throws DomainError
/// if some generator K -> H has K not contained in H.
TransferSystem close(const LatticePtr& lattice, const std::vector<Arrow>& generators);

/// First violated axiom, or nullopt when the relation is a transfer system.
std::optional<Violation> validate(const TransferSystem& t);

/// True iff t is generated by its arrows into G.
bool is_disk_like(const TransferSystem& t);

/// Subgroups J, K are inseparable iff {L in Sub_G^O : J <= L} agree.
struct InseparabilityPartition {
  LatticePtr lattice;
  std::vector<std::vector<std::size_t>> classes;  // sorted members, classes ordered by representative
  std::vector<std::size_t> representative;        // maximal element of each class
  std::vector<std::size_t> class_of;              // subgroup index -> class index

  [[nodiscard]] std::optional<std::size_t> class_with_representative(std::size_t h) const;
};

InseparabilityPartition inseparability_classes(const TransferSystem& t);

/// Inclusion order on the class of representative h; throws DomainError if h
/// is not a representative.
FinitePoset class_poset(const InseparabilityPartition& partition, std::size_t h);

struct DiskLikeFamily {
  std::vector<TransferSystem> systems;  // sorted by arrow count, then relation
  FinitePoset inclusion;                // element i is systems[i]
};

/// All disk-like systems, as closures of every subset of {H -> G : H < G}.
/// Throws BudgetExceeded when the lattice has more than max_subgroups elements.
DiskLikeFamily enumerate_disk_like(const LatticePtr& lattice, std::size_t max_subgroups = 16);

/// Generator file: `gen: <label> -> <label>` per line, `#` comments.
std::vector<Arrow> parse_generators(std::string_view text, const SubgroupLattice& lattice);
std::vector<Arrow> read_generator_file(const std::string& path, const SubgroupLattice& lattice);

}  // namespace mackey
