#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mackey/izext.hpp"
#include "mackey/transfer.hpp"

namespace mackey {

/// dim([H]) as the largest number of prime-power cyclic factors of L/K over
/// all pairs K <= L in the class of representative h.
std::size_t class_dim_all_pairs(const InseparabilityPartition& partition, std::size_t h);
/// The same maximum over H/K with K minimal in the class.
std::size_t class_dim_minimal(const InseparabilityPartition& partition, std::size_t h);
/// Both forms; throws CrossCheckError when they differ and DomainError when
/// h is not a class representative.
std::size_t class_dim(const InseparabilityPartition& partition, std::size_t h);

struct ClassRow {
  std::size_t representative;
  std::size_t size;
  std::vector<std::size_t> minimal;  // minimal members, ascending
  std::size_t dim;
  std::size_t height;  // height of the class poset
};

struct MackeyDimReport {
  AbelianGroup group;
  TransferSystem system;
  std::vector<ClassRow> per_class;  // ordered by representative
  std::size_t gldim = 0;
  std::size_t height_bound = 0;

  /// {"schema": 1, "group", "generators": [[K, H], ...] (the arrows into G),
  ///  "classes": [...], "gldim", "height_bound"}
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_text() const;
};

/// Global dimension of rational O-Mackey functors as the largest class
/// dimension. Throws DomainError when t is not a transfer system or not
/// disk-like, naming the offending arrow.
MackeyDimReport gldim_mackey(const TransferSystem& t);

/// Largest gldim_incidence over the class posets.
std::size_t gldim_mackey_via_ext(const TransferSystem& t);

/// Runs both routes and throws CrossCheckError when they differ.
MackeyDimReport gldim_mackey_checked(const TransferSystem& t);

struct MonotonicityReport {
  DiskLikeFamily family;
  std::vector<std::size_t> gldim;                               // per system
  std::size_t comparable_pairs = 0;                             // strict inclusions checked
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // (smaller, larger) with gldim rising

  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_text() const;
};

/// For every strict inclusion O1 < O2 of disk-like systems, checks
/// gldim(O2) <= gldim(O1).
MonotonicityReport scan_monotonicity(const LatticePtr& lattice, std::size_t max_subgroups = 16);

struct IntervalWitness {
  std::size_t h;
  std::size_t k;
  std::map<int, std::size_t> ext;
};

struct FrattiniReport {
  LatticePtr lattice;
  std::size_t eligible_pairs = 0;         // K < H, Frattini(H) not in K, open interval nonempty
  std::vector<IntervalWitness> nonvanishing;  // eligible pairs with nonzero cohomology
  std::size_t gldim = 0;
  std::size_t top_degree = 0;             // top Ext degree of (G, Frattini(G))

  [[nodiscard]] bool ok() const { return nonvanishing.empty() && top_degree == gldim; }
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_text() const;
};

/// Checks that every eligible interval is rationally acyclic and that the
/// global dimension of the lattice is attained at (G, Frattini(G)). Every
/// interval is reduced to its core first.
FrattiniReport scan_frattini(const LatticePtr& lattice);

struct FrattiniRow {
  std::size_t h;
  std::size_t frattini;
  std::size_t degree;  // top Ext degree of (h, frattini), 0 when h = frattini
};

struct ConjectureReport {
  FinitePoset poset;
  std::vector<FrattiniRow> frattini_rows;
  std::size_t gldim = 0;
  bool frattini_attained = false;  // some row reaches gldim
  bool top_attained = false;       // the row of the top element reaches gldim
  // Disk-like systems, filled only for subgroup lattices within budget.
  std::vector<std::size_t> system_gldim;
  std::vector<std::size_t> system_arrows;
  std::size_t zero_systems = 0;

  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_text() const;
};

/// Witness tables for the Frattini and monotonicity conjectures. On a raw
/// lattice-shaped poset the Frattini element of h is the meet of its lower
/// covers; throws DomainError when that meet does not exist. Never asserts.
ConjectureReport scan_conjectures(const FinitePoset& poset);
ConjectureReport scan_conjectures(const LatticePtr& lattice, std::size_t max_subgroups = 16);

}  // namespace mackey
