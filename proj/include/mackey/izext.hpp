#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mackey/groups.hpp"
#include "mackey/posets.hpp"

namespace mackey {

/// How interval cohomology is obtained. `literal` builds the order complex of
/// the whole open interval; `core` first strips beat points, which keeps the
/// homotopy type and usually shrinks the complex by orders of magnitude.
enum class ExtMethod { core, literal };

/// dim Ext^n(S_x, S_y) for every n with a nonzero value:
/// {0: 1} when x = y, {} when y is not below x, and otherwise
/// n -> dim H~^{n-2}(|I(x, y)|), so an empty interval gives {1: 1}.
std::map<int, std::size_t> ext_dims(const FinitePoset& p, std::size_t x, std::size_t y,
                                    ExtMethod method = ExtMethod::core);

struct ExtEntry {
  std::size_t x;
  std::size_t y;
  int n;
  std::size_t dim;
  friend bool operator==(const ExtEntry&, const ExtEntry&) = default;
};

/// Every nonzero dim Ext^n(S_x, S_y), sorted by (x, y, n).
class ExtTable {
 public:
  ExtTable(FinitePoset poset, std::vector<ExtEntry> entries);

  [[nodiscard]] const FinitePoset& poset() const { return poset_; }
  [[nodiscard]] const std::vector<ExtEntry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t dim(std::size_t x, std::size_t y, int n) const;
  [[nodiscard]] int max_degree() const;
  /// {"schema": 1, "poset_labels": [...], "entries": [{"x", "y", "n", "dim"}]}
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_tsv() const;

 private:
  FinitePoset poset_;
  std::vector<ExtEntry> entries_;
};

ExtTable ext_table(const FinitePoset& p, ExtMethod method = ExtMethod::core);

/// A nonzero top-dimensional cycle in |I(x, y)| built from a Boolean
/// sublattice of [y, x] of rank long(y, x). Returns false when no such
/// sublattice is found greedily; true is a proof that Ext^n != 0 with
/// n = long(y, x).
bool has_top_cycle_witness(const FinitePoset& p, std::size_t x, std::size_t y);

/// Largest n with Ext^n(S_x, S_y) != 0, or nullopt when y is not below x.
std::optional<int> top_ext_degree(const FinitePoset& p, std::size_t x, std::size_t y);

struct GldimResult {
  std::size_t gldim = 0;
  std::size_t x = 0;  // a pair realising gldim (x = y when gldim is 0)
  std::size_t y = 0;
};

/// Global dimension of the rational incidence algebra: the largest degree
/// of a nonzero Ext between simples. Searches degrees from height(P)
/// downwards. Throws DomainError on the empty poset.
GldimResult gldim_incidence_detailed(const FinitePoset& p);
std::size_t gldim_incidence(const FinitePoset& p);

struct FrattiniRealization {
  std::size_t subgroup;  // H maximising the top degree of (H, Phi(H))
  std::size_t frattini;  // Phi(H)
  std::size_t degree;
  std::size_t gldim;     // gldim_incidence of the whole lattice
};

/// Throws CrossCheckError if the best (H, Phi(H)) degree differs from the
/// global dimension of the lattice.
FrattiniRealization frattini_realization(const SubgroupLattice& lattice);

}  // namespace mackey
