#include "mackey/izext.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "mackey/errors.hpp"
#include "mackey/qlinalg.hpp"

namespace mackey {

std::map<int, std::size_t> ext_dims(const FinitePoset& p, std::size_t x, std::size_t y, ExtMethod method) {
  if (x >= p.size() || y >= p.size()) throw DomainError("element index out of range");
  if (x == y) return {{0, 1}};
  if (!p.less(y, x)) return {};
  Bitset mask = open_interval_mask(p, x, y);
  if (method == ExtMethod::core) mask = core_mask(p, std::move(mask));
  std::map<int, std::size_t> out;
  for (auto [d, dim] : reduced_cohomology_dims(order_complex(p, mask))) out[d + 2] = dim;
  return out;
}

// ---------------------------------------------------------------------------
// ExtTable

ExtTable::ExtTable(FinitePoset poset, std::vector<ExtEntry> entries)
    : poset_(std::move(poset)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const ExtEntry& a, const ExtEntry& b) {
    return std::tie(a.x, a.y, a.n) < std::tie(b.x, b.y, b.n);
  });
}

std::size_t ExtTable::dim(std::size_t x, std::size_t y, int n) const {
  for (const auto& e : entries_) {
    if (e.x == x && e.y == y && e.n == n) return e.dim;
  }
  return 0;
}

int ExtTable::max_degree() const {
  int best = 0;
  for (const auto& e : entries_) best = std::max(best, e.n);
  return best;
}

std::string ExtTable::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["poset_labels"] = poset_.labels();
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    j["entries"].push_back({{"x", poset_.label(e.x)}, {"y", poset_.label(e.y)}, {"n", e.n}, {"dim", e.dim}});
  }
  return j.dump(2) + "\n";
}

std::string ExtTable::to_tsv() const {
  std::ostringstream out;
  out << "x\ty\tn\tdim\n";
  for (const auto& e : entries_) {
    out << poset_.label(e.x) << '\t' << poset_.label(e.y) << '\t' << e.n << '\t' << e.dim << '\n';
  }
  return out.str();
}

ExtTable ext_table(const FinitePoset& p, ExtMethod method) {
  std::vector<ExtEntry> entries;
  for (std::size_t x = 0; x < p.size(); ++x) {
    p.down_set(x).for_each([&](std::size_t y) {
      for (auto [n, dim] : ext_dims(p, x, y, method)) entries.push_back({x, y, n, dim});
    });
  }
  return {p, std::move(entries)};
}

// ---------------------------------------------------------------------------
// Top-cycle witness

namespace {

// rank[z] = longest chain from y to z, for z in the closed interval [y, x];
// follows Hasse covers, which stay inside an interval.
std::unordered_map<std::size_t, std::size_t> interval_ranks(const FinitePoset& p, std::size_t x, const Bitset& closed) {
  std::unordered_map<std::size_t, std::size_t> rank;
  auto visit = [&](std::size_t z) {
    std::size_t r = 0;
    for (auto w : p.lower_covers(z)) {
      if (closed.test(w)) r = std::max(r, rank[w] + 1);
    }
    rank[z] = r;
  };
  if (p.naturally_labeled()) {
    closed.for_each(visit);
  } else {
    for (auto z : p.linear_extension()) {
      if (closed.test(z)) visit(z);
      if (z == x) break;
    }
  }
  return rank;
}

std::size_t interval_length(const FinitePoset& p, std::size_t x, std::size_t y) {
  const Bitset closed = closed_interval_mask(p, x, y);
  if (closed.none()) return 0;
  return interval_ranks(p, x, closed).at(x);
}

class LeastUpperBound {
 public:
  LeastUpperBound(const FinitePoset& p, const Bitset& closed) : p_(p), closed_(closed), pos_(p.size()) {
    for (std::size_t k = 0; k < p.size(); ++k) pos_[p.linear_extension()[k]] = k;
  }

  std::optional<std::size_t> operator()(std::size_t a, std::size_t b) const {
    Bitset common = p_.up_set(a) & p_.up_set(b) & closed_;
    if (common.none()) return std::nullopt;
    std::size_t m = Bitset::npos;
    common.for_each([&](std::size_t i) {
      if (m == Bitset::npos || pos_[i] < pos_[m]) m = i;
    });
    if (!common.is_subset_of(p_.up_set(m))) return std::nullopt;
    return m;
  }

 private:
  const FinitePoset& p_;
  const Bitset& closed_;
  std::vector<std::size_t> pos_;
};

constexpr std::size_t max_witness_rank = 9;

}  // namespace

bool has_top_cycle_witness(const FinitePoset& p, std::size_t x, std::size_t y) {
  if (x == y || !p.less(y, x)) return false;
  const Bitset closed = closed_interval_mask(p, x, y);
  auto rank = interval_ranks(p, x, closed);
  const std::size_t n = rank.at(x);
  if (n == 1) return true;  // empty interval: H~^{-1} = Q
  if (n > max_witness_rank) return false;

  LeastUpperBound lub(p, closed);
  std::vector<std::size_t> atoms;
  std::size_t current = y;
  for (auto a : p.upper_covers(y)) {
    if (!closed.test(a)) continue;
    auto j = lub(current, a);
    if (!j || rank.at(*j) != atoms.size() + 1) continue;
    atoms.push_back(a);
    current = *j;
    if (atoms.size() == n) break;
  }
  if (atoms.size() != n) return false;

  // b[T] for every subset T of the atoms, built by adding the highest bit.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::size_t> b(subsets, y);
  for (std::size_t t = 1; t < subsets; ++t) {
    const std::size_t hi = static_cast<std::size_t>(63 - __builtin_clzll(t));
    auto j = lub(b[t ^ (std::size_t{1} << hi)], atoms[hi]);
    if (!j) return false;
    b[t] = *j;
  }
  for (std::size_t t = 0; t < subsets; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (((t >> i) & 1U) == 0 && !p.less(b[t], b[t | (std::size_t{1} << i)])) return false;
    }
  }

  // z = sum over permutations of sign * (b[pi_1] < b[pi_1 pi_2] < ...), a
  // chain of n - 1 elements in the open interval.
  std::map<std::vector<std::uint32_t>, long> cycle;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    std::vector<std::uint32_t> chain;
    std::size_t t = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      t |= std::size_t{1} << perm[i];
      chain.push_back(static_cast<std::uint32_t>(b[t]));
    }
    cycle[chain] += inversions % 2 == 0 ? 1 : -1;
  } while (std::next_permutation(perm.begin(), perm.end()));

  bool nonzero = false;
  std::map<std::vector<std::uint32_t>, long> boundary;
  for (const auto& [chain, coeff] : cycle) {
    if (coeff == 0) continue;
    nonzero = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      auto face = chain;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      boundary[face] += (i % 2 == 0 ? 1 : -1) * coeff;
    }
  }
  if (!nonzero) return false;
  return std::all_of(boundary.begin(), boundary.end(), [](const auto& kv) { return kv.second == 0; });
}

std::optional<int> top_ext_degree(const FinitePoset& p, std::size_t x, std::size_t y) {
  if (x == y) return 0;
  if (!p.less(y, x)) return std::nullopt;
  if (has_top_cycle_witness(p, x, y)) return static_cast<int>(interval_length(p, x, y));
  auto dims = ext_dims(p, x, y);
  if (dims.empty()) return std::nullopt;
  return dims.rbegin()->first;
}

// ---------------------------------------------------------------------------
// Global dimension

GldimResult gldim_incidence_detailed(const FinitePoset& p) {
  if (p.empty()) throw DomainError("global dimension of the empty poset is not defined");
  const auto r = ranks(p);
  const std::size_t h = height(p);
  GldimResult best_full;  // best degree among fully computed pairs
  bool have_full = false;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> length;

  for (std::size_t n = h; n >= 1; --n) {
    // Pairs whose longest chain is exactly n; longer ones were handled at
    // earlier levels and shorter ones cannot carry Ext^n.
    std::vector<std::pair<std::size_t, std::size_t>> level;
    for (std::size_t x = 0; x < p.size(); ++x) {
      p.down_set(x).for_each([&](std::size_t y) {
        if (y == x || r[x] < r[y] + n) return;
        auto [it, fresh] = length.try_emplace({x, y}, 0);
        if (fresh) it->second = interval_length(p, x, y);
        if (it->second == n) level.emplace_back(x, y);
      });
    }
    for (auto [x, y] : level) {
      if (has_top_cycle_witness(p, x, y)) return {n, x, y};
    }
    for (auto [x, y] : level) {
      auto dims = ext_dims(p, x, y);
      if (dims.empty()) continue;
      const auto top = static_cast<std::size_t>(dims.rbegin()->first);
      if (!have_full || top > best_full.gldim) best_full = {top, x, y};
      have_full = true;
    }
    if (have_full && best_full.gldim >= n) return best_full;
  }
  return {0, 0, 0};
}

std::size_t gldim_incidence(const FinitePoset& p) { return gldim_incidence_detailed(p).gldim; }

FrattiniRealization frattini_realization(const SubgroupLattice& lattice) {
  const auto& p = lattice.poset();
  FrattiniRealization best{lattice.bottom(), lattice.bottom(), 0, 0};
  for (std::size_t h = 0; h < lattice.size(); ++h) {
    const std::size_t phi = lattice.frattini(h);
    const auto degree = static_cast<std::size_t>(top_ext_degree(p, h, phi).value_or(0));
    if (degree >= best.degree) best = {h, phi, degree, 0};
  }
  best.gldim = gldim_incidence(p);
  if (best.degree != best.gldim) {
    throw CrossCheckError("Frattini realisation for " + lattice.group().spec() + ": best (H, Phi H) degree " +
                          std::to_string(best.degree) + " differs from global dimension " +
                          std::to_string(best.gldim));
  }
  return best;
}

}  // namespace mackey
