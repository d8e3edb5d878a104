#include "mackey/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "mackey/errors.hpp"

namespace mackey {

std::uint64_t PrimePower::value() const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exponent; ++i) v *= prime;
  return v;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factorize 0");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<AbelianGroup> abelian_groups_of_order(std::uint64_t n) {
  std::vector<std::vector<PrimePower>> options{{}};
  for (auto [p, e] : factorize(n)) {
    // Partitions of e with parts in decreasing order.
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned max_part) {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (unsigned k = std::min(left, max_part); k >= 1; --k) {
        cur.push_back(k);
        rec(left - k, k);
        cur.pop_back();
      }
    };
    rec(e, e);
    std::vector<std::vector<PrimePower>> next;
    for (const auto& base : options) {
      for (const auto& part : parts) {
        auto f = base;
        for (auto k : part) f.push_back({p, k});
        next.push_back(std::move(f));
      }
    }
    options = std::move(next);
  }
  std::vector<AbelianGroup> out;
  for (auto& f : options) out.emplace_back(std::move(f));
  return out;
}

std::vector<AbelianGroup> abelian_groups_up_to(std::uint64_t max_order) {
  std::vector<AbelianGroup> out;
  for (std::uint64_t n = 1; n <= max_order; ++n) {
    for (auto& g : abelian_groups_of_order(n)) out.push_back(std::move(g));
  }
  return out;
}

AbelianGroup::AbelianGroup(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (const auto& f : factors_) {
    if (f.exponent == 0 || factorize(f.prime).size() != 1 || factorize(f.prime)[0].exponent != 1) {
      throw DomainError("factor " + std::to_string(f.prime) + "^" + std::to_string(f.exponent) +
                        " is not a positive prime power");
    }
    order_ *= f.value();
  }
}

std::vector<std::uint64_t> AbelianGroup::moduli() const {
  std::vector<std::uint64_t> n;
  n.reserve(factors_.size());
  for (const auto& f : factors_) n.push_back(f.value());
  return n;
}

bool AbelianGroup::is_cyclic() const {
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    if (factors_[i].prime == factors_[i - 1].prime) return false;
  }
  return true;
}

std::vector<std::uint64_t> AbelianGroup::invariant_factors() const {
  // Largest invariant factor collects the largest power of every prime, and so on.
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (const auto& f : factors_) by_prime[f.prime].push_back(f.value());
  std::size_t len = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.rbegin(), powers.rend());
    len = std::max(len, powers.size());
  }
  std::vector<std::uint64_t> d(len, 1);
  for (const auto& [p, powers] : by_prime) {
    for (std::size_t i = 0; i < powers.size(); ++i) d[len - 1 - i] *= powers[i];
  }
  return d;
}

std::string AbelianGroup::spec() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += '*';
    s += std::to_string(f.prime) + "^" + std::to_string(f.exponent);
  }
  return s;
}

namespace {

std::uint64_t parse_number(std::string_view text, std::string_view spec) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("malformed group spec '" + std::string(spec) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

AbelianGroup parse_group(std::string_view spec) {
  std::string s;
  for (char ch : spec) {
    if (std::isspace(static_cast<unsigned char>(ch)) == 0) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (s.empty()) throw ParseError("empty group spec");
  std::vector<PrimePower> factors;
  if (s[0] == 'c') {
    if (s == "c1") return AbelianGroup{};
    for (auto part : split(s, 'x')) {
      if (part.size() < 2 || part[0] != 'c') throw ParseError("malformed group spec '" + std::string(spec) + "'");
      std::uint64_t n = parse_number(part.substr(1), spec);
      if (n <= 1) throw DomainError("cyclic factor C" + std::to_string(n) + " is not allowed in a product");
      for (auto f : factorize(n)) factors.push_back(f);
    }
  } else {
    for (auto part : split(s, '*')) {
      auto caret = part.find('^');
      std::uint64_t p = parse_number(part.substr(0, caret), spec);
      std::uint64_t e = caret == std::string_view::npos ? 1 : parse_number(part.substr(caret + 1), spec);
      if (p <= 1 || e == 0) throw DomainError("factor " + std::string(part) + " is trivial");
      auto fp = factorize(p);
      if (fp.size() != 1 || fp[0].exponent != 1) throw DomainError(std::to_string(p) + " is not a prime");
      factors.push_back({p, static_cast<unsigned>(e)});
    }
  }
  return AbelianGroup(std::move(factors));
}

// ---------------------------------------------------------------------------
// Subgroup

namespace {

std::uint64_t det_of_triangular(const ExactMatrix& b) {
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < b.rows(); ++i) d *= static_cast<std::uint64_t>(b(i, i).to_int64());
  return d;
}

Subgroup from_generator_matrix(const AbelianGroup& g, ExactMatrix gens) {
  const auto n = g.moduli();
  const std::size_t k = n.size();
  ExactMatrix m(k, gens.cols() + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < gens.cols(); ++j) m(i, j) = floor_mod(gens(i, j), Integer(static_cast<std::int64_t>(n[i])));
    m(i, gens.cols() + i) = static_cast<std::int64_t>(n[i]);
  }
  return Subgroup::from_canonical(g, hermite_normal_form(std::move(m)));
}

}  // namespace

Subgroup Subgroup::with_order(std::uint64_t ambient_order, ExactMatrix basis) {
  Subgroup s;
  s.basis_ = std::move(basis);
  s.ambient_order_ = ambient_order;
  s.order_ = ambient_order / det_of_triangular(s.basis_);
  return s;
}

Subgroup Subgroup::from_canonical(const AbelianGroup& g, ExactMatrix basis) {
  if (basis.rows() != g.rank() || basis.cols() != g.rank()) throw DomainError("subgroup basis has the wrong shape");
  return with_order(g.order(), std::move(basis));
}

Subgroup Subgroup::generated_by(const AbelianGroup& g, const std::vector<std::vector<Integer>>& gens) {
  const std::size_t k = g.rank();
  ExactMatrix m(k, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].size() != k) throw DomainError("generator has the wrong number of coordinates");
    for (std::size_t i = 0; i < k; ++i) m(i, j) = gens[j][i];
  }
  return from_generator_matrix(g, std::move(m));
}

Subgroup Subgroup::whole(const AbelianGroup& g) {
  return from_canonical(g, ExactMatrix::identity(g.rank()));
}

Subgroup Subgroup::trivial(const AbelianGroup& g) {
  const auto n = g.moduli();
  ExactMatrix b(n.size(), n.size());
  for (std::size_t i = 0; i < n.size(); ++i) b(i, i) = static_cast<std::int64_t>(n[i]);
  return from_canonical(g, std::move(b));
}

bool Subgroup::contains(const std::vector<Integer>& x) const { return solve_lower_triangular(basis_, x).has_value(); }

bool Subgroup::contains(const Subgroup& other) const {
  for (std::size_t j = 0; j < other.basis_.cols(); ++j) {
    if (!contains(other.basis_.column(j))) return false;
  }
  return true;
}

std::vector<std::int64_t> Subgroup::key() const {
  std::vector<std::int64_t> k;
  k.reserve(basis_.rows() * basis_.cols());
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    for (std::size_t j = 0; j < basis_.cols(); ++j) k.push_back(basis_(i, j).to_int64());
  }
  return k;
}


Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.ambient_order_ != b.ambient_order_ || a.basis_.rows() != b.basis_.rows()) {
    throw DomainError("subgroups live in different groups");
  }
  const std::size_t k = a.basis_.rows();
  ExactMatrix m(k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m(i, j) = a.basis_(i, j);
      m(i, k + j) = b.basis_(i, j);
    }
  }
  return Subgroup::with_order(a.ambient_order_, hermite_normal_form(std::move(m)));
}

Subgroup meet(const Subgroup& a, const Subgroup& b) {
  if (a.ambient_order_ != b.ambient_order_ || a.basis_.rows() != b.basis_.rows()) {
    throw DomainError("subgroups live in different groups");
  }
  // L_a u = L_b v parametrises the intersection; its image under L_a spans it.
  const std::size_t k = a.basis_.rows();
  ExactMatrix m(k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m(i, j) = a.basis_(i, j);
      m(i, k + j) = -b.basis_(i, j);
    }
  }
  ExactMatrix ker = integer_kernel(m);
  ExactMatrix u(k, ker.cols());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < ker.cols(); ++j) u(i, j) = ker(i, j);
  }
  return Subgroup::with_order(a.ambient_order_, hermite_normal_form(a.basis_ * u));
}

std::vector<Integer> quotient_invariants(const Subgroup& h, const Subgroup& k) {
  const std::size_t n = h.basis().rows();
  if (k.basis().rows() != n) throw DomainError("subgroups live in different groups");
  ExactMatrix coords(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto x = solve_lower_triangular(h.basis(), k.basis().column(j));
    if (!x) throw DomainError("quotient requested for a non-contained subgroup");
    for (std::size_t i = 0; i < n; ++i) coords(i, j) = (*x)[i];
  }
  std::vector<Integer> out;
  for (auto& d : smith_normal_form(std::move(coords))) {
    if (d > Integer(1)) out.push_back(d);
  }
  return out;
}

std::size_t count_prime_power_factors(const std::vector<Integer>& invariants) {
  std::size_t total = 0;
  for (const auto& d : invariants) {
    if (!(d > Integer(1))) throw DomainError("invariant factor must exceed 1");
    total += factorize(static_cast<std::uint64_t>(d.to_int64())).size();
  }
  return total;
}

std::size_t count_prime_power_factors(const std::vector<std::uint64_t>& invariants) {
  std::size_t total = 0;
  for (auto d : invariants) {
    if (d <= 1) throw DomainError("invariant factor must exceed 1");
    total += factorize(d).size();
  }
  return total;
}

// ---------------------------------------------------------------------------
// SubgroupLattice

namespace {

// Canonical bases are built from the last column backwards. Column j has
// pivot h | n_j and tail entries below the pivot in [0, h_ii); it is valid
// iff (n_j / h) * tail lies in the lattice of the later columns, which is
// what guarantees n_j e_j is in the final lattice.
class Enumerator {
 public:
  Enumerator(const AbelianGroup& g, std::size_t max_count)
      : n_(g.moduli()), k_(n_.size()), basis_(k_, k_), max_count_(max_count) {}

  std::vector<ExactMatrix> run() {
    descend(static_cast<std::ptrdiff_t>(k_) - 1);
    return std::move(out_);
  }

 private:
  bool tail_in_later_lattice(std::size_t j, const Integer& q) const {
    std::vector<Integer> x(k_);
    for (std::size_t i = j + 1; i < k_; ++i) {
      Integer rest = q * basis_(i, j);
      for (std::size_t l = j + 1; l < i; ++l) {
        if (!x[l].is_zero()) rest -= basis_(i, l) * x[l];
      }
      if (!divides(basis_(i, i), rest)) return false;
      x[i] = div_exact(rest, basis_(i, i));
    }
    return true;
  }

  void descend(std::ptrdiff_t jj) {
    if (jj < 0) {
      out_.push_back(basis_);
      if (out_.size() > max_count_) {
        throw BudgetExceeded("subgroup enumeration exceeds " + std::to_string(max_count_) + " subgroups",
                             out_.size());
      }
      return;
    }
    const auto j = static_cast<std::size_t>(jj);
    const auto nj = static_cast<std::int64_t>(n_[j]);
    for (std::int64_t h = 1; h <= nj; ++h) {
      if (nj % h != 0) continue;
      basis_(j, j) = h;
      const Integer q(nj / h);
      for (std::size_t i = j + 1; i < k_; ++i) basis_(i, j) = 0;
      while (true) {
        if (tail_in_later_lattice(j, q)) descend(jj - 1);
        // Odometer over the tail entries.
        std::size_t i = j + 1;
        for (; i < k_; ++i) {
          basis_(i, j) += 1;
          if (basis_(i, j) < basis_(i, i)) break;
          basis_(i, j) = 0;
        }
        if (i == k_) break;
      }
    }
    basis_(j, j) = 0;
  }

  std::vector<std::uint64_t> n_;
  std::size_t k_;
  ExactMatrix basis_;
  std::size_t max_count_;
  std::vector<ExactMatrix> out_;
};

// Element bitset of a subgroup over the mixed-radix element index of G.
Bitset element_set(const ExactMatrix& basis, const std::vector<std::uint64_t>& n, std::uint64_t group_order) {
  const std::size_t k = n.size();
  Bitset elems(group_order);
  std::vector<std::int64_t> b(k * k);
  std::vector<std::int64_t> count(k);  // c_j ranges over [0, n_j / h_jj)
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) b[i * k + j] = basis(i, j).to_int64();
    count[i] = static_cast<std::int64_t>(n[i]) / b[i * k + i];
  }
  std::vector<std::int64_t> c(k, 0);
  while (true) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t xi = 0;
      for (std::size_t j = 0; j <= i; ++j) xi = (xi + c[j] * b[i * k + j]) % static_cast<std::int64_t>(n[i]);
      idx = idx * n[i] + static_cast<std::uint64_t>(xi);
    }
    elems.set(idx);
    std::size_t j = 0;
    for (; j < k; ++j) {
      if (++c[j] < count[j]) break;
      c[j] = 0;
    }
    if (j == k) break;
  }
  return elems;
}

}  // namespace

SubgroupLattice::SubgroupLattice(AbelianGroup g, std::uint64_t max_order) : group_(std::move(g)) {
  if (group_.order() > max_order) {
    throw BudgetExceeded("group order " + std::to_string(group_.order()) + " exceeds the enumeration budget of " +
                             std::to_string(max_order),
                         0);
  }
  auto bases = Enumerator(group_, 1'000'000).run();
  for (auto& b : bases) subgroups_.push_back(Subgroup::from_canonical(group_, std::move(b)));
  std::vector<std::vector<std::int64_t>> keys;
  std::vector<std::size_t> perm(subgroups_.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (const auto& s : subgroups_) keys.push_back(s.key());
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (subgroups_[a].order() != subgroups_[b].order()) return subgroups_[a].order() < subgroups_[b].order();
    return keys[a] < keys[b];
  });
  std::vector<Subgroup> sorted;
  sorted.reserve(perm.size());
  for (auto i : perm) {
    index_.emplace(keys[i], sorted.size());
    sorted.push_back(std::move(subgroups_[i]));
  }
  subgroups_ = std::move(sorted);

  const auto n = group_.moduli();
  const std::size_t count = subgroups_.size();
  std::vector<Bitset> elems;
  elems.reserve(count);
  for (const auto& s : subgroups_) elems.push_back(element_set(s.basis(), n, group_.order()));
  std::vector<Bitset> down(count, Bitset(count));
  for (std::size_t h = 0; h < count; ++h) {
    for (std::size_t k = 0; k <= h; ++k) {
      if (subgroups_[h].order() % subgroups_[k].order() != 0) continue;
      if (elems[k].is_subset_of(elems[h])) down[h].set(k);
    }
  }

  std::vector<std::string> labels;
  std::map<std::uint64_t, std::size_t> per_order;
  for (const auto& s : subgroups_) ++per_order[s.order()];
  std::map<std::uint64_t, std::size_t> seen;
  const char prefix = group_.is_cyclic() ? 'C' : 'H';
  for (const auto& s : subgroups_) {
    std::string label = std::string(1, prefix) + std::to_string(s.order());
    if (per_order[s.order()] > 1) label += "_" + std::to_string(++seen[s.order()]);
    labels.push_back(std::move(label));
  }
  poset_ = FinitePoset::from_down_sets(std::move(labels), std::move(down));
}

std::optional<std::size_t> SubgroupLattice::index_of(const Subgroup& h) const {
  auto it = index_.find(h.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SubgroupLattice::meet_index(std::size_t a, std::size_t b) const {
  // Index order is a linear extension, so the last common lower bound is the meet.
  return (poset_.down_set(a) & poset_.down_set(b)).find_last();
}

std::size_t SubgroupLattice::join_index(std::size_t a, std::size_t b) const {
  return (poset_.up_set(a) & poset_.up_set(b)).find_first();
}

std::size_t SubgroupLattice::frattini(std::size_t h) const {
  const auto& maximal = poset_.lower_covers(h);
  if (maximal.empty()) return h;
  std::size_t phi = maximal.front();
  for (auto m : maximal) phi = meet_index(phi, m);
  return phi;
}

std::vector<Integer> SubgroupLattice::quotient_invariants(std::size_t h, std::size_t k) const {
  return mackey::quotient_invariants(subgroups_.at(h), subgroups_.at(k));
}

std::vector<Integer> SubgroupLattice::invariants(std::size_t h) const { return quotient_invariants(h, bottom()); }

std::optional<std::size_t> SubgroupLattice::resolve_label(std::string_view label) const {
  if (label == "e") return bottom();
  if (label == "G") return top();
  return poset_.index_of(label);
}

Subgroup frattini(const SubgroupLattice& lattice, std::size_t h) { return lattice.subgroup(lattice.frattini(h)); }

}  // namespace mackey
