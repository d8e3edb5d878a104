#include "mackey/posets.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mackey/errors.hpp"

namespace mackey {

// ---------------------------------------------------------------------------
// FinitePoset

FinitePoset FinitePoset::from_relation(std::vector<std::string> labels,
                                       const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = labels.size();
  if (leq.size() != n) throw DomainError("relation size does not match element count");
  std::vector<Bitset> down(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw DomainError("relation matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (leq[i][j]) down[j].set(i);
    }
  }
  return from_down_sets(std::move(labels), std::move(down));
}

FinitePoset FinitePoset::from_down_sets(std::vector<std::string> labels, std::vector<Bitset> down) {
  const std::size_t n = labels.size();
  if (down.size() != n) throw DomainError("relation size does not match element count");
  for (std::size_t j = 0; j < n; ++j) {
    if (down[j].size() != n) throw DomainError("relation row has wrong length");
    if (!down[j].test(j)) throw DomainError("relation is not reflexive at " + labels[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::string failure;
    down[j].for_each([&](std::size_t i) {
      if (!failure.empty() || i == j) return;
      if (down[i].test(j)) failure = "relation is not antisymmetric: " + labels[i] + ", " + labels[j];
      else if (!down[i].is_subset_of(down[j])) failure = "relation is not transitive below " + labels[j];
    });
    if (!failure.empty()) throw DomainError(failure);
  }
  FinitePoset p;
  p.labels_ = std::move(labels);
  p.down_ = std::move(down);
  p.finish();
  return p;
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels, const std::vector<Cover>& covers) {
  const std::size_t n = labels.size();
  std::vector<std::vector<std::size_t>> below(n);
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> above(n);
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw DomainError("cover refers to an unknown element");
    if (lo == hi) throw DomainError("cover relates " + labels[lo] + " to itself");
    below[hi].push_back(lo);
    above[lo].push_back(hi);
    ++indegree[hi];
  }
  // Kahn's algorithm; down-sets accumulate along the topological order.
  std::vector<Bitset> down(n, Bitset(n));
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++processed;
    down[v].set(v);
    for (auto lo : below[v]) down[v] |= down[lo];
    for (auto hi : above[v]) {
      if (--indegree[hi] == 0) ready.push_back(hi);
    }
  }
  if (processed != n) throw DomainError("cover relation contains a cycle");
  return from_down_sets(std::move(labels), std::move(down));
}

FinitePoset FinitePoset::chain(std::size_t length) {
  std::vector<std::string> labels;
  std::vector<Cover> covers;
  for (std::size_t i = 0; i <= length; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return from_covers(std::move(labels), covers);
}

FinitePoset FinitePoset::discrete(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return from_covers(std::move(labels), {});
}

void FinitePoset::finish() {
  const std::size_t n = labels_.size();
  up_.assign(n, Bitset(n));
  for (std::size_t j = 0; j < n; ++j) {
    down_[j].for_each([&](std::size_t i) { up_[i].set(j); });
  }
  // Down-set sizes strictly increase along the order, so sorting by them is a
  // linear extension.
  linear_.resize(n);
  std::iota(linear_.begin(), linear_.end(), std::size_t{0});
  std::vector<std::size_t> dsize(n);
  for (std::size_t j = 0; j < n; ++j) dsize[j] = down_[j].count();
  std::stable_sort(linear_.begin(), linear_.end(),
                   [&](std::size_t a, std::size_t b) { return dsize[a] < dsize[b]; });
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[linear_[k]] = k;

  lower_.assign(n, {});
  upper_.assign(n, {});
  covers_.clear();
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> strict_below;
    down_[x].for_each([&](std::size_t y) {
      if (y != x) strict_below.push_back(y);
    });
    std::sort(strict_below.begin(), strict_below.end(),
              [&](std::size_t a, std::size_t b) { return position[a] > position[b]; });
    Bitset dominated(n);
    for (auto y : strict_below) {
      if (dominated.test(y)) continue;
      lower_[x].push_back(y);
      dominated |= down_[y];
    }
    std::sort(lower_[x].begin(), lower_[x].end());
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y : lower_[x]) {
      upper_[y].push_back(x);
      covers_.emplace_back(y, x);
    }
  }
  for (auto& u : upper_) std::sort(u.begin(), u.end());
  std::sort(covers_.begin(), covers_.end());
  natural_ = std::all_of(covers_.begin(), covers_.end(), [](const Cover& c) { return c.first < c.second; });
}

std::optional<std::size_t> FinitePoset::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

Bitset FinitePoset::full_mask() const {
  Bitset m(size());
  m.set_all();
  return m;
}

FinitePoset FinitePoset::induced(const Bitset& mask) const { return induced(mask.to_indices()); }

FinitePoset FinitePoset::induced(const std::vector<std::size_t>& elements) const {
  const std::size_t m = elements.size();
  std::vector<std::string> labels;
  labels.reserve(m);
  for (auto e : elements) labels.push_back(labels_.at(e));
  std::vector<Bitset> down(m, Bitset(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (leq(elements[a], elements[b])) down[b].set(a);
    }
  }
  FinitePoset p;
  p.labels_ = std::move(labels);
  p.down_ = std::move(down);
  p.finish();
  return p;
}

// ---------------------------------------------------------------------------
// OrderComplex

OrderComplex::OrderComplex(std::vector<std::vector<std::uint32_t>> flat_by_dim) : flat_(std::move(flat_by_dim)) {
  while (!flat_.empty() && flat_.back().empty()) flat_.pop_back();
}

std::size_t OrderComplex::count(int d) const {
  if (d < 0 || d > dimension()) return 0;
  return flat_[static_cast<std::size_t>(d)].size() / static_cast<std::size_t>(d + 1);
}

std::span<const std::uint32_t> OrderComplex::simplex(int d, std::size_t k) const {
  const auto stride = static_cast<std::size_t>(d + 1);
  return {flat_.at(static_cast<std::size_t>(d)).data() + k * stride, stride};
}

std::vector<std::vector<std::uint32_t>> OrderComplex::simplices(int d) const {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t k = 0; k < count(d); ++k) {
    auto s = simplex(d, k);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

std::optional<std::size_t> OrderComplex::find(std::span<const std::uint32_t> chain) const {
  const int d = static_cast<int>(chain.size()) - 1;
  if (d < 0 || d > dimension()) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = count(d);
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto s = simplex(d, mid);
    if (std::lexicographical_compare(s.begin(), s.end(), chain.begin(), chain.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count(d) && std::ranges::equal(simplex(d, lo), chain)) return lo;
  return std::nullopt;
}

std::size_t OrderComplex::total_simplices() const {
  std::size_t t = 0;
  for (int d = 0; d <= dimension(); ++d) t += count(d);
  return t;
}

// ---------------------------------------------------------------------------
// Intervals, height, products

Bitset open_interval_mask(const FinitePoset& p, std::size_t x, std::size_t y) {
  if (x >= p.size() || y >= p.size()) throw DomainError("interval endpoint out of range");
  Bitset m(p.size());
  if (!p.less(y, x)) return m;
  m = p.down_set(x) & p.up_set(y);
  m.reset(x);
  m.reset(y);
  return m;
}

Bitset closed_interval_mask(const FinitePoset& p, std::size_t x, std::size_t y) {
  if (x >= p.size() || y >= p.size()) throw DomainError("interval endpoint out of range");
  if (!p.leq(y, x)) return Bitset(p.size());
  return p.down_set(x) & p.up_set(y);
}

FinitePoset open_interval(const FinitePoset& p, std::size_t x, std::size_t y) {
  return p.induced(open_interval_mask(p, x, y));
}

std::vector<std::size_t> ranks(const FinitePoset& p) {
  std::vector<std::size_t> r(p.size(), 0);
  for (auto x : p.linear_extension()) {
    for (auto y : p.lower_covers(x)) r[x] = std::max(r[x], r[y] + 1);
  }
  return r;
}

std::size_t height(const FinitePoset& p) {
  auto r = ranks(p);
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

std::size_t height(const FinitePoset& p, const Bitset& mask) {
  std::vector<std::size_t> r(p.size(), 0);
  std::size_t best = 0;
  for (auto x : p.linear_extension()) {
    if (!mask.test(x)) continue;
    Bitset below = p.down_set(x) & mask;
    below.reset(x);
    below.for_each([&](std::size_t y) { r[x] = std::max(r[x], r[y] + 1); });
    best = std::max(best, r[x]);
  }
  return best;
}

OrderComplex order_complex(const FinitePoset& p, std::size_t max_simplices) {
  return order_complex(p, p.full_mask(), max_simplices);
}

OrderComplex order_complex(const FinitePoset& p, const Bitset& mask, std::size_t max_simplices) {
  std::vector<std::vector<std::uint32_t>> flat;
  std::vector<std::uint32_t> chain;
  // frontier[d] holds the candidates above the top of a chain with d + 1 elements.
  std::vector<Bitset> frontier(p.size() + 1, Bitset(p.size()));
  std::size_t produced = 0;

  std::function<void()> extend = [&]() {
    const std::size_t d = chain.size() - 1;
    if (flat.size() <= d) flat.emplace_back();
    flat[d].insert(flat[d].end(), chain.begin(), chain.end());
    if (++produced > max_simplices) {
      throw BudgetExceeded("order complex exceeds " + std::to_string(max_simplices) + " simplices", produced);
    }
    const Bitset& cand = frontier[d];
    for (std::size_t w = cand.find_first(); w != Bitset::npos; w = cand.find_next(w)) {
      frontier[d + 1] = cand & p.up_set(w);
      frontier[d + 1].reset(w);
      chain.push_back(static_cast<std::uint32_t>(w));
      extend();
      chain.pop_back();
    }
  };

  for (std::size_t v = mask.find_first(); v != Bitset::npos; v = mask.find_next(v)) {
    frontier[0] = p.up_set(v) & mask;
    frontier[0].reset(v);
    chain.assign(1, static_cast<std::uint32_t>(v));
    extend();
  }
  return OrderComplex(std::move(flat));
}

FinitePoset product(const FinitePoset& p, const FinitePoset& q) {
  const std::size_t m = q.size();
  const std::size_t n = p.size() * m;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) labels.push_back("(" + p.label(i) + "," + q.label(j) + ")");
  }
  std::vector<Bitset> down(n, Bitset(n));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto& row = down[i * m + j];
      p.down_set(i).for_each([&](std::size_t a) {
        q.down_set(j).for_each([&](std::size_t b) { row.set(a * m + b); });
      });
    }
  }
  return FinitePoset::from_down_sets(std::move(labels), std::move(down));
}

// ---------------------------------------------------------------------------
// Beat-point core

namespace {

// Maximum of a set that is known to have at most one maximal element
// candidate; with a natural labelling this is the highest index.
std::size_t last_in_linear_order(const FinitePoset& p, const Bitset& s, const std::vector<std::size_t>& pos) {
  if (p.naturally_labeled()) return s.find_last();
  std::size_t best = Bitset::npos;
  s.for_each([&](std::size_t i) {
    if (best == Bitset::npos || pos[i] > pos[best]) best = i;
  });
  return best;
}

std::size_t first_in_linear_order(const FinitePoset& p, const Bitset& s, const std::vector<std::size_t>& pos) {
  if (p.naturally_labeled()) return s.find_first();
  std::size_t best = Bitset::npos;
  s.for_each([&](std::size_t i) {
    if (best == Bitset::npos || pos[i] < pos[best]) best = i;
  });
  return best;
}

}  // namespace

Bitset core_mask(const FinitePoset& p, Bitset mask) {
  std::vector<std::size_t> pos(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) pos[p.linear_extension()[k]] = k;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = mask.find_first(); x != Bitset::npos; x = mask.find_next(x)) {
      if (mask.count() <= 1) return mask;
      Bitset below = p.down_set(x) & mask;
      below.reset(x);
      if (below.any()) {
        std::size_t top = last_in_linear_order(p, below, pos);
        if (below.is_subset_of(p.down_set(top))) {
          mask.reset(x);
          changed = true;
          continue;
        }
      }
      Bitset above = p.up_set(x) & mask;
      above.reset(x);
      if (above.any()) {
        std::size_t bottom = first_in_linear_order(p, above, pos);
        if (above.is_subset_of(p.up_set(bottom))) {
          mask.reset(x);
          changed = true;
        }
      }
    }
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

struct IsoSearch {
  const FinitePoset& a;
  const FinitePoset& b;
  std::vector<std::pair<std::size_t, std::size_t>> sig_a, sig_b;
  std::vector<std::size_t> order;  // elements of a in assignment order
  std::vector<std::size_t> image;
  std::vector<bool> used;

  bool assign(std::size_t k) {
    if (k == order.size()) return true;
    const std::size_t x = order[k];
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (used[y] || sig_a[x] != sig_b[y]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t) {
        const std::size_t u = order[t];
        ok = a.leq(u, x) == b.leq(image[u], y) && a.leq(x, u) == b.leq(y, image[u]);
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (assign(k + 1)) return true;
      used[y] = false;
    }
    return false;
  }
};

}  // namespace

bool are_isomorphic(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size() || a.covers().size() != b.covers().size()) return false;
  IsoSearch s{a, b, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) s.sig_a.emplace_back(a.down_set(i).count(), a.up_set(i).count());
  for (std::size_t i = 0; i < b.size(); ++i) s.sig_b.emplace_back(b.down_set(i).count(), b.up_set(i).count());
  auto sa = s.sig_a;
  auto sb = s.sig_b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  s.order = a.linear_extension();
  s.image.assign(a.size(), 0);
  s.used.assign(b.size(), false);
  return s.assign(0);
}

FinitePoset random_poset(std::mt19937& rng, std::size_t n, double density) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution edge(density);
  std::vector<Cover> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (edge(rng)) edges.emplace_back(order[a], order[b]);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return FinitePoset::from_covers(std::move(labels), edges);
}

// ---------------------------------------------------------------------------
// Text format

std::string write_poset_text(const FinitePoset& p) {
  std::ostringstream out;
  out << "elements:";
  for (const auto& l : p.labels()) out << ' ' << l;
  out << '\n';
  for (auto [lo, hi] : p.covers()) out << "cover: " << p.label(lo) << " < " << p.label(hi) << '\n';
  return out.str();
}

FinitePoset parse_poset_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::vector<std::string>> labels;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Cover> covers;
  auto fail = [&](const std::string& msg) {
    throw ParseError("poset line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    if (key == "elements:") {
      if (labels) fail("duplicate elements line");
      labels.emplace();
      std::string w;
      while (words >> w) {
        if (!index.emplace(w, labels->size()).second) fail("duplicate element '" + w + "'");
        labels->push_back(w);
      }
    } else if (key == "cover:") {
      if (!labels) fail("cover before elements line");
      std::string lo;
      std::string op;
      std::string hi;
      std::string extra;
      if (!(words >> lo >> op >> hi) || op != "<" || (words >> extra)) fail("expected 'cover: a < b'");
      auto il = index.find(lo);
      auto ih = index.find(hi);
      if (il == index.end()) fail("unknown element '" + lo + "'");
      if (ih == index.end()) fail("unknown element '" + hi + "'");
      covers.emplace_back(il->second, ih->second);
    } else {
      fail("unrecognised directive '" + key + "'");
    }
  }
  if (!labels) throw ParseError("poset text has no elements line");
  try {
    return FinitePoset::from_covers(std::move(*labels), covers);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid poset: ") + e.what());
  }
}

FinitePoset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open poset file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_poset_text(buf.str());
}

std::string to_dot(const FinitePoset& p, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n  rankdir=BT;\n";
  for (const auto& l : p.labels()) out << "  \"" << l << "\";\n";
  for (auto [lo, hi] : p.covers()) out << "  \"" << p.label(lo) << "\" -> \"" << p.label(hi) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace mackey
