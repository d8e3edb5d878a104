#include "mackey/transfer.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mackey/errors.hpp"

namespace mackey {

TransferSystem::TransferSystem(LatticePtr lattice, std::vector<Bitset> sources)
    : lattice_(std::move(lattice)), sources_(std::move(sources)) {
  if (!lattice_) throw DomainError("transfer system needs a subgroup lattice");
  if (sources_.size() != lattice_->size()) throw DomainError("transfer relation has the wrong size");
  for (const auto& s : sources_) {
    if (s.size() != lattice_->size()) throw DomainError("transfer relation has the wrong size");
  }
}

TransferSystem TransferSystem::trivial(LatticePtr lattice) {
  const std::size_t n = lattice->size();
  std::vector<Bitset> s(n, Bitset(n));
  for (std::size_t h = 0; h < n; ++h) s[h].set(h);
  return {std::move(lattice), std::move(s)};
}

TransferSystem TransferSystem::complete(LatticePtr lattice) {
  std::vector<Bitset> s;
  for (std::size_t h = 0; h < lattice->size(); ++h) s.push_back(lattice->poset().down_set(h));
  return {std::move(lattice), std::move(s)};
}

std::vector<Arrow> TransferSystem::arrows() const {
  std::vector<Arrow> out;
  for (std::size_t h = 0; h < sources_.size(); ++h) {
    sources_[h].for_each([&](std::size_t k) {
      if (k != h) out.emplace_back(k, h);
    });
  }
  return out;
}

bool TransferSystem::is_complete() const {
  for (std::size_t h = 0; h < sources_.size(); ++h) {
    if (!(sources_[h] == lattice_->poset().down_set(h))) return false;
  }
  return true;
}

bool TransferSystem::is_subsystem_of(const TransferSystem& other) const {
  for (std::size_t h = 0; h < sources_.size(); ++h) {
    if (!sources_[h].is_subset_of(other.sources_[h])) return false;
  }
  return true;
}

std::string Violation::describe(const SubgroupLattice& lattice) const {
  const auto& p = lattice.poset();
  switch (kind) {
    case Kind::not_inclusion:
      return "transfer " + p.label(k) + " -> " + p.label(h) + " is not an inclusion";
    case Kind::not_reflexive:
      return "missing identity transfer at " + p.label(h);
    case Kind::not_transitive:
      return "transfers " + p.label(k) + " -> " + p.label(l) + " -> " + p.label(h) + " do not compose";
    case Kind::not_restriction_closed:
      return "transfer " + p.label(k) + " -> " + p.label(h) + " does not restrict to " + p.label(l);
  }
  return {};
}

TransferSystem close(const LatticePtr& lattice, const std::vector<Arrow>& generators) {
  const auto& p = lattice->poset();
  const std::size_t n = lattice->size();
  std::vector<Bitset> s(n, Bitset(n));
  for (std::size_t h = 0; h < n; ++h) s[h].set(h);
  for (auto [k, h] : generators) {
    if (k >= n || h >= n) throw DomainError("generator refers to an unknown subgroup");
    if (!p.leq(k, h)) {
      throw DomainError("generator " + p.label(k) + " -> " + p.label(h) + " is not an inclusion");
    }
    s[h].set(k);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t h = 0; h < n; ++h) {
      // Transitivity: K -> L -> H.
      Bitset grown = s[h];
      s[h].for_each([&](std::size_t l) { grown |= s[l]; });
      if (!(grown == s[h])) {
        s[h] = std::move(grown);
        changed = true;
      }
      // Restriction along every L <= H.
      s[h].for_each([&](std::size_t k) {
        p.down_set(h).for_each([&](std::size_t l) {
          const std::size_t m = lattice->meet_index(k, l);
          if (!s[l].test(m)) {
            s[l].set(m);
            changed = true;
          }
        });
      });
    }
  }
  return {lattice, std::move(s)};
}

std::optional<Violation> validate(const TransferSystem& t) {
  const auto& lattice = t.lattice();
  const auto& p = lattice.poset();
  const std::size_t n = lattice.size();
  using Kind = Violation::Kind;
  for (std::size_t h = 0; h < n; ++h) {
    if (!t.has(h, h)) return Violation{Kind::not_reflexive, h, h, h};
    std::optional<std::size_t> bad;
    t.sources(h).for_each([&](std::size_t k) {
      if (!bad && !p.leq(k, h)) bad = k;
    });
    if (bad) return Violation{Kind::not_inclusion, *bad, h, h};
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t l : t.sources(h).to_indices()) {
      Bitset missing = t.sources(l);
      missing.subtract(t.sources(h));
      if (missing.any()) return Violation{Kind::not_transitive, missing.find_first(), h, l};
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k : t.sources(h).to_indices()) {
      for (std::size_t l : p.down_set(h).to_indices()) {
        if (!t.has(lattice.meet_index(k, l), l)) return Violation{Kind::not_restriction_closed, k, h, l};
      }
    }
  }
  return std::nullopt;
}

bool is_disk_like(const TransferSystem& t) {
  std::vector<Arrow> into_top;
  const std::size_t top = t.lattice().top();
  t.sub_o().for_each([&](std::size_t k) { into_top.emplace_back(k, top); });
  return close(t.lattice_ptr(), into_top) == t;
}

std::optional<std::size_t> InseparabilityPartition::class_with_representative(std::size_t h) const {
  for (std::size_t c = 0; c < representative.size(); ++c) {
    if (representative[c] == h) return c;
  }
  return std::nullopt;
}

InseparabilityPartition inseparability_classes(const TransferSystem& t) {
  const auto& lattice = t.lattice();
  const auto& p = lattice.poset();
  const std::size_t n = lattice.size();
  std::map<Bitset, std::vector<std::size_t>> by_fingerprint;
  for (std::size_t j = 0; j < n; ++j) by_fingerprint[p.up_set(j) & t.sub_o()].push_back(j);

  InseparabilityPartition out;
  out.lattice = t.lattice_ptr();
  out.class_of.assign(n, 0);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> classes;
  for (auto& [fingerprint, members] : by_fingerprint) {
    // Members are sorted by index, a linear extension, so a unique maximum
    // must be the last one.
    const std::size_t top = members.back();
    for (auto m : members) {
      if (!p.leq(m, top)) throw CrossCheckError("inseparability class of " + p.label(top) + " has no maximum");
    }
    if (!t.sub_o().test(top)) {
      throw CrossCheckError("inseparability class maximum " + p.label(top) + " does not transfer to G");
    }
    classes.emplace_back(top, std::move(members));
  }
  std::sort(classes.begin(), classes.end());
  for (auto& [rep, members] : classes) {
    for (auto m : members) out.class_of[m] = out.classes.size();
    out.representative.push_back(rep);
    out.classes.push_back(std::move(members));
  }
  return out;
}

FinitePoset class_poset(const InseparabilityPartition& partition, std::size_t h) {
  auto c = partition.class_with_representative(h);
  if (!c) throw DomainError(partition.lattice->poset().label(h) + " is not an inseparability class representative");
  return partition.lattice->poset().induced(partition.classes[*c]);
}

DiskLikeFamily enumerate_disk_like(const LatticePtr& lattice, std::size_t max_subgroups) {
  const std::size_t n = lattice->size();
  if (n > max_subgroups) {
    throw BudgetExceeded("disk-like enumeration needs at most " + std::to_string(max_subgroups) +
                             " subgroups, the lattice has " + std::to_string(n),
                         n);
  }
  const std::size_t top = lattice->top();
  const std::size_t candidates = n - 1;  // every proper subgroup may transfer to G
  std::map<std::vector<Bitset>, TransferSystem> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << candidates); ++mask) {
    std::vector<Arrow> gens;
    for (std::size_t h = 0; h < candidates; ++h) {
      if ((mask >> h) & 1U) gens.emplace_back(h, top);
    }
    auto t = close(lattice, gens);
    seen.emplace(t.relation(), std::move(t));
  }
  DiskLikeFamily out;
  for (auto& [rel, t] : seen) out.systems.push_back(std::move(t));
  std::stable_sort(out.systems.begin(), out.systems.end(), [](const TransferSystem& a, const TransferSystem& b) {
    return a.arrows().size() < b.arrows().size();
  });
  const std::size_t m = out.systems.size();
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back("T" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) leq[i][j] = out.systems[i].is_subsystem_of(out.systems[j]);
  }
  out.inclusion = FinitePoset::from_relation(std::move(labels), leq);
  return out;
}

std::vector<Arrow> parse_generators(std::string_view text, const SubgroupLattice& lattice) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<Arrow> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("generator line " + std::to_string(lineno) + ": " + msg);
    };
    std::string from;
    std::string arrow;
    std::string to;
    std::string extra;
    if (key != "gen:") fail("expected 'gen: <label> -> <label>'");
    if (!(words >> from >> arrow >> to) || arrow != "->" || (words >> extra)) fail("expected 'gen: <label> -> <label>'");
    auto k = lattice.resolve_label(from);
    auto h = lattice.resolve_label(to);
    if (!k) fail("unknown subgroup '" + from + "'");
    if (!h) fail("unknown subgroup '" + to + "'");
    out.emplace_back(*k, *h);
  }
  return out;
}

std::vector<Arrow> read_generator_file(const std::string& path, const SubgroupLattice& lattice) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open generator file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_generators(buf.str(), lattice);
}

}  // namespace mackey
