#pragma once

#include <vector>

#include "mackey/groups.hpp"
#include "support/element_engine.hpp"

namespace testsupport {

using mackey::abelian_groups_up_to;

inline std::vector<std::int64_t> moduli64(const mackey::AbelianGroup& g) {
  std::vector<std::int64_t> n;
  for (auto v : g.moduli()) n.push_back(static_cast<std::int64_t>(v));
  return n;
}

/// Element list of a lattice subgroup, closed from its basis columns.
inline ElementSet elements_of(const ElementEngine& engine, const mackey::Subgroup& s) {
  std::vector<Element> gens;
  for (std::size_t j = 0; j < s.basis().cols(); ++j) {
    Element e;
    for (const auto& v : s.basis().column(j)) e.push_back(v.to_int64());
    gens.push_back(e);
  }
  return engine.closure(gens);
}

}  // namespace testsupport
