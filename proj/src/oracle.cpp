#include "mackey/oracle.hpp"

#include <algorithm>
#include <string>

#include "mackey/errors.hpp"
#include "mackey/qlinalg.hpp"

namespace mackey {

// ---------------------------------------------------------------------------
// QMatrix

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix shapes do not match");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpq_class& v = a(i, k);
      if (sgn(v) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += v * b(k, j);
    }
  }
  return c;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const mpq_class inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const mpq_class f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

QMatrix hconcat(const std::vector<const QMatrix*>& parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto* p : parts) cols += p->cols();
  QMatrix out(rows, cols);
  std::size_t off = 0;
  for (const auto* p : parts) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < p->cols(); ++j) out(i, off + j) = (*p)(i, j);
    }
    off += p->cols();
  }
  return out;
}

QMatrix select_columns(const QMatrix& m, const std::vector<std::size_t>& cols) {
  QMatrix out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
  }
  return out;
}

// X with b * X = c, for b of full column rank.
QMatrix solve(const QMatrix& b, const QMatrix& c) {
  QMatrix aug = hconcat({&b, &c}, b.rows());
  auto pivots = rref(aug);
  if (pivots.size() > b.cols() && pivots[b.cols()] >= b.cols()) {
    throw CrossCheckError("structure map does not preserve a subspace");
  }
  for (std::size_t k = 0; k < b.cols(); ++k) {
    if (k >= pivots.size() || pivots[k] != k) throw CrossCheckError("subspace basis is not independent");
  }
  QMatrix x(b.cols(), c.cols());
  for (std::size_t i = 0; i < b.cols(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) x(i, j) = aug(i, b.cols() + j);
  }
  return x;
}

}  // namespace

std::size_t rank(QMatrix m) { return rref(m).size(); }

QMatrix kernel_basis(QMatrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  QMatrix k(m.cols(), m.cols() - pivots.size());
  std::size_t out = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    k(f, out) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], out) = -m(i, f);
    ++out;
  }
  return k;
}

std::vector<std::size_t> pivot_columns(QMatrix m) { return rref(m); }

// ---------------------------------------------------------------------------
// Presheaves

Presheaf::Presheaf(PosetPtr poset, std::vector<std::size_t> dims,
                   std::map<std::pair<std::size_t, std::size_t>, QMatrix> maps)
    : poset_(std::move(poset)), dims_(std::move(dims)), maps_(std::move(maps)) {
  const auto& p = *poset_;
  if (dims_.size() != p.size()) throw DomainError("presheaf needs one dimension per element");
  for (std::size_t x = 0; x < p.size(); ++x) {
    p.down_set(x).for_each([&](std::size_t y) {
      if (y == x) return;
      auto it = maps_.find({y, x});
      if (it == maps_.end()) throw DomainError("presheaf is missing the map " + p.label(x) + " -> " + p.label(y));
      if (it->second.rows() != dims_[y] || it->second.cols() != dims_[x]) {
        throw DomainError("structure map " + p.label(x) + " -> " + p.label(y) + " has the wrong shape");
      }
    });
  }
  std::size_t related = 0;
  for (std::size_t x = 0; x < p.size(); ++x) related += p.down_set(x).count() - 1;
  if (maps_.size() != related) throw DomainError("presheaf has maps between unrelated elements");
  for (std::size_t x = 0; x < p.size(); ++x) {
    p.down_set(x).for_each([&](std::size_t y) {
      if (y == x) return;
      p.down_set(y).for_each([&](std::size_t z) {
        if (z == y) return;
        if (!(map(z, y) * map(y, x) == map(z, x))) {
          throw CrossCheckError("presheaf is not functorial at " + p.label(z) + " < " + p.label(y) + " < " + p.label(x));
        }
      });
    });
  }
}

std::size_t Presheaf::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims_) t += d;
  return t;
}

const QMatrix& Presheaf::map(std::size_t y, std::size_t x) const {
  auto it = maps_.find({y, x});
  if (it == maps_.end()) throw DomainError("no structure map between these elements");
  return it->second;
}

bool is_natural(const PresheafMap& f, const Presheaf& source, const Presheaf& target) {
  const auto& p = source.poset();
  if (f.components.size() != p.size()) return false;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (f.components[x].rows() != target.dim(x) || f.components[x].cols() != source.dim(x)) return false;
  }
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y : p.down_set(x).to_indices()) {
      if (y == x) continue;
      if (!(target.map(y, x) * f.components[x] == f.components[y] * source.map(y, x))) return false;
    }
  }
  return true;
}

namespace {

template <typename MapFn>
std::map<std::pair<std::size_t, std::size_t>, QMatrix> all_maps(const FinitePoset& p, MapFn fn) {
  std::map<std::pair<std::size_t, std::size_t>, QMatrix> maps;
  for (std::size_t x = 0; x < p.size(); ++x) {
    p.down_set(x).for_each([&](std::size_t y) {
      if (y != x) maps.emplace(std::make_pair(y, x), fn(y, x));
    });
  }
  return maps;
}

}  // namespace

Presheaf simple(const PosetPtr& poset, std::size_t x) {
  if (x >= poset->size()) throw DomainError("element index out of range");
  std::vector<std::size_t> dims(poset->size(), 0);
  dims[x] = 1;
  auto maps = all_maps(*poset, [&](std::size_t y, std::size_t w) { return QMatrix(dims[y], dims[w]); });
  return {poset, std::move(dims), std::move(maps)};
}

Presheaf representable(const PosetPtr& poset, std::size_t x) {
  if (x >= poset->size()) throw DomainError("element index out of range");
  return free_presheaf(poset, {x});
}

Presheaf free_presheaf(const PosetPtr& poset, const std::vector<std::size_t>& locations) {
  const auto& p = *poset;
  // coords[z] = generators located at or above z.
  std::vector<std::vector<std::size_t>> coords(p.size());
  for (std::size_t g = 0; g < locations.size(); ++g) {
    if (locations[g] >= p.size()) throw DomainError("element index out of range");
    p.down_set(locations[g]).for_each([&](std::size_t z) { coords[z].push_back(g); });
  }
  std::vector<std::size_t> dims;
  for (const auto& c : coords) dims.push_back(c.size());
  auto maps = all_maps(p, [&](std::size_t y, std::size_t x) {
    QMatrix m(dims[y], dims[x]);
    std::size_t i = 0;
    for (std::size_t j = 0; j < coords[x].size(); ++j) {
      while (coords[y][i] != coords[x][j]) ++i;
      m(i, j) = 1;
    }
    return m;
  });
  return {poset, std::move(dims), std::move(maps)};
}

namespace {

// Sub-presheaf with the given column bases; structure maps are induced.
SubPresheaf sub_presheaf(const Presheaf& m, std::vector<QMatrix> bases) {
  const auto& p = m.poset();
  std::vector<std::size_t> dims;
  for (const auto& b : bases) dims.push_back(b.cols());
  auto maps = all_maps(p, [&](std::size_t y, std::size_t x) { return solve(bases[y], m.map(y, x) * bases[x]); });
  Presheaf module(m.poset_ptr(), std::move(dims), std::move(maps));
  return {std::move(module), PresheafMap{std::move(bases)}};
}

}  // namespace

SubPresheaf radical(const Presheaf& m) {
  const auto& p = m.poset();
  std::vector<QMatrix> bases;
  for (std::size_t y = 0; y < p.size(); ++y) {
    std::vector<const QMatrix*> images;
    p.up_set(y).for_each([&](std::size_t x) {
      if (x != y) images.push_back(&m.map(y, x));
    });
    QMatrix all = hconcat(images, m.dim(y));
    bases.push_back(select_columns(all, pivot_columns(all)));
  }
  return sub_presheaf(m, std::move(bases));
}

std::vector<std::size_t> top_dims(const Presheaf& m) {
  auto rad = radical(m);
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < m.poset().size(); ++x) out.push_back(m.dim(x) - rad.module.dim(x));
  return out;
}

SubPresheaf kernel(const PresheafMap& f, const Presheaf& source) {
  std::vector<QMatrix> bases;
  for (const auto& c : f.components) bases.push_back(kernel_basis(c));
  if (bases.size() != source.poset().size()) throw DomainError("map has the wrong number of components");
  return sub_presheaf(source, std::move(bases));
}

ProjectiveCover projective_cover(const Presheaf& m) {
  const auto& p = m.poset();
  auto rad = radical(m);
  std::vector<std::size_t> locations;
  std::vector<std::vector<mpq_class>> lifts;  // generator value in M(location)
  for (std::size_t x = 0; x < p.size(); ++x) {
    const std::size_t d = m.dim(x);
    // [radical basis | identity]; pivots past the radical pick the top basis.
    QMatrix ident = QMatrix::identity(d);
    QMatrix all = hconcat({&rad.inclusion.components[x], &ident}, d);
    for (auto c : pivot_columns(all)) {
      if (c < rad.module.dim(x)) continue;
      locations.push_back(x);
      std::vector<mpq_class> v(d);
      v[c - rad.module.dim(x)] = 1;
      lifts.push_back(std::move(v));
    }
  }
  Presheaf module = free_presheaf(m.poset_ptr(), locations);
  PresheafMap cover;
  for (std::size_t z = 0; z < p.size(); ++z) {
    QMatrix comp(m.dim(z), module.dim(z));
    std::size_t j = 0;
    for (std::size_t g = 0; g < locations.size(); ++g) {
      if (!p.leq(z, locations[g])) continue;
      const auto& v = lifts[g];
      for (std::size_t i = 0; i < m.dim(z); ++i) {
        if (z == locations[g]) {
          comp(i, j) = v[i];
          continue;
        }
        const QMatrix& f = m.map(z, locations[g]);
        mpq_class s = 0;
        for (std::size_t k = 0; k < v.size(); ++k) s += f(i, k) * v[k];
        comp(i, j) = s;
      }
      ++j;
    }
    cover.components.push_back(std::move(comp));
  }
  return {std::move(locations), std::move(module), std::move(cover)};
}

// ---------------------------------------------------------------------------
// Resolutions

namespace {

std::size_t checked_max_len(const FinitePoset& p, std::optional<std::size_t> max_len) {
  const std::size_t h = height(p);
  if (!max_len) return h + 2;
  if (*max_len < h + 1) {
    throw DomainError("max_len " + std::to_string(*max_len) + " is below height + 1 = " + std::to_string(h + 1));
  }
  return *max_len;
}

std::vector<std::size_t> count_locations(std::size_t n, const std::vector<std::size_t>& locations) {
  std::vector<std::size_t> m(n, 0);
  for (auto l : locations) ++m[l];
  return m;
}

}  // namespace

Resolution minimal_resolution(const FinitePoset& p, std::size_t x, std::optional<std::size_t> max_len) {
  if (x >= p.size()) throw DomainError("element index out of range");
  const std::size_t limit = checked_max_len(p, max_len);
  const std::size_t n = p.size();
  std::vector<std::size_t> top_down(p.linear_extension().rbegin(), p.linear_extension().rend());

  // Degree 0: one generator at x; the first syzygy is everything below x.
  Resolution res;
  res.multiplicities.push_back(count_locations(n, {x}));
  std::vector<std::vector<SparseColumn>> omega(n);
  p.down_set(x).for_each([&](std::size_t z) {
    if (z != x) omega[z].push_back(SparseColumn{{0}, {Integer(1)}});
  });

  auto nonzero = [&] { return std::any_of(omega.begin(), omega.end(), [](const auto& o) { return !o.empty(); }); };
  while (nonzero()) {
    if (res.multiplicities.size() > limit) {
      throw CrossCheckError("resolution of " + p.label(x) + " did not stop within " + std::to_string(limit) + " steps");
    }
    // Tops: extend a basis of the radical, the sum over upper covers.
    std::vector<std::size_t> locations;
    std::vector<SparseColumn> images;
    for (auto z : top_down) {
      if (omega[z].empty()) continue;
      SparseEchelon span;
      for (auto w : p.upper_covers(z)) {
        for (const auto& v : omega[w]) span.insert(v);
      }
      for (const auto& v : omega[z]) {
        if (span.insert(v)) {
          locations.push_back(z);
          images.push_back(v);
        }
      }
      if (span.dim() != omega[z].size()) {
        throw CrossCheckError("syzygy at " + p.label(z) + " does not contain the images from above");
      }
    }
    res.multiplicities.push_back(count_locations(n, locations));

    // Next syzygy at z: kernel of the differential on generators located at or above z.
    std::vector<std::vector<SparseColumn>> next(n);
    for (std::size_t z = 0; z < n; ++z) {
      std::vector<std::size_t> cols;
      for (std::size_t g = 0; g < locations.size(); ++g) {
        if (p.leq(z, locations[g])) cols.push_back(g);
      }
      if (cols.empty()) {
        if (!omega[z].empty()) throw CrossCheckError("cover misses the syzygy at " + p.label(z));
        continue;
      }
      std::vector<SparseColumn> sub;
      for (auto g : cols) sub.push_back(images[g]);
      auto ker = sparse_kernel(std::move(sub));
      if (cols.size() - ker.size() != omega[z].size()) {
        throw CrossCheckError("resolution is not exact at " + p.label(z));
      }
      for (auto& v : ker) {
        for (auto& r : v.rows) {
          r = cols[r];
          if (locations[r] == z) throw CrossCheckError("differential leaves the radical at " + p.label(z));
        }
      }
      next[z] = std::move(ker);
    }
    omega = std::move(next);
  }
  return res;
}

Resolution minimal_resolution_presheaf(const PosetPtr& p, std::size_t x, std::optional<std::size_t> max_len) {
  const std::size_t limit = checked_max_len(*p, max_len);
  Resolution res;
  Presheaf m = simple(p, x);
  while (true) {
    auto cover = projective_cover(m);
    res.multiplicities.push_back(count_locations(p->size(), cover.locations));
    if (!is_natural(cover.cover, cover.module, m)) throw CrossCheckError("projective cover is not natural");
    auto k = kernel(cover.cover, cover.module);
    auto rad = radical(cover.module);
    for (std::size_t z = 0; z < p->size(); ++z) {
      const std::size_t image = rank(cover.cover.components[z]);
      if (image != m.dim(z) || k.module.dim(z) + image != cover.module.dim(z)) {
        throw CrossCheckError("resolution is not exact at " + p->label(z));
      }
      // Minimality: the kernel sits inside the radical of the cover.
      QMatrix both = hconcat({&rad.inclusion.components[z], &k.inclusion.components[z]}, cover.module.dim(z));
      if (rank(both) != rad.module.dim(z)) throw CrossCheckError("differential leaves the radical at " + p->label(z));
    }
    if (k.module.total_dim() == 0) break;
    if (res.multiplicities.size() > limit) {
      throw CrossCheckError("resolution of " + p->label(x) + " did not stop within " + std::to_string(limit) + " steps");
    }
    m = std::move(k.module);
  }
  return res;
}

ExtTable oracle_ext_table(const FinitePoset& p) {
  std::vector<ExtEntry> entries;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto res = minimal_resolution(p, x);
    for (std::size_t n = 0; n < res.multiplicities.size(); ++n) {
      for (std::size_t y = 0; y < p.size(); ++y) {
        if (res.multiplicities[n][y] != 0) entries.push_back({x, y, static_cast<int>(n), res.multiplicities[n][y]});
      }
    }
  }
  return {p, std::move(entries)};
}

std::size_t gldim_oracle(const FinitePoset& p) {
  if (p.empty()) throw DomainError("global dimension of the empty poset is not defined");
  std::size_t best = 0;
  for (std::size_t x = 0; x < p.size(); ++x) best = std::max(best, minimal_resolution(p, x).length());
  return best;
}

}  // namespace mackey
