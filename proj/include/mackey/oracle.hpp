#pragma once

// Modules over the rational incidence algebra of a finite poset, as
// presheaves of finite-dimensional Q-vector spaces, and minimal projective
// resolutions of their simples. Nothing here looks at order complexes, so
// the Ext dimensions read off a resolution are an independent check on
// izext.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mackey/izext.hpp"
#include "mackey/posets.hpp"

namespace mackey {

/// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static QMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  [[nodiscard]] bool is_zero() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

std::size_t rank(QMatrix m);
/// Columns spanning the kernel, one per free column of the reduced form.
QMatrix kernel_basis(QMatrix m);
/// Indices of the leftmost columns that span the column space.
std::vector<std::size_t> pivot_columns(QMatrix m);

using PosetPtr = std::shared_ptr<const FinitePoset>;

/// A presheaf M on a poset: spaces M(x) = Q^dims[x] and a structure map
/// M(x) -> M(y) for every y < x. Construction checks shapes and
/// functoriality and throws CrossCheckError on a failure.
class Presheaf {
 public:
  Presheaf(PosetPtr poset, std::vector<std::size_t> dims, std::map<std::pair<std::size_t, std::size_t>, QMatrix> maps);

  [[nodiscard]] const FinitePoset& poset() const { return *poset_; }
  [[nodiscard]] const PosetPtr& poset_ptr() const { return poset_; }
  [[nodiscard]] std::size_t dim(std::size_t x) const { return dims_[x]; }
  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }
  [[nodiscard]] std::size_t total_dim() const;
  /// Structure map M(x) -> M(y), shape dims[y] x dims[x]; requires y < x.
  [[nodiscard]] const QMatrix& map(std::size_t y, std::size_t x) const;

 private:
  PosetPtr poset_;
  std::vector<std::size_t> dims_;
  std::map<std::pair<std::size_t, std::size_t>, QMatrix> maps_;  // key (y, x)
};

/// A natural transformation; components[x] has shape target.dim(x) x source.dim(x).
struct PresheafMap {
  std::vector<QMatrix> components;
};

/// True when every component has the right shape and every naturality
/// square commutes.
bool is_natural(const PresheafMap& f, const Presheaf& source, const Presheaf& target);

struct SubPresheaf {
  Presheaf module;
  PresheafMap inclusion;  // injective in every component
};

/// Q at x, zero elsewhere.
Presheaf simple(const PosetPtr& poset, std::size_t x);
/// Q at every y <= x with identity structure maps.
Presheaf representable(const PosetPtr& poset, std::size_t x);
/// Sum of representables, one per entry of `locations`. At z the
/// coordinates are the generators located at or above z, in list order.
Presheaf free_presheaf(const PosetPtr& poset, const std::vector<std::size_t>& locations);

/// At each y, the span of the images of all structure maps into M(y).
SubPresheaf radical(const Presheaf& m);
/// dim M(x) - dim radical(M)(x).
std::vector<std::size_t> top_dims(const Presheaf& m);
/// Kernel of f : source -> target, with its inclusion into source.
SubPresheaf kernel(const PresheafMap& f, const Presheaf& source);

struct ProjectiveCover {
  std::vector<std::size_t> locations;  // one generator per entry
  Presheaf module;
  PresheafMap cover;  // module -> M, surjective
};

/// Lifts a basis of the top of M. At each x the basis extends a basis of
/// the radical by standard vectors in increasing order.
ProjectiveCover projective_cover(const Presheaf& m);

/// multiplicities[n][y] = number of copies of representable(y) in degree n.
struct Resolution {
  std::vector<std::vector<std::size_t>> multiplicities;
  [[nodiscard]] std::size_t length() const { return multiplicities.size() - 1; }
};

/// Minimal projective resolution of simple(P, x), built from projective
/// covers of syzygies. Works with one global coordinate system per degree:
/// the syzygy at z is a subspace of the free module on the previous
/// generators located at or above z. Audits exactness and minimality at
/// every step and throws CrossCheckError on a failure, including a
/// resolution longer than max_len (default height(P) + 2). Throws
/// DomainError when max_len < height(P) + 1.
Resolution minimal_resolution(const FinitePoset& p, std::size_t x, std::optional<std::size_t> max_len = std::nullopt);

/// Same resolution through the Presheaf operations above. Much slower; used
/// to cross-check minimal_resolution on small posets.
Resolution minimal_resolution_presheaf(const PosetPtr& p, std::size_t x,
                                       std::optional<std::size_t> max_len = std::nullopt);

/// Every nonzero dim Ext^n(S_x, S_y) read off the minimal resolutions.
ExtTable oracle_ext_table(const FinitePoset& p);

/// Largest resolution length over all simples. Throws DomainError on the
/// empty poset.
std::size_t gldim_oracle(const FinitePoset& p);

}  // namespace mackey
