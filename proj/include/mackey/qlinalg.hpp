#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "mackey/integer.hpp"
#include "mackey/posets.hpp"

namespace mackey {

/// Dense row-major matrix of arbitrary-precision integers. Rational inputs
/// are handled by clearing denominators row by row before they get here.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] ExactMatrix transpose() const;
  [[nodiscard]] std::vector<Integer> column(std::size_t j) const;
  [[nodiscard]] bool is_zero() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank(ExactMatrix m);

/// Diagonal of the Smith normal form, length min(rows, cols), each entry
/// dividing the next; zeros trail.
std::vector<Integer> smith_normal_form(ExactMatrix m);

/// Column Hermite normal form: a basis of the column lattice in lower
/// echelon form. Each basis column j has a positive pivot in row r_j with
/// r_0 < r_1 < ...; entries of row r_j in earlier columns lie in [0, pivot).
/// For a full-row-rank square result this is the canonical lower-triangular HNF.
ExactMatrix hermite_normal_form(ExactMatrix m);

/// Basis of the integer kernel {v in Z^cols : m v = 0}, as matrix columns.
ExactMatrix integer_kernel(const ExactMatrix& m);

/// Solves h x = v for integer x, where h is square lower triangular with a
/// nonzero diagonal; nullopt when v is not in the column lattice of h.
std::optional<std::vector<Integer>> solve_lower_triangular(const ExactMatrix& h, const std::vector<Integer>& v);

/// Sparse integer column; entries sorted by row.
struct SparseColumn {
  std::vector<std::size_t> rows;
  std::vector<Integer> values;
};

/// Rank over Q of a sparse matrix given by columns, by left-to-right column
/// reduction on the lowest nonzero row. Columns listed in `skip` are ignored;
/// the pivot rows of the reduced columns are appended to `pivots_out` when it
/// is non-null.
std::size_t sparse_rank(std::vector<SparseColumn> columns, const std::vector<bool>* skip = nullptr,
                        std::vector<std::size_t>* pivots_out = nullptr);

/// Basis of the rational kernel of a sparse matrix given by columns, found
/// by the same column reduction while tracking column operations. The k-th
/// basis vector ends at a distinct column index, so the basis is echelon.
std::vector<SparseColumn> sparse_kernel(std::vector<SparseColumn> columns);

/// Echelon basis of a subspace of Q^n, grown one vector at a time. Vectors
/// are reduced on their last nonzero entry.
class SparseEchelon {
 public:
  /// Adds v to the span; false when v already lies in it.
  bool insert(SparseColumn v);
  [[nodiscard]] bool contains(SparseColumn v) const;
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }

 private:
  // Reduces v in place; returns true when it becomes zero.
  bool reduce(SparseColumn& v) const;

  std::vector<SparseColumn> basis_;
  std::map<std::size_t, std::size_t> pivot_;  // last row -> basis index
};

/// Boundary map C_d -> C_{d-1} with columns indexed by d-simplices in
/// complex order and signs (-1)^i for deleting the i-th vertex. For d = 0 it
/// is the augmentation row of ones.
std::vector<SparseColumn> boundary_columns(const OrderComplex& c, int d);
ExactMatrix boundary_matrix(const OrderComplex& c, int d);
/// Transpose of boundary_matrix(c, d + 1): the coboundary C^d -> C^{d+1}.
ExactMatrix coboundary_matrix(const OrderComplex& c, int d);

/// Reduced rational cohomology dimensions, degree -> dimension, zero
/// dimensions omitted. The empty complex yields {-1: 1}.
std::map<int, std::size_t> reduced_cohomology_dims(const OrderComplex& c);

}  // namespace mackey
