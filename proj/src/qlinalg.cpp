#include "mackey/qlinalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mackey {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<Integer> ExactMatrix::column(std::size_t j) const {
  std::vector<Integer> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  ExactMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

std::size_t rank(ExactMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Smallest nonzero entry by bit length keeps the Bareiss quotients small.
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      if (best == rows || m(i, c).bit_length() < m(best, c).bit_length()) best = i;
    }
    if (best == rows) continue;
    if (best != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(best, j), m(r, j));
    }
    const Integer pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer factor = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = div_exact(pivot * m(i, j) - factor * m(r, j), prev);
      }
      m(i, c) = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

std::vector<Integer> smith_normal_form(ExactMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(a, j), m(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, a), m(i, b));
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t bi = rows;
      std::size_t bj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m(i, j).is_zero()) continue;
          if (bi == rows || abs(m(i, j)) < abs(m(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) break;  // remaining block is zero
      swap_rows(t, bi);
      swap_cols(t, bj);
      const Integer pivot = m(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t).is_zero()) continue;
        Integer q = floor_div(m(i, t), pivot);
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        clean = clean && m(i, t).is_zero();
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j).is_zero()) continue;
        Integer q = floor_div(m(t, j), pivot);
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        clean = clean && m(t, j).is_zero();
      }
      if (!clean) continue;
      // Pivot must divide the rest of the block; otherwise fold in a bad row.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!divides(pivot, m(i, j))) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) m(t, j) += m(bad, j);
    }
  }
  std::vector<Integer> diag;
  diag.reserve(n);
  for (std::size_t t = 0; t < n; ++t) diag.push_back(abs(m(t, t)));
  return diag;
}

namespace {

// Column-echelon reduction of the first `active_rows` rows; column operations
// are applied to every row so that appended rows track the transform.
// Returns the number of pivot columns, which come first.
std::size_t column_echelon(ExactMatrix& m, std::size_t active_rows, bool reduce_left,
                           std::vector<std::size_t>* pivot_rows = nullptr) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, a), m(i, b));
  };
  auto axpy = [&](std::size_t dst, const Integer& q, std::size_t src) {  // col dst -= q * col src
    for (std::size_t i = 0; i < rows; ++i) {
      if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
    }
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < active_rows && c < cols; ++i) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = c; j < cols; ++j) {
        if (m(i, j).is_zero()) continue;
        if (best == cols || abs(m(i, j)) < abs(m(i, best))) best = j;
      }
      if (best == cols) break;
      if (best != c) swap_cols(best, c);
      bool done = true;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (m(i, j).is_zero()) continue;
        axpy(j, floor_div(m(i, j), m(i, c)), c);
        done = done && m(i, j).is_zero();
      }
      if (done) break;
    }
    if (m(i, c).is_zero()) continue;
    if (m(i, c).sign() < 0) {
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = -m(r, c);
    }
    if (reduce_left) {
      for (std::size_t j = 0; j < c; ++j) {
        if (!m(i, j).is_zero()) axpy(j, floor_div(m(i, j), m(i, c)), c);
      }
    }
    if (pivot_rows != nullptr) pivot_rows->push_back(i);
    ++c;
  }
  return c;
}

}  // namespace

ExactMatrix hermite_normal_form(ExactMatrix m) {
  const std::size_t r = column_echelon(m, m.rows(), true);
  ExactMatrix out(m.rows(), r);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < r; ++j) out(i, j) = m(i, j);
  }
  return out;
}

ExactMatrix integer_kernel(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  ExactMatrix aug(rows + cols, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
  }
  for (std::size_t j = 0; j < cols; ++j) aug(rows + j, j) = 1;
  const std::size_t r = column_echelon(aug, rows, false);
  ExactMatrix ker(cols, cols - r);
  for (std::size_t j = r; j < cols; ++j) {
    for (std::size_t i = 0; i < cols; ++i) ker(i, j - r) = aug(rows + i, j);
  }
  return ker;
}

std::optional<std::vector<Integer>> solve_lower_triangular(const ExactMatrix& h, const std::vector<Integer>& v) {
  const std::size_t n = h.rows();
  if (h.cols() != n || v.size() != n) throw std::invalid_argument("triangular solve shape mismatch");
  std::vector<Integer> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer rest = v[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (!h(i, j).is_zero() && !x[j].is_zero()) rest -= h(i, j) * x[j];
    }
    if (!divides(h(i, i), rest)) return std::nullopt;
    x[i] = div_exact(rest, h(i, i));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Sparse reduction

namespace {

// a * x - b * y, merged by row; zero entries dropped.
SparseColumn combine(const Integer& a, const SparseColumn& x, const Integer& b, const SparseColumn& y) {
  SparseColumn out;
  out.rows.reserve(x.rows.size() + y.rows.size());
  out.values.reserve(x.rows.size() + y.rows.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.rows.size() || j < y.rows.size()) {
    if (j == y.rows.size() || (i < x.rows.size() && x.rows[i] < y.rows[j])) {
      out.rows.push_back(x.rows[i]);
      out.values.push_back(a * x.values[i]);
      ++i;
    } else if (i == x.rows.size() || y.rows[j] < x.rows[i]) {
      out.rows.push_back(y.rows[j]);
      out.values.push_back(-(b * y.values[j]));
      ++j;
    } else {
      Integer v = a * x.values[i] - b * y.values[j];
      if (!v.is_zero()) {
        out.rows.push_back(x.rows[i]);
        out.values.push_back(std::move(v));
      }
      ++i;
      ++j;
    }
  }
  return out;
}

void normalise(SparseColumn& col) {
  if (col.values.empty()) return;
  Integer g = 0;
  for (const auto& v : col.values) {
    g = gcd(g, v);
    if (g.is_one()) return;
  }
  for (auto& v : col.values) v = div_exact(v, g);
}

}  // namespace

std::size_t sparse_rank(std::vector<SparseColumn> columns, const std::vector<bool>* skip,
                        std::vector<std::size_t>* pivots_out) {
  std::vector<std::size_t> pivot_col;  // row -> reducing column, or npos
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::size_t r = 0;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (skip != nullptr && (*skip)[j]) continue;
    SparseColumn& col = columns[j];
    while (!col.rows.empty()) {
      const std::size_t low = col.rows.back();
      if (low >= pivot_col.size()) pivot_col.resize(low + 1, none);
      const std::size_t p = pivot_col[low];
      if (p == none) break;
      const SparseColumn& other = columns[p];
      Integer g = gcd(col.values.back(), other.values.back());
      col = combine(div_exact(other.values.back(), g), col, div_exact(col.values.back(), g), other);
      normalise(col);
    }
    if (col.rows.empty()) continue;
    pivot_col[col.rows.back()] = j;
    if (pivots_out != nullptr) pivots_out->push_back(col.rows.back());
    ++r;
  }
  return r;
}

std::vector<SparseColumn> sparse_kernel(std::vector<SparseColumn> columns) {
  std::map<std::size_t, std::size_t> pivot_col;  // last row -> reduced column
  std::vector<SparseColumn> track(columns.size());
  std::vector<SparseColumn> kernel;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    SparseColumn& col = columns[j];
    track[j] = SparseColumn{{j}, {Integer(1)}};
    while (!col.rows.empty()) {
      auto it = pivot_col.find(col.rows.back());
      if (it == pivot_col.end()) break;
      const std::size_t p = it->second;
      Integer g = gcd(col.values.back(), columns[p].values.back());
      Integer a = div_exact(columns[p].values.back(), g);
      Integer b = div_exact(col.values.back(), g);
      col = combine(a, col, b, columns[p]);
      track[j] = combine(a, track[j], b, track[p]);
      // Common content of the column and its history.
      Integer c = 0;
      for (const auto& v : col.values) c = gcd(c, v);
      for (const auto& v : track[j].values) c = gcd(c, v);
      if (!c.is_one()) {
        for (auto& v : col.values) v = div_exact(v, c);
        for (auto& v : track[j].values) v = div_exact(v, c);
      }
    }
    if (col.rows.empty()) {
      kernel.push_back(std::move(track[j]));
    } else {
      pivot_col[col.rows.back()] = j;
    }
  }
  return kernel;
}

bool SparseEchelon::reduce(SparseColumn& v) const {
  normalise(v);
  while (!v.rows.empty()) {
    auto it = pivot_.find(v.rows.back());
    if (it == pivot_.end()) return false;
    const SparseColumn& b = basis_[it->second];
    Integer g = gcd(v.values.back(), b.values.back());
    v = combine(div_exact(b.values.back(), g), v, div_exact(v.values.back(), g), b);
    normalise(v);
  }
  return true;
}

bool SparseEchelon::insert(SparseColumn v) {
  if (reduce(v)) return false;
  pivot_[v.rows.back()] = basis_.size();
  basis_.push_back(std::move(v));
  return true;
}

bool SparseEchelon::contains(SparseColumn v) const { return reduce(v); }

std::vector<SparseColumn> boundary_columns(const OrderComplex& c, int d) {
  std::vector<SparseColumn> cols;
  const std::size_t n = c.count(d);
  cols.reserve(n);
  if (d == 0) {
    for (std::size_t k = 0; k < n; ++k) cols.push_back(SparseColumn{{0}, {Integer(1)}});
    return cols;
  }
  std::vector<std::uint32_t> face(static_cast<std::size_t>(d));
  std::vector<std::pair<std::size_t, int>> entries;
  for (std::size_t k = 0; k < n; ++k) {
    auto s = c.simplex(d, k);
    entries.clear();
    for (int i = 0; i <= d; ++i) {
      std::size_t w = 0;
      for (int t = 0; t <= d; ++t) {
        if (t != i) face[w++] = s[static_cast<std::size_t>(t)];
      }
      auto pos = c.find(face);
      if (!pos) throw std::logic_error("order complex is not closed under faces");
      entries.emplace_back(*pos, (i % 2 == 0) ? 1 : -1);
    }
    std::sort(entries.begin(), entries.end());
    SparseColumn col;
    for (auto [row, sign] : entries) {
      col.rows.push_back(row);
      col.values.emplace_back(sign);
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

ExactMatrix boundary_matrix(const OrderComplex& c, int d) {
  const std::size_t rows = d == 0 ? 1 : c.count(d - 1);
  auto cols = boundary_columns(c, d);
  ExactMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t t = 0; t < cols[j].rows.size(); ++t) m(cols[j].rows[t], j) = cols[j].values[t];
  }
  return m;
}

ExactMatrix coboundary_matrix(const OrderComplex& c, int d) { return boundary_matrix(c, d + 1).transpose(); }

std::map<int, std::size_t> reduced_cohomology_dims(const OrderComplex& c) {
  std::map<int, std::size_t> out;
  if (c.empty()) {
    out[-1] = 1;
    return out;
  }
  const int top = c.dimension();
  // rank_of[d] = rank of the boundary map out of dimension d; rank_of[0] is
  // the augmentation. Computed from the top down so that pivot rows of
  // boundary d+1 can be skipped as columns of boundary d.
  std::vector<std::size_t> rank_of(static_cast<std::size_t>(top) + 2, 0);
  std::vector<std::size_t> pivots;
  for (int d = top; d >= 1; --d) {
    std::vector<bool> skip(c.count(d), false);
    for (auto p : pivots) skip[p] = true;
    pivots.clear();
    rank_of[static_cast<std::size_t>(d)] = sparse_rank(boundary_columns(c, d), &skip, &pivots);
  }
  rank_of[0] = 1;
  for (int d = 0; d <= top; ++d) {
    const auto du = static_cast<std::size_t>(d);
    const std::size_t betti = c.count(d) - rank_of[du] - rank_of[du + 1];
    if (betti != 0) out[d] = betti;
  }
  return out;
}

}  // namespace mackey
