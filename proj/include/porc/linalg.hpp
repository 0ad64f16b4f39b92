#pragma once

// Dense linear algebra over GF(p): row reduction, rank, kernels, affine
// solution sets. Matrices are small (at most a few dozen columns).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "porc/ffield.hpp"

namespace porc {

using Vec = std::vector<Residue>;

class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Residue> v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }

  void truncate_rows(std::size_t n) {
    rows_ = n;
    a_.resize(n * cols_);
  }

  void swap_rows(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(r, c), (*this)(s, c));
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  const std::vector<Residue>& data() const noexcept { return a_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Residue> a_;
};

/// In-place reduced row echelon form; zero rows are dropped. Returns pivot columns.
inline std::vector<std::size_t> rref(DenseMatrix& m, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const Residue inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Residue factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return pivots;
}

inline std::size_t rank(DenseMatrix m, const Field& f) { return rref(m, f).size(); }

/// Reduce v modulo the row space of an RREF matrix with the given pivots.
inline void reduce_against(std::span<Residue> v, const DenseMatrix& rr,
                           const std::vector<std::size_t>& pivots, const Field& f) {
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Residue factor = v[pivots[i]];
    if (factor == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(factor, rr(i, j)));
  }
}

inline bool is_zero(std::span<const Residue> v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

/// Basis of {x : A x = 0} (column vectors x), one basis vector per free column.
inline std::vector<Vec> nullspace(DenseMatrix a, const Field& f) {
  const auto pivots = rref(a, f);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(a(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solution set x0 + span(directions) of A x = b.
struct AffineSpace {
  Vec origin;
  std::vector<Vec> directions;
};

/// Solve A x = b; nullopt when inconsistent.
inline std::optional<AffineSpace> solve_affine(const DenseMatrix& a, const Vec& b, const Field& f) {
  DenseMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref(aug, f);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  AffineSpace s;
  s.origin.assign(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) s.origin[pivots[i]] = aug(i, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(aug(i, free));
    s.directions.push_back(std::move(v));
  }
  return s;
}

/// Index of a vector in base-p odometer order (coordinate 0 least significant).
inline std::uint64_t vec_index(std::span<const Residue> v, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

inline Vec vec_from_index(std::uint64_t idx, std::size_t len, std::uint32_t p) {
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = static_cast<Residue>(idx % p);
    idx /= p;
  }
  return v;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace porc
