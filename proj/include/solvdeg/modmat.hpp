#pragma once
// Dense matrices over a prime field GF(m), m < 2^32.

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "solvdeg/error.hpp"
#include "solvdeg/numth.hpp"

namespace solvdeg {

using u64 = std::uint64_t;

class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols, u64 mod)
      : rows_(rows), cols_(cols), mod_(mod), a_(rows * cols, 0) {
    if (mod < 2 || mod >= (u64{1} << 32)) throw Error(Errc::OutOfRange, "matrix modulus out of range");
  }

  static ModMatrix identity(std::size_t n, u64 mod) {
    ModMatrix m(n, n, mod);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static ModMatrix scalar(std::size_t n, u64 s, u64 mod) {
    ModMatrix m(n, n, mod);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s % mod;
    return m;
  }
  static ModMatrix from_rows(const std::vector<std::vector<u64>>& rows, u64 mod) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    ModMatrix m(rows.size(), c, mod);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(Errc::InvalidParams, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j] % mod;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u64 mod() const { return mod_; }

  u64& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  u64 operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<std::vector<u64>> to_rows() const {
    std::vector<std::vector<u64>> out(rows_, std::vector<u64>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  bool operator==(const ModMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && mod_ == o.mod_ && a_ == o.a_;
  }

  ModMatrix operator*(const ModMatrix& o) const {
    if (cols_ != o.rows_ || mod_ != o.mod_) throw Error(Errc::InvalidParams, "matrix shape mismatch");
    ModMatrix r(rows_, o.cols_, mod_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const u64 x = (*this)(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = (r(i, j) + x * o(k, j)) % mod_;
      }
    return r;
  }

  std::vector<u64> apply(const std::vector<u64>& v) const {
    if (v.size() != cols_) throw Error(Errc::InvalidParams, "vector length mismatch");
    std::vector<u64> r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      u64 s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s = (s + (*this)(i, j) * v[j]) % mod_;
      r[i] = s;
    }
    return r;
  }

  ModMatrix operator+(const ModMatrix& o) const {
    ModMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (r.a_[i] + o.a_[i]) % mod_;
    return r;
  }
  ModMatrix operator-(const ModMatrix& o) const {
    ModMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (r.a_[i] + mod_ - o.a_[i]) % mod_;
    return r;
  }
  ModMatrix scaled(u64 s) const {
    ModMatrix r = *this;
    for (auto& x : r.a_) x = x * (s % mod_) % mod_;
    return r;
  }

  ModMatrix transpose() const {
    ModMatrix r(cols_, rows_, mod_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  ModMatrix pow(u64 e) const {
    ModMatrix r = identity(rows_, mod_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  bool is_identity() const { return *this == identity(rows_, mod_); }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      swap_rows(piv, r);
      const u64 inv = numth::invmod((*this)(r, c), mod_);
      for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = (*this)(r, j) * inv % mod_;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        const u64 f = (*this)(i, c);
        if (!f) continue;
        for (std::size_t j = 0; j < cols_; ++j)
          (*this)(i, j) = ((*this)(i, j) + (mod_ - f) * (*this)(r, j)) % mod_;
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    ModMatrix m = *this;
    return m.rref().size();
  }

  /// Basis of {x : M x = 0}, one vector per free column, in ascending free-column order.
  std::vector<std::vector<u64>> kernel() const {
    ModMatrix m = *this;
    const auto pivots = m.rref();
    std::vector<char> is_pivot(cols_, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<u64>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<u64> v(cols_, 0);
      v[f] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (mod_ - m(r, f)) % mod_;
      basis.push_back(std::move(v));
    }
    return basis;
  }

  ModMatrix inverse() const {
    if (rows_ != cols_) throw Error(Errc::InvalidParams, "inverse of non-square matrix");
    const std::size_t n = rows_;
    ModMatrix aug(n, 2 * n, mod_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    const auto piv = aug.rref();
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error(Errc::DivisionByZero, "singular matrix");
    ModMatrix r(n, n, mod_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
  }

  /// Stack matrices vertically (same column count).
  static ModMatrix vstack(const std::vector<ModMatrix>& ms, std::size_t cols, u64 mod) {
    std::size_t rows = 0;
    for (const auto& m : ms) rows += m.rows();
    ModMatrix r(rows, cols, mod);
    std::size_t off = 0;
    for (const auto& m : ms) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j) r(off + i, j) = m(i, j);
      off += m.rows();
    }
    return r;
  }

  static ModMatrix block_diag(const ModMatrix& a, const ModMatrix& b) {
    ModMatrix r(a.rows() + b.rows(), a.cols() + b.cols(), a.mod());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
  }

 private:
  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(x, j), (*this)(y, j));
  }

  std::size_t rows_ = 0, cols_ = 0;
  u64 mod_ = 2;
  std::vector<u64> a_;
};

/// Rows of `vecs` reduced to an echelon basis of their span.
inline std::vector<std::vector<u64>> span_basis(const std::vector<std::vector<u64>>& vecs,
                                                 std::size_t dim, u64 mod) {
  if (vecs.empty()) return {};
  ModMatrix m = ModMatrix::from_rows(vecs, mod);
  const std::size_t r = m.rref().size();
  std::vector<std::vector<u64>> out;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<u64> v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = m(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

inline bool in_span(const std::vector<std::vector<u64>>& basis, const std::vector<u64>& v, u64 mod) {
  if (basis.empty()) {
    for (u64 x : v)
      if (x) return false;
    return true;
  }
  auto with = basis;
  with.push_back(v);
  return ModMatrix::from_rows(with, mod).rank() == ModMatrix::from_rows(basis, mod).rank();
}

}  // namespace solvdeg
