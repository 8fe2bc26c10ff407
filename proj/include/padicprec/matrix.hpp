#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "padicprec/errors.hpp"
#include "padicprec/padic.hpp"

namespace padicprec {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Schoolbook product; `zero` seeds each accumulator.
template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  if (a.cols() != b.rows()) fail(ErrorKind::InvalidInput, "matrix dimension mismatch");
  Matrix<T> c(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + aik * b(k, j);
    }
  return c;
}

using PadicMatrix = Matrix<PadicElem>;

inline PadicMatrix identity_matrix(const CtxPtr& ctx, std::size_t n) {
  PadicMatrix m(n, n, PadicElem::zero(ctx));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = PadicElem::one(ctx);
  return m;
}

inline PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
  const CtxPtr ctx = a.rows() > 0 && a.cols() > 0 ? a(0, 0).ctx() : nullptr;
  return multiply(a, b, PadicElem::zero(ctx));
}

/// Flat O(p^N) or jagged O(p^N_ij) precision lattice for a square matrix.
/// kInf marks exactly known entries.
class PrecisionSpec {
 public:
  PrecisionSpec() = default;
  static PrecisionSpec flat(long n) { return PrecisionSpec(n); }
  static PrecisionSpec jagged(Matrix<long> exps) { return PrecisionSpec(std::move(exps)); }

  bool is_flat() const noexcept { return std::holds_alternative<long>(spec_); }
  long flat_value() const { return std::get<long>(spec_); }
  const Matrix<long>& jagged_values() const { return std::get<Matrix<long>>(spec_); }

  long at(std::size_t i, std::size_t j) const {
    if (is_flat()) return flat_value();
    return jagged_values()(i, j);
  }

  long min_exponent(std::size_t n) const {
    if (is_flat()) return flat_value();
    long m = kInf;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m = std::min(m, at(i, j));
    return m;
  }

  long max_exponent(std::size_t n) const {
    if (is_flat()) return flat_value();
    long m = std::numeric_limits<long>::min();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m = std::max(m, at(i, j));
    return m;
  }

  /// Every entry exactly known.
  bool is_exact(std::size_t n) const { return min_exponent(n) == kInf; }

  /// Lattice shifted by k (used when the matrix is scaled by p^k).
  PrecisionSpec shifted(long k) const {
    if (is_flat()) return flat(add_sat(flat_value(), k));
    Matrix<long> m = jagged_values();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = add_sat(m(i, j), k);
    return jagged(std::move(m));
  }

  friend bool operator==(const PrecisionSpec& a, const PrecisionSpec& b) { return a.spec_ == b.spec_; }

 private:
  explicit PrecisionSpec(long n) : spec_(n) {}
  explicit PrecisionSpec(Matrix<long> m) : spec_(std::move(m)) {}
  std::variant<long, Matrix<long>> spec_{0L};
};

/// A square matrix over Q_p together with the precision lattice it is known at.
/// Entries may carry more digits than the lattice; the lattice is the contract.
struct PMatrix {
  CtxPtr ctx;
  PadicMatrix entries;
  PrecisionSpec prec;

  std::size_t n() const noexcept { return entries.rows(); }
  const PadicElem& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }

  /// Builds a matrix whose lattice is read off the entries' absolute precisions.
  static PMatrix from_entries(CtxPtr ctx, PadicMatrix entries) {
    const std::size_t n = entries.rows();
    Matrix<long> exps(n, n, kInf);
    bool flat = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        exps(i, j) = entries(i, j).absprec();
        flat = flat && exps(i, j) == exps(0, 0);
      }
    PrecisionSpec spec = n == 0 ? PrecisionSpec::flat(kInf)
                         : flat ? PrecisionSpec::flat(exps(0, 0))
                                : PrecisionSpec::jagged(std::move(exps));
    return PMatrix{std::move(ctx), std::move(entries), std::move(spec)};
  }

  /// Integer matrix at flat precision O(p^N) (N == kInf for exact entries).
  static PMatrix from_integers(const CtxPtr& ctx, const std::vector<std::vector<long>>& rows, long N) {
    const std::size_t n = rows.size();
    PadicMatrix m(n, n, PadicElem::zero(ctx));
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) fail(ErrorKind::InvalidInput, "matrix is not square");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = PadicElem::approx(ctx, mpz_class(rows[i][j]), 0, N);
    }
    return PMatrix{ctx, std::move(m), PrecisionSpec::flat(N)};
  }

  /// Checks squareness and that each entry knows at least its lattice exponent.
  void validate() const {
    if (!entries.is_square()) fail(ErrorKind::InvalidInput, "matrix is not square");
    if (!prec.is_flat()) {
      const auto& j = prec.jagged_values();
      if (j.rows() != n() || j.cols() != n()) fail(ErrorKind::InvalidInput, "jagged precision has wrong shape");
    }
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j)
        if (entries(i, j).absprec() < prec.at(i, j)) {
          fail(ErrorKind::InvalidInput, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is known to fewer digits than its lattice exponent");
        }
  }

  long min_val() const {
    long v = kInf;
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j)
        if (!entries(i, j).is_indistinguishable_zero()) v = std::min(v, entries(i, j).val());
    return v;
  }

  bool is_integral() const {
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j)
        if (!entries(i, j).is_exact_zero() && entries(i, j).val() < 0) return false;
    return true;
  }
};

/// Exact rational representatives of every entry.
inline Matrix<mpq_class> to_rational(const PadicMatrix& m) {
  return m.map([](const PadicElem& e) { return e.to_rational(); });
}

}  // namespace padicprec
