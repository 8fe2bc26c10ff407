#pragma once

// Exact reference computations over Q on the rational representatives of
// p-adic data. These never see precision; they are the ground truth that the
// capped-precision algorithms are checked against.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "padicprec/errors.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/polyring.hpp"

namespace padicprec {

/// Exact polynomial over Q, lowest degree first, trailing zeros trimmed.
using RatPoly = std::vector<mpq_class>;
using RatMatrix = Matrix<mpq_class>;

namespace ratpoly {

inline void trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatPoly add(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline RatPoly scale(const RatPoly& a, const mpq_class& s) {
  RatPoly r = a;
  for (auto& c : r) c *= s;
  trim(r);
  return r;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

/// Remainder modulo a monic polynomial.
inline RatPoly rem(RatPoly a, const RatPoly& m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t k = a.size(); k-- > dm;) {
    const mpq_class lead = a[k];
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= dm; ++i) a[k - dm + i] -= lead * m[i];
  }
  if (a.size() > dm) a.resize(dm);
  trim(a);
  return a;
}

inline mpq_class eval(const RatPoly& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

}  // namespace ratpoly

inline RatPoly to_rational(const PPoly& p) {
  RatPoly r;
  for (const auto& c : p.coeffs()) r.push_back(c.to_rational());
  ratpoly::trim(r);
  return r;
}

/// Exact polynomial as a PPoly with exact coefficients (denominators must be powers of p).
inline PPoly to_padic_poly(const CtxPtr& ctx, const RatPoly& r) {
  std::vector<PadicElem> cs;
  for (const auto& c : r) cs.push_back(PadicElem::from_rational(ctx, c, kInf));
  return PPoly(ctx, std::move(cs));
}

/// Determinant of a square polynomial matrix by Laplace expansion over row
/// subsets (O(2^n n) polynomial products).
inline RatPoly laplace_det(const Matrix<RatPoly>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return {mpq_class(1)};
  if (n > 20) fail(ErrorKind::InvalidInput, "Laplace expansion limited to n <= 20");
  // dp[mask]: signed sum over assignments of the first popcount(mask) rows to the columns in mask.
  std::vector<RatPoly> dp(std::size_t{1} << n);
  dp[0] = {mpq_class(1)};
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (dp[mask].empty()) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (1u << c)) continue;
      if (a(row, c).empty()) continue;
      const int inversions = std::popcount(mask >> (c + 1));
      RatPoly term = ratpoly::mul(dp[mask], a(row, c));
      if (inversions % 2) term = ratpoly::scale(term, -1);
      auto& slot = dp[mask | (1u << c)];
      slot = ratpoly::add(slot, term);
    }
  }
  return dp[(std::size_t{1} << n) - 1];
}

/// X*I - M as a polynomial matrix.
inline Matrix<RatPoly> char_matrix(const RatMatrix& m) {
  const std::size_t n = m.rows();
  Matrix<RatPoly> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatPoly e;
      if (m(i, j) != 0) e.push_back(-m(i, j));
      if (i == j) {
        e.resize(2);
        e[1] = 1;
      }
      ratpoly::trim(e);
      a(i, j) = e;
    }
  return a;
}

/// det(X - M) by cofactor expansion.
inline RatPoly oracle_charpoly(const RatMatrix& m) { return laplace_det(char_matrix(m)); }

/// com(X - M), i.e. the transposed cofactor matrix of X - M, by cofactor expansion.
inline Matrix<RatPoly> oracle_adjugate(const RatMatrix& m) {
  const std::size_t n = m.rows();
  const Matrix<RatPoly> a = char_matrix(m);
  Matrix<RatPoly> adj(n, n);
  if (n == 1) {
    adj(0, 0) = {mpq_class(1)};
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Matrix<RatPoly> minor(n - 1, n - 1);
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = a(i, j);
        }
        ++mi;
      }
      RatPoly d = laplace_det(minor);
      if ((r + c) % 2) d = ratpoly::scale(d, -1);
      adj(c, r) = d;
    }
  return adj;
}

/// Division-free characteristic polynomial det(X - M) (Berkowitz), generic over
/// any commutative ring type. Coefficients lowest degree first, monic.
template <class T>
std::vector<T> berkowitz(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.rows();
  // poly holds coefficients from the highest degree down.
  std::vector<T> poly{one};
  for (std::size_t k = 0; k < n; ++k) {
    // Toeplitz column: 1, -a_kk, -R C, -R A C, ..., -R A^(k-1) C.
    std::vector<T> t;
    t.reserve(k + 2);
    t.push_back(one);
    t.push_back(zero - a(k, k));
    std::vector<T> w(k, zero);
    for (std::size_t i = 0; i < k; ++i) w[i] = a(i, k);
    for (std::size_t step = 0; step < k; ++step) {
      T rc = zero;
      for (std::size_t i = 0; i < k; ++i) rc = rc + a(k, i) * w[i];
      t.push_back(zero - rc);
      if (step + 1 < k) {
        std::vector<T> nw(k, zero);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) nw[i] = nw[i] + a(i, j) * w[j];
        w = std::move(nw);
      }
    }
    std::vector<T> next(k + 2, zero);
    for (std::size_t r = 0; r < k + 2; ++r)
      for (std::size_t c = 0; c <= r && c < poly.size(); ++c) next[r] = next[r] + t[r - c] * poly[c];
    poly = std::move(next);
  }
  return std::vector<T>(poly.rbegin(), poly.rend());
}

inline RatPoly berkowitz_charpoly(const RatMatrix& m) {
  RatPoly r = berkowitz(m, mpq_class(0), mpq_class(1));
  ratpoly::trim(r);
  return r;
}

/// com(X - M) from the characteristic polynomial: coefficient of X^k is
/// sum_{i > k} a_i M^(i-1-k). Division-free.
inline Matrix<RatPoly> cayley_hamilton_adjugate(const RatMatrix& m, const RatPoly& chi) {
  const std::size_t n = m.rows();
  Matrix<RatPoly> adj(n, n);
  // B_{n-1} = I, B_{k-1} = M B_k + a_k I.
  RatMatrix b(n, n, mpq_class(0));
  for (std::size_t i = 0; i < n; ++i) b(i, i) = 1;
  std::vector<RatMatrix> coeffs(n);
  coeffs[n - 1] = b;
  for (std::size_t k = n - 1; k-- > 0;) {
    RatMatrix nb = multiply(m, coeffs[k + 1], mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) nb(i, i) += chi[k + 1];
    coeffs[k] = std::move(nb);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatPoly e(n);
      for (std::size_t k = 0; k < n; ++k) e[k] = coeffs[k](i, j);
      ratpoly::trim(e);
      adj(i, j) = std::move(e);
    }
  return adj;
}

/// Exact inverse over Q by Gauss-Jordan elimination.
inline RatMatrix exact_inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv(n, n, mpq_class(0));
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) fail(ErrorKind::SingularToPrecision, "exact matrix is singular");
    a.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    const mpq_class s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const mpq_class f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Valuations of the elementary divisors over Z_(p) of a (possibly rectangular)
/// rational matrix, in nondecreasing order; kInf for the rank defect.
inline std::vector<long> exact_sigma_valuations(RatMatrix a, const mpz_class& p) {
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t steps = std::min(rows, cols);
  std::vector<long> out;
  for (std::size_t k = 0; k < steps; ++k) {
    long best = kInf;
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const long v = detail::valuation(a(i, j), p);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == kInf) {
      out.resize(steps, kInf);
      return out;
    }
    out.push_back(best);
    a.swap_rows(k, bi);
    a.swap_cols(k, bj);
    const mpq_class piv = a(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (a(i, k) == 0) continue;
      const mpq_class f = a(i, k) / piv;
      for (std::size_t j = k; j < cols; ++j) a(i, j) -= f * a(k, j);
    }
    // Column clearing does not change the remaining block once the pivot
    // column below the pivot is zero, so only the row pass is needed.
  }
  return out;
}

}  // namespace padicprec
