#pragma once

// Matrix-level algorithms over Z_p / Q_p:
//  - approximate Hessenberg form with an exact change of basis,
//  - Smith normal form and the inverse derived from it,
//  - division-free com(X - H) and chi_H through the series ring Z_p[[X]],
//  - com(X - M) mod chi_M as a rank-one product.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "padicprec/errors.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/polyring.hpp"

namespace padicprec {

using PolyMatrix = Matrix<PPoly>;

namespace detail {

inline CtxPtr ctx_of(const PadicMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).ctx()) return m(i, j).ctx();
  fail(ErrorKind::InvalidInput, "matrix carries no p-adic context");
}

inline void require_integral(const PadicMatrix& m, const char* who) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_exact_zero() && m(i, j).val() < 0) {
        fail(ErrorKind::NegativeValuation, std::string(who) + " requires an integral matrix");
      }
}

/// Smallest valuation among entries with a known digit (kInf if none).
inline long min_valuation(const PadicMatrix& m) {
  long v = kInf;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_indistinguishable_zero()) v = std::min(v, m(i, j).val());
  return v;
}

inline PadicMatrix shifted(const PadicMatrix& m, long k) {
  return m.map([k](const PadicElem& e) { return e.shifted(k); });
}

/// Integer lift of y / x (val(y) >= val(x)); the lift is taken modulo the
/// precision both operands support, or exactly when x is +-p^v.
inline PadicElem shear_coefficient(const PadicElem& y, const PadicElem& x) {
  const CtxPtr& ctx = x.ctx() ? x.ctx() : y.ctx();
  const mpz_class& p = ctx->p;
  const long dv = y.val() - x.val();
  long rel = std::min(y.relprec(), x.relprec());
  if (rel == kInf) {
    if (x.unit() == 1 || x.unit() == -1) return PadicElem::exact(ctx, y.unit() * x.unit(), dv);
    rel = ctx->default_prec;
  }
  const mpz_class mod = pow_p(p, rel);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), x.unit().get_mpz_t(), mod.get_mpz_t());
  mpz_class q = mod_pk(y.unit() * inv, p, rel);
  return PadicElem::exact(ctx, q, dv);
}

/// Relative precision that no finite entry exceeds (at least the context default).
inline long working_relprec(const PadicMatrix& m) {
  long r = detail::ctx_of(m)->default_prec;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).relprec() != kInf) r = std::max(r, m(i, j).relprec());
  return r;
}

/// Inverse of a unit; exact units are inverted to `rel` digits instead of the context default.
inline PadicElem unit_inverse(const PadicElem& u, long rel) {
  if (!u.is_exact() || u.unit() == 1 || u.unit() == -1) return u.inv();
  ++op_counters().inversions;
  if (u.val() != 0) ++op_counters().nonunit_inversions;
  const mpz_class& p = u.p();
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), u.unit().get_mpz_t(), pow_p(p, rel).get_mpz_t());
  return PadicElem::approx(u.ctx(), inv, -u.val(), -u.val() + rel);
}

}  // namespace detail

/// H = P M P^-1 with H approximately Hessenberg and P an exact integer matrix
/// of unit determinant. P_inv is kept alongside, also exact.
struct HessenbergForm {
  PadicMatrix H;
  PadicMatrix P;
  PadicMatrix P_inv;
  std::vector<std::string> diagnostics;
};

inline HessenbergForm hessenberg(const PadicMatrix& m) {
  const std::size_t n = m.rows();
  if (!m.is_square()) fail(ErrorKind::InvalidInput, "hessenberg needs a square matrix");
  HessenbergForm out;
  out.H = m;
  if (n == 0) return out;
  const CtxPtr ctx = detail::ctx_of(m);
  out.P = identity_matrix(ctx, n);
  out.P_inv = identity_matrix(ctx, n);
  PadicMatrix& h = out.H;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    // Pivot: minimal valuation among rows j+1.., ties to the smallest row.
    std::size_t piv = n;
    long best = kInf;
    for (std::size_t i = j + 1; i < n; ++i) {
      const PadicElem& e = h(i, j);
      if (e.is_indistinguishable_zero()) continue;
      if (e.val() < best) {
        best = e.val();
        piv = i;
      }
    }
    if (piv == n) {
      out.diagnostics.push_back("column " + std::to_string(j) + ": no pivot with a known digit");
      continue;
    }
    h.swap_rows(piv, j + 1);
    h.swap_cols(piv, j + 1);
    out.P.swap_rows(piv, j + 1);
    out.P_inv.swap_cols(piv, j + 1);
    const PadicElem x = h(j + 1, j);
    for (std::size_t i = j + 2; i < n; ++i) {
      const PadicElem y = h(i, j);
      if (y.is_indistinguishable_zero()) continue;
      const PadicElem t = detail::shear_coefficient(y, x);
      // T = I - t E_{i,j+1}: row i -= t row j+1, then column j+1 += t column i.
      for (std::size_t c = 0; c < n; ++c) {
        h(i, c) -= t * h(j + 1, c);
        out.P(i, c) -= t * out.P(j + 1, c);
      }
      for (std::size_t r = 0; r < n; ++r) {
        h(r, j + 1) += t * h(r, i);
        out.P_inv(r, j + 1) += t * out.P_inv(r, i);
      }
    }
  }
  return out;
}

inline HessenbergForm hessenberg(const PMatrix& m) { return hessenberg(m.entries); }

/// Smith normal form M = Pl * Delta * Qr over Z_p. Delta holds exact powers of p
/// with nondecreasing exponents; Pl_inv and Qr_inv are tracked alongside.
struct SNFDecomp {
  PadicMatrix Pl, Delta, Qr;
  PadicMatrix Pl_inv, Qr_inv;
  std::vector<long> sigma_vals;

  long cond() const { return sigma_vals.empty() ? 0 : sigma_vals.back(); }
};

inline SNFDecomp snf(const PadicMatrix& m) {
  const std::size_t n = m.rows();
  if (!m.is_square()) fail(ErrorKind::InvalidInput, "snf needs a square matrix");
  detail::require_integral(m, "snf");
  SNFDecomp out;
  if (n == 0) return out;
  const CtxPtr ctx = detail::ctx_of(m);
  PadicMatrix a = m;
  const long rel = detail::working_relprec(m);
  // Row operations accumulate in L (= Pl^-1), column operations in R (= Qr^-1).
  PadicMatrix L = identity_matrix(ctx, n), R = identity_matrix(ctx, n);
  PadicMatrix Pl = identity_matrix(ctx, n), Qr = identity_matrix(ctx, n);
  for (std::size_t k = 0; k < n; ++k) {
    long best = kInf, fuzz = kInf;
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const PadicElem& e = a(i, j);
        if (e.is_exact_zero()) continue;
        if (e.is_indistinguishable_zero()) {
          fuzz = std::min(fuzz, e.val());
        } else if (e.val() < best) {
          best = e.val();
          bi = i;
          bj = j;
        }
      }
    if (best == kInf || fuzz <= best) {
      fail(ErrorKind::SingularToPrecision,
           "elementary divisor " + std::to_string(k + 1) + " cannot be resolved at the given precision");
    }
    a.swap_rows(k, bi);
    L.swap_rows(k, bi);
    Pl.swap_cols(k, bi);
    a.swap_cols(k, bj);
    R.swap_cols(k, bj);
    Qr.swap_rows(k, bj);
    const PadicElem piv = a(k, k);
    const PadicElem unit_inv = detail::unit_inverse(piv.shifted(-best), rel);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_exact_zero()) continue;
      const PadicElem f = a(i, k).shifted(-best) * unit_inv;
      for (std::size_t c = k + 1; c < n; ++c) a(i, c) -= f * a(k, c);
      a(i, k) = PadicElem::zero(ctx);
      for (std::size_t c = 0; c < n; ++c) L(i, c) -= f * L(k, c);
      for (std::size_t r = 0; r < n; ++r) Pl(r, k) += f * Pl(r, i);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_exact_zero()) continue;
      const PadicElem g = a(k, j).shifted(-best) * unit_inv;
      a(k, j) = PadicElem::zero(ctx);
      for (std::size_t r = 0; r < n; ++r) R(r, j) -= g * R(r, k);
      for (std::size_t c = 0; c < n; ++c) Qr(k, c) += g * Qr(j, c);
    }
    out.sigma_vals.push_back(best);
  }
  // Absorb the unit parts of the pivots into Pl so that Delta is an exact power of p.
  out.Delta = PadicMatrix(n, n, PadicElem::zero(ctx));
  for (std::size_t k = 0; k < n; ++k) {
    const PadicElem u = a(k, k).shifted(-out.sigma_vals[k]);
    const PadicElem u_inv = detail::unit_inverse(u, rel);
    for (std::size_t r = 0; r < n; ++r) Pl(r, k) *= u;
    for (std::size_t c = 0; c < n; ++c) L(k, c) *= u_inv;
    out.Delta(k, k) = PadicElem::exact(ctx, mpz_class(1), out.sigma_vals[k]);
  }
  out.Pl = std::move(Pl);
  out.Qr = std::move(Qr);
  out.Pl_inv = std::move(L);
  out.Qr_inv = std::move(R);
  return out;
}

inline SNFDecomp snf(const PMatrix& m) { return snf(m.entries); }

/// M^-1 = Qr^-1 Delta^-1 Pl^-1 for an integral matrix known at flat O(p^m) with m > 2 cond(M).
inline PadicMatrix inverse_via_snf(const PMatrix& m) {
  const std::size_t n = m.n();
  const SNFDecomp d = snf(m.entries);
  const long prec = m.prec.min_exponent(n);
  if (prec != kInf && prec <= 2 * d.cond()) {
    fail(ErrorKind::InsufficientPrecision, "precision O(p^" + std::to_string(prec) + ") with cond(M) = " +
                                               std::to_string(d.cond()) + " leaves no certified digit");
  }
  PadicMatrix scaled = d.Qr_inv;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) = scaled(r, c).shifted(-d.sigma_vals[c]);
  return scaled * d.Pl_inv;
}

/// Inverse over Q_p of any square matrix, through the SNF of a scaled copy.
inline PadicMatrix inverse(const PadicMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const long v = detail::min_valuation(m);
  if (v == kInf) fail(ErrorKind::SingularToPrecision, "matrix has no known digit");
  const PadicMatrix integral = detail::shifted(m, -v);
  const SNFDecomp d = snf(integral);
  PadicMatrix scaled = d.Qr_inv;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) = scaled(r, c).shifted(-d.sigma_vals[c] - v);
  return scaled * d.Pl_inv;
}

/// com(X - H) and chi_H.
struct AdjugateResult {
  PolyMatrix C;
  PPoly chi;
};

/// Division-free com(X - H) and chi_H for an integral matrix (Hessenberg shape
/// keeps the cost at O(n^3) series operations, but any integral H is accepted).
///
/// Works in Z_p[[X]] / X^(n+1) on U = 1 - X H. Every pivot U_ii is congruent to
/// 1 mod X, so eliminations only invert series with constant term exactly 1.
/// With L U R = D (L, R unitriangular), com(U) = R diag(prod_{k != i} D_kk) L;
/// then com(X - H) = com(1 - X H)^rec(n-1) and chi_H = det(1 - X H)^rec(n).
inline AdjugateResult adjugate_hessenberg(const PadicMatrix& h) {
  const std::size_t n = h.rows();
  if (!h.is_square()) fail(ErrorKind::InvalidInput, "adjugate needs a square matrix");
  detail::require_integral(h, "adjugate_hessenberg");
  AdjugateResult out;
  if (n == 0) return out;
  const CtxPtr ctx = detail::ctx_of(h);
  const std::size_t order = n + 1;
  const TruncSeries zero(ctx, order);
  Matrix<TruncSeries> u(n, n, zero), l(n, n, zero), r(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) u(i, j)[0] = PadicElem::one(ctx);
      u(i, j)[1] = -h(i, j);
    }
    l(i, i) = TruncSeries::one(ctx, order);
    r(i, i) = TruncSeries::one(ctx, order);
  }
  // Upper part, by column operations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const TruncSeries pinv = series_inv(u(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(i, j).is_exact_zero()) continue;
      const TruncSeries f = pinv * u(i, j);
      for (std::size_t k = i + 1; k < n; ++k)
        if (!u(k, i).is_exact_zero()) u(k, j) = u(k, j) - u(k, i) * f;
      u(i, j) = zero;
      for (std::size_t k = 0; k <= i; ++k)
        if (!r(k, i).is_exact_zero()) r(k, j) = r(k, j) - r(k, i) * f;
    }
  }
  // Lower part, by row operations; row i is now diagonal.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const TruncSeries pinv = series_inv(u(i, i));
    for (std::size_t k = i + 1; k < n; ++k) {
      if (u(k, i).is_exact_zero()) continue;
      const TruncSeries g = u(k, i) * pinv;
      u(k, i) = zero;
      for (std::size_t c = 0; c <= i; ++c)
        if (!l(i, c).is_exact_zero()) l(k, c) = l(k, c) - g * l(i, c);
    }
  }
  // Cofactors of the diagonal: prod_{k != i} D_kk by prefix/suffix products.
  std::vector<TruncSeries> prefix(n + 1, TruncSeries::one(ctx, order)), suffix(n + 1, TruncSeries::one(ctx, order));
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * u(i, i);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * u(i, i);
  const TruncSeries psi = prefix[n];
  out.C = PolyMatrix(n, n, PPoly(ctx));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      TruncSeries acc = zero;
      for (std::size_t i = std::max(a, b); i < n; ++i) {
        if (r(a, i).is_exact_zero() || l(i, b).is_exact_zero()) continue;
        acc = acc + r(a, i) * (prefix[i] * suffix[i + 1]) * l(i, b);
      }
      std::vector<PadicElem> cs(n, PadicElem::zero(ctx));
      for (std::size_t k = 0; k < n; ++k) cs[k] = acc[k];
      out.C(a, b) = reciprocal(PPoly(ctx, std::move(cs)), static_cast<long>(n) - 1);
    }
  out.chi = reciprocal(psi.to_poly(), static_cast<long>(n));
  return out;
}

/// Exact scalar matrix times polynomial matrix times exact scalar matrix.
inline PolyMatrix conjugate_poly_matrix(const PadicMatrix& left, const PolyMatrix& c, const PadicMatrix& right) {
  const std::size_t n = c.rows();
  const CtxPtr ctx = detail::ctx_of(left);
  PolyMatrix tmp(n, n, PPoly(ctx)), out(n, n, PPoly(ctx));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (left(i, k).is_exact_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) tmp(i, j) += left(i, k) * c(k, j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (right(k, j).is_exact_zero()) continue;
        out(i, j) += right(k, j) * tmp(i, k);
      }
  return out;
}

/// com(X - M) and chi_M for any M over Q_p: scale to Z_p, Hessenberg form,
/// division-free adjugate, then (optionally) change basis back and unscale.
/// Without the base change, C is com(X - H) for the Hessenberg form H of M.
struct FullAdjugate {
  PolyMatrix C;
  PPoly chi;
  HessenbergForm form;
  long scale = 0;
};

inline PPoly unscale_poly(const PPoly& p, long s, long top) {
  if (s == 0) return p;
  std::vector<PadicElem> cs = p.coeffs();
  for (std::size_t k = 0; k < cs.size(); ++k) cs[k] = cs[k].shifted(-s * (top - static_cast<long>(k)));
  return PPoly(p.ctx(), std::move(cs));
}

inline FullAdjugate adjugate_via_hessenberg(const PadicMatrix& m, bool base_change = true) {
  const std::size_t n = m.rows();
  FullAdjugate out;
  const long v = detail::min_valuation(m);
  out.scale = (v == kInf || v >= 0) ? 0 : -v;
  const PadicMatrix scaled = out.scale ? detail::shifted(m, out.scale) : m;
  out.form = hessenberg(scaled);
  AdjugateResult a = adjugate_hessenberg(out.form.H);
  PolyMatrix c = base_change ? conjugate_poly_matrix(out.form.P_inv, a.C, out.form.P) : std::move(a.C);
  const long top = static_cast<long>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = unscale_poly(c(i, j), out.scale, top - 1);
  out.C = std::move(c);
  out.chi = unscale_poly(a.chi, out.scale, top);
  return out;
}

/// Result of the randomized rank-one construction of com(X - M) mod chi_M.
struct FactoredAdjugate {
  PolyMatrix C;
  PPoly chi;
  int attempts = 0;
};

inline constexpr int kAdjugateRetryBound = 16;

inline FactoredAdjugate adjugate_factored(const PadicMatrix& m, Rng& rng, int retry_bound = kAdjugateRetryBound) {
  const std::size_t n = m.rows();
  if (!m.is_square() || n == 0) fail(ErrorKind::InvalidInput, "adjugate_factored needs a nonempty square matrix");
  const CtxPtr ctx = detail::ctx_of(m);
  const long v = detail::min_valuation(m);
  const long s = (v == kInf || v >= 0) ? 0 : -v;
  const PadicMatrix scaled = s ? detail::shifted(m, s) : m;

  const HessenbergForm form = hessenberg(scaled);
  const AdjugateResult a = adjugate_hessenberg(form.H);
  const PPoly& chi = a.chi;
  if (!xgcd_mod(derivative(chi), chi).ok) {
    fail(ErrorKind::DiscriminantZero, "characteristic polynomial is not squarefree at working precision");
  }

  // Random multipliers are drawn from [0, p^w) with w the working relative precision.
  long w = kInf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (scaled(i, j).relprec() > 0) w = std::min(w, scaled(i, j).relprec());
  if (w == kInf) w = ctx->default_prec;
  w = std::clamp(w, 1L, 64L);
  const mpz_class bound = detail::pow_p(ctx->p, w);
  const PadicElem zero = PadicElem::zero(ctx);

  FactoredAdjugate out;
  out.chi = chi;
  for (int attempt = 1; attempt <= retry_bound; ++attempt) {
    std::vector<PadicElem> mu(n, zero), nu(n, zero);
    for (std::size_t i = 1; i < n; ++i) mu[i] = PadicElem::exact(ctx, uniform_below(rng, bound));
    for (std::size_t i = 1; i < n; ++i) nu[i] = PadicElem::exact(ctx, uniform_below(rng, bound));
    // T = I + sum mu_i E_{0,i}; S = I + sum nu_j E_{j,0}.
    PadicMatrix t = identity_matrix(ctx, n), t_inv = identity_matrix(ctx, n);
    PadicMatrix sm = identity_matrix(ctx, n), s_inv = identity_matrix(ctx, n);
    for (std::size_t i = 1; i < n; ++i) {
      t(0, i) = mu[i];
      t_inv(0, i) = -mu[i];
      sm(i, 0) = nu[i];
      s_inv(i, 0) = -nu[i];
    }
    // C = S^-1 T A T^-1 S.
    const PolyMatrix c = conjugate_poly_matrix(s_inv * t, a.C, t_inv * sm);
    const ModInverse f = xgcd_mod(c(0, 0), chi);
    if (!f.ok) continue;
    // com(X - M) = (P_inv T^-1 S U) (V S^-1 T P) with U = col(C, 0), V = F row(C, 0).
    const PadicMatrix left = form.P_inv * t_inv * sm;
    const PadicMatrix right = s_inv * t * form.P;
    std::vector<PPoly> uvec(n, PPoly(ctx)), vvec(n, PPoly(ctx));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (!left(i, k).is_exact_zero()) uvec[i] += left(i, k) * c(k, 0);
    std::vector<PPoly> vrow(n, PPoly(ctx));
    for (std::size_t k = 0; k < n; ++k) vrow[k] = poly_rem(f.inverse * c(0, k), chi);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!right(k, j).is_exact_zero()) vvec[j] += right(k, j) * vrow[k];
    out.C = PolyMatrix(n, n, PPoly(ctx));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.C(i, j) = poly_rem(uvec[i] * vvec[j], chi);
    out.attempts = attempt;
    if (s) {
      const long top = static_cast<long>(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.C(i, j) = unscale_poly(out.C(i, j), s, top - 1);
      out.chi = unscale_poly(chi, s, top);
    }
    return out;
  }
  fail(ErrorKind::RandomizationExhausted,
       "no admissible mixing found in " + std::to_string(retry_bound) + " attempts");
}

}  // namespace padicprec
