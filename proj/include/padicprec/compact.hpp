#pragma once

// Compact encoding of com(X - M) mod chi_M:
//   com(X - M) = alpha * (P V^t) * (V Q^t) mod chi_M,  V = (1, X, ..., X^(n-1)),
// with M = P C P^-1, M^t = Q C Q^-1 and C the companion matrix of chi_M.

#include <cstddef>
#include <string>
#include <vector>

#include "padicprec/errors.hpp"
#include "padicprec/matops.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/polyring.hpp"

namespace padicprec {

struct CompactAdjugate {
  PPoly alpha;
  PadicMatrix P, Q;
  PPoly chi;
  // False when chi(0) vanishes and the Hankel symmetrizer (alpha = 1) was used instead.
  bool krylov_alpha = true;
};

/// Rows A^0 c, A c, ..., A^(n-1) c, built by doubling: K <- [K ; K (A^(2^j))^t].
inline PadicMatrix krylov_matrix(const PadicMatrix& a, const std::vector<PadicElem>& c) {
  const std::size_t n = a.rows();
  if (c.size() != n) fail(ErrorKind::InvalidInput, "Krylov start vector has the wrong length");
  if (n == 0) return a;
  const CtxPtr ctx = detail::ctx_of(a);
  const PadicElem zero = PadicElem::zero(ctx);
  std::vector<std::vector<PadicElem>> rows{c};
  PadicMatrix apow = a;
  while (rows.size() < n) {
    const std::size_t have = rows.size();
    for (std::size_t r = 0; r < have && rows.size() < n; ++r) {
      std::vector<PadicElem> next(n, zero);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          if (!apow(i, k).is_exact_zero() && !rows[r][k].is_exact_zero()) next[i] += apow(i, k) * rows[r][k];
      rows.push_back(std::move(next));
    }
    if (rows.size() < n) apow = apow * apow;
  }
  PadicMatrix k(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i, j) = rows[i][j];
  return k;
}

/// Companion matrix with ones on the superdiagonal and -a_0, ..., -a_(n-1) on the last row.
inline PadicMatrix companion_matrix(const PPoly& chi) {
  const std::size_t n = static_cast<std::size_t>(chi.degree());
  const CtxPtr& ctx = chi.ctx();
  PadicMatrix c(n, n, PadicElem::zero(ctx));
  for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = PadicElem::one(ctx);
  for (std::size_t j = 0; j < n; ++j) c(n - 1, j) = -chi.coeff(j);
  return c;
}

inline constexpr int kCyclicVectorRetries = 8;

inline CompactAdjugate compact_form(const PadicMatrix& m, Rng& rng, int retries = kCyclicVectorRetries) {
  const std::size_t n = m.rows();
  if (!m.is_square() || n == 0) fail(ErrorKind::InvalidInput, "compact_form needs a nonempty square matrix");
  const CtxPtr ctx = detail::ctx_of(m);
  long w = kInf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j).relprec() > 0) w = std::min(w, m(i, j).relprec());
  if (w == kInf) w = ctx->default_prec;
  w = std::clamp(w, 1L, 64L);
  const mpz_class bound = detail::pow_p(ctx->p, w);
  const PadicMatrix mt = m.transposed();

  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<PadicElem> c(n, PadicElem::zero(ctx));
    for (auto& x : c) x = PadicElem::exact(ctx, uniform_below(rng, bound));
    // Row i of P_inv is c^t M^i, so that P_inv M P is the companion matrix.
    const PadicMatrix p_inv = krylov_matrix(mt, c);
    PadicMatrix p;
    try {
      p = inverse(p_inv);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularToPrecision) throw;
      continue;
    }
    // c^t M^n = -(a_0, ..., a_(n-1)) P_inv, hence a = -(c^t M^(n-1) M) P.
    std::vector<PadicElem> cn(n, PadicElem::zero(ctx));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) cn[j] += p_inv(n - 1, i) * m(i, j);
    std::vector<PadicElem> chi_c(n + 1, PadicElem::zero(ctx));
    for (std::size_t j = 0; j < n; ++j) {
      PadicElem acc = PadicElem::zero(ctx);
      for (std::size_t i = 0; i < n; ++i) acc += cn[i] * p(i, j);
      chi_c[j] = -acc;
    }
    chi_c[n] = PadicElem::one(ctx);

    CompactAdjugate out;
    out.chi = PPoly(ctx, std::move(chi_c));
    out.P = std::move(p);
    const PadicMatrix comp = companion_matrix(out.chi);
    std::vector<PadicElem> e(n, PadicElem::zero(ctx));
    e[0] = PadicElem::one(ctx);
    PadicMatrix r;
    try {
      r = inverse(krylov_matrix(comp, e));
      std::vector<PadicElem> alpha(n, PadicElem::zero(ctx));
      for (std::size_t k = 1; k <= n; ++k) alpha[k - 1] = out.chi.coeff(k);
      out.alpha = PPoly(ctx, std::move(alpha));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::SingularToPrecision) throw;
      // chi(0) = 0: e is not cyclic for the companion matrix. The Hankel matrix
      // (a_(i+j+1)) always conjugates C to C^t and yields alpha = 1.
      r = PadicMatrix(n, n, PadicElem::zero(ctx));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) r(i, j) = out.chi.coeff(i + j + 1);
      out.alpha = PPoly::constant(PadicElem::one(ctx));
      out.krylov_alpha = false;
    }
    out.Q = p_inv.transposed() * r;
    return out;
  }
  fail(ErrorKind::NotCyclic, "no cyclic vector found in " + std::to_string(retries) + " attempts");
}

inline CompactAdjugate compact_form(const PMatrix& m, Rng& rng, int retries = kCyclicVectorRetries) {
  return compact_form(m.entries, rng, retries);
}

/// Row i of A as the polynomial A_i V^t = sum_k A(i, k) X^k.
inline PPoly row_polynomial(const PadicMatrix& a, std::size_t i) {
  std::vector<PadicElem> cs;
  for (std::size_t k = 0; k < a.cols(); ++k) cs.push_back(a(i, k));
  return PPoly(detail::ctx_of(a), std::move(cs));
}

inline PolyMatrix expand_compact(const CompactAdjugate& ca) {
  const std::size_t n = ca.P.rows();
  const CtxPtr& ctx = ca.chi.ctx();
  std::vector<PPoly> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    left[i] = poly_rem(ca.alpha * row_polynomial(ca.P, i), ca.chi);
    right[i] = row_polynomial(ca.Q, i);
  }
  PolyMatrix out(n, n, PPoly(ctx));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = poly_rem(left[i] * right[j], ca.chi);
  return out;
}

/// Quadruple for U M U^-1: (alpha, U P, (U^t)^-1 Q, chi).
inline CompactAdjugate conjugate_compact(const CompactAdjugate& ca, const PadicMatrix& u) {
  CompactAdjugate out = ca;
  out.P = u * ca.P;
  out.Q = inverse(u.transposed()) * ca.Q;
  return out;
}

}  // namespace padicprec
