#pragma once

// Optimal precision of the characteristic polynomial and of simple
// eigenvalues, from the first-order term
//   d chi_M(dM) = tr(com(X - M) dM).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padicprec/compact.hpp"
#include "padicprec/errors.hpp"
#include "padicprec/matops.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/oracle.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/polyring.hpp"

namespace padicprec {

namespace detail {

/// Rank over F_p of an integer matrix (entries reduced mod p on the fly).
inline std::size_t rank_mod_p(Matrix<mpz_class> a, const mpz_class& p) {
  const std::size_t rows = a.rows(), cols = a.cols();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = mod_pk(a(i, j), p, 1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(piv, rank);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a(rank, c).get_mpz_t(), p.get_mpz_t());
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a(r, c) == 0) continue;
      const mpz_class f = mod_pk(a(r, c) * inv, p, 1);
      for (std::size_t j = c; j < cols; ++j) a(r, j) = mod_pk(a(r, j) - f * a(rank, j), p, 1);
    }
    ++rank;
  }
  return rank;
}

inline PadicMatrix lifted(const PMatrix& m, long extra) {
  return m.entries.map([extra](const PadicElem& e) { return e.with_extra_digits(extra); });
}

}  // namespace detail

/// True iff I, M, ..., M^(n-1) are linearly independent mod p, i.e. the
/// reduction of M has a cyclic vector.
inline bool cyclic_mod_p(const PMatrix& m) {
  const std::size_t n = m.n();
  const mpz_class& p = m.ctx->p;
  Matrix<mpz_class> red(n, n, mpz_class(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) red(i, j) = reduce_mod_p(m(i, j));
  Matrix<mpz_class> powers(n, n * n, mpz_class(0));
  Matrix<mpz_class> cur(n, n, mpz_class(0));
  for (std::size_t i = 0; i < n; ++i) cur(i, i) = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) powers(k, i * n + j) = cur(i, j);
    if (k + 1 < n) {
      cur = multiply(cur, red, mpz_class(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cur(i, j) = detail::mod_pk(cur(i, j), p, 1);
    }
  }
  return detail::rank_mod_p(std::move(powers), p) == n;
}

struct Validity {
  bool ok = false;
  long s = 0;  // sum of val(sigma_i), i < n; kInf when some of them vanish
  std::vector<long> sigma_vals;
  std::string diagnostic;
};

/// First-order validity: min N_ij >= 2 s + 1 with s the height of the precision polygon.
inline Validity validity_check(const PMatrix& m) {
  Validity out;
  const std::size_t n = m.n();
  out.sigma_vals = exact_sigma_valuations(to_rational(m.entries), m.ctx->p);
  long s = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) s = add_sat(s, out.sigma_vals[i]);
  out.s = s;
  const long nmin = m.prec.min_exponent(n);
  if (s == kInf) {
    out.diagnostic = "rank of M is below n - 1; first-order analysis does not apply";
    return out;
  }
  const long need = 2 * std::max(s, 0L) + 1;
  out.ok = nmin >= need;
  out.diagnostic = out.ok ? "ok (s = " + std::to_string(s) + ")"
                          : "need min N >= " + std::to_string(need) + " (s = " + std::to_string(s) +
                                "), have " + std::to_string(nmin);
  return out;
}

struct PrecisionReport {
  std::vector<long> Nprime;    // absolute precision exponent of a_k, kInf if exact
  std::vector<bool> certified;  // false when an unresolved term could still lower N'_k
  bool gain = false;            // image lattice strictly inside O(p^min N)
  bool coefficient_gain = false;  // some N'_k > min N
  std::vector<long> sigma_vals;
  std::optional<bool> cyclic_mod_p;
  bool validity_ok = false;
  long validity_s = 0;
  std::string diagnostic;
  long extra_digits = 0;
};

struct OptimalOptions {
  long max_extra_digits = 1L << 16;
};

namespace detail {

struct NprimeScan {
  std::vector<long> best, lower;
  bool all_certified = true;
};

inline NprimeScan scan_nprime(const PolyMatrix& c, const PrecisionSpec& prec, std::size_t n) {
  NprimeScan s;
  s.best.assign(n, kInf);
  s.lower.assign(n, kInf);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const long nji = prec.at(j, i);
        if (nji == kInf) continue;
        const PadicElem e = c(i, j).coeff(k);
        if (e.is_exact_zero()) continue;
        if (e.is_indistinguishable_zero()) {
          s.lower[k] = std::min(s.lower[k], add_sat(nji, e.absprec()));
        } else {
          s.best[k] = std::min(s.best[k], add_sat(nji, e.val()));
        }
      }
    if (s.lower[k] < s.best[k]) s.all_certified = false;
  }
  return s;
}

/// The coefficient lattice sum_ij p^(N_ji) Z_p pi(C_ij) is p^(min N) span(G);
/// returns whether span(G) is strictly inside Z_p^n.
inline bool lattice_gain(const PolyMatrix& c, const PrecisionSpec& prec, std::size_t n, const mpz_class& p) {
  const long nmin = prec.min_exponent(n);
  if (nmin == kInf) return false;
  std::vector<std::pair<std::size_t, std::size_t>> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (prec.at(j, i) != kInf) cols.emplace_back(i, j);
  RatMatrix g(n, cols.size(), mpq_class(0));
  for (std::size_t col = 0; col < cols.size(); ++col) {
    const auto [i, j] = cols[col];
    const mpq_class w = pow_p_rational(p, prec.at(j, i) - nmin);
    for (std::size_t k = 0; k < n; ++k) {
      const PadicElem e = c(i, j).coeff(k);
      if (!e.is_indistinguishable_zero()) g(k, col) = w * e.to_rational();
    }
  }
  const std::vector<long> sv = exact_sigma_valuations(std::move(g), p);
  if (sv.empty()) return false;
  return sv.front() >= 0 && sv.back() > 0;
}

}  // namespace detail

/// N'_k = min_ij N_ji + val(pi_k(C_ij)), C = com(X - M). For flat lattices the
/// Hessenberg-side C^H is used directly (the change of basis is unimodular).
inline PrecisionReport optimal_jagged_charpoly(const PMatrix& m, const OptimalOptions& opt = {}) {
  m.validate();
  const std::size_t n = m.n();
  PrecisionReport rep;
  const Validity v = validity_check(m);
  rep.sigma_vals = v.sigma_vals;
  rep.validity_ok = v.ok;
  rep.validity_s = v.s;
  rep.diagnostic = v.diagnostic;
  if (n == 0) return rep;

  bool can_reduce = m.is_integral();
  for (std::size_t i = 0; i < n && can_reduce; ++i)
    for (std::size_t j = 0; j < n && can_reduce; ++j) can_reduce = m(i, j).absprec() >= 1;
  if (can_reduce) rep.cyclic_mod_p = cyclic_mod_p(m);

  const bool flat = m.prec.is_flat();
  long extra = 0;
  PolyMatrix c;
  detail::NprimeScan scan;
  for (;;) {
    FullAdjugate adj = adjugate_via_hessenberg(detail::lifted(m, extra), !flat);
    c = std::move(adj.C);
    scan = detail::scan_nprime(c, m.prec, n);
    if (scan.all_certified || extra >= opt.max_extra_digits) break;
    // Step by the largest visible deficit; double when nothing is visible yet.
    long step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (scan.lower[k] >= scan.best[k]) continue;
      step = std::max(step, scan.best[k] == kInf ? std::max(64L, extra) : scan.best[k] - scan.lower[k] + 32);
    }
    extra = std::min(opt.max_extra_digits, extra + step);
  }
  rep.extra_digits = extra;
  rep.Nprime.assign(n, kInf);
  rep.certified.assign(n, true);
  const long nmin = m.prec.min_exponent(n);
  for (std::size_t k = 0; k < n; ++k) {
    rep.Nprime[k] = std::min(scan.best[k], scan.lower[k]);
    rep.certified[k] = scan.lower[k] >= scan.best[k];
    if (rep.Nprime[k] != kInf && rep.Nprime[k] > nmin) rep.coefficient_gain = true;
  }
  if (!scan.all_certified) rep.diagnostic += "; some N'_k are lower bounds only";
  rep.gain = detail::lattice_gain(c, m.prec, n, m.ctx->p);
  return rep;
}

struct OptimalCharpoly {
  PPoly chi;
  PrecisionReport report;
};

/// chi_M at the optimal jagged precision: recompute on a lift of M and truncate.
inline OptimalCharpoly charpoly_optimal(const PMatrix& m, const OptimalOptions& opt = {}) {
  OptimalCharpoly out;
  out.report = optimal_jagged_charpoly(m, opt);
  const std::size_t n = m.n();
  const CtxPtr& ctx = m.ctx;
  if (m.prec.is_exact(n)) {
    out.chi = to_padic_poly(ctx, berkowitz_charpoly(to_rational(m.entries)));
    return out;
  }
  long margin = 2;
  for (long s : out.report.sigma_vals)
    if (s != kInf && s > 0) margin += s;
  long target = m.prec.min_exponent(n);
  for (long np : out.report.Nprime)
    if (np != kInf) target = std::max(target, np);
  long extra = std::max(0L, target - m.prec.min_exponent(n)) + margin;
  for (int round = 0; round < 8; ++round) {
    const FullAdjugate adj = adjugate_via_hessenberg(detail::lifted(m, extra), false);
    bool enough = true;
    for (std::size_t k = 0; k < n; ++k) {
      const long np = out.report.Nprime[k];
      if (np != kInf && adj.chi.coeff(k).absprec() < np) enough = false;
    }
    if (enough) {
      std::vector<PadicElem> cs;
      for (std::size_t k = 0; k <= n; ++k) {
        const PadicElem e = adj.chi.coeff(k);
        cs.push_back(k < n && out.report.Nprime[k] != kInf ? e.truncated(out.report.Nprime[k]) : e);
      }
      out.chi = PPoly(ctx, std::move(cs));
      return out;
    }
    extra = 2 * extra + 8;
  }
  fail(ErrorKind::InsufficientPrecision, "lifted recomputation did not reach the optimal precision");
}

/// Newton iteration from x0; requires val chi(x0) > 2 val chi'(x0).
inline PadicElem hensel_lift_eigenvalue(const PPoly& chi, const PadicElem& x0) {
  const CtxPtr& ctx = chi.ctx();
  long target = chi.min_absprec();
  if (target == kInf) target = ctx->default_prec;
  PadicElem x = x0.is_exact() ? PadicElem::from_rational(ctx, x0.to_rational(), target) : x0;
  const PPoly dchi = derivative(chi);
  PadicElem f = eval(chi, x);
  PadicElem d = eval(dchi, x);
  if (d.is_indistinguishable_zero() || (!f.is_indistinguishable_zero() && f.val() <= 2 * d.val())) {
    fail(ErrorKind::NotSimpleRoot, "starting point " + x0.to_literal() + " does not isolate a simple root");
  }
  for (int iter = 0; iter < 128 && !f.is_indistinguishable_zero(); ++iter) {
    const PadicElem step = f / d;
    x = x - step;
    f = eval(chi, x);
    d = eval(dchi, x);
    if (d.is_indistinguishable_zero()) fail(ErrorKind::NotSimpleRoot, "derivative vanished during lifting");
  }
  return x;
}

inline PadicElem hensel_lift_eigenvalue(const PPoly& chi, const mpz_class& r0) {
  return hensel_lift_eigenvalue(chi, PadicElem::exact(chi.ctx(), r0));
}

/// Integral simple roots of chi, found by refining residues mod p^k until
/// Newton's condition holds (depth-limited), then lifted.
inline std::vector<PadicElem> simple_eigenvalues(const PPoly& chi, long max_depth = 12) {
  const CtxPtr& ctx = chi.ctx();
  const mpz_class& p = ctx->p;
  if (p > 100000) fail(ErrorKind::InvalidInput, "residue search is limited to p <= 100000");
  const RatPoly f = to_rational(chi);
  RatPoly df;
  for (std::size_t k = 1; k < f.size(); ++k) df.push_back(f[k] * static_cast<unsigned long>(k));
  std::vector<PadicElem> roots;
  std::vector<std::pair<mpz_class, long>> frontier{{mpz_class(0), 0}};
  while (!frontier.empty()) {
    auto [r, depth] = frontier.back();
    frontier.pop_back();
    const mpz_class pk = detail::pow_p(p, depth);
    for (mpz_class t = 0; t < p; ++t) {
      const mpz_class x = r + t * pk;
      const long vf = detail::valuation(ratpoly::eval(f, mpq_class(x)), p);
      if (vf < depth + 1) continue;
      const long vd = detail::valuation(ratpoly::eval(df, mpq_class(x)), p);
      // Newton's root is the only one in x + p^(depth+1) Z_p once val chi'(x) <= depth.
      if (vd != kInf && vf > 2 * vd && vd <= depth) {
        PadicElem lam = hensel_lift_eigenvalue(chi, PadicElem::exact(ctx, x));
        bool seen = false;
        for (const auto& other : roots) seen = seen || agrees(lam, other);
        if (!seen) roots.push_back(lam);
      } else if (depth + 1 < max_depth) {
        frontier.emplace_back(x, depth + 1);
      }
    }
  }
  return roots;
}

struct EigenPrecision {
  PadicElem lambda;
  long Nprime = kInf;
  long val_alpha = 0;
  long val_dchi = 0;
  std::size_t argmin_i = 0, argmin_j = 0;
};

namespace detail {

inline EigenPrecision eigen_from_values(const PMatrix& m, const CompactAdjugate& ca, const PadicElem& lambda,
                                        const std::vector<PadicElem>& pv, const std::vector<PadicElem>& qv) {
  const std::size_t n = m.n();
  EigenPrecision out;
  out.lambda = lambda;
  const PadicElem d = eval(derivative(ca.chi), lambda);
  if (d.is_indistinguishable_zero()) {
    fail(ErrorKind::NotSimpleEigenvalue, "chi'(" + lambda.to_literal() + ") is indistinguishable from zero");
  }
  const PadicElem a = eval(ca.alpha, lambda);
  if (a.is_indistinguishable_zero()) {
    fail(ErrorKind::InsufficientPrecision, "alpha(" + lambda.to_literal() + ") is indistinguishable from zero");
  }
  out.val_dchi = d.val();
  out.val_alpha = a.val();
  long best = kInf;
  if (m.prec.is_flat()) {
    long bp = kInf, bq = kInf;
    for (std::size_t i = 0; i < n; ++i)
      if (!pv[i].is_indistinguishable_zero() && pv[i].val() < bp) {
        bp = pv[i].val();
        out.argmin_i = i;
      }
    for (std::size_t j = 0; j < n; ++j)
      if (!qv[j].is_indistinguishable_zero() && qv[j].val() < bq) {
        bq = qv[j].val();
        out.argmin_j = j;
      }
    best = add_sat(m.prec.flat_value(), add_sat(bp, bq));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (pv[i].is_indistinguishable_zero() || qv[j].is_indistinguishable_zero()) continue;
        const long t = add_sat(m.prec.at(j, i), pv[i].val() + qv[j].val());
        if (t < best) {
          best = t;
          out.argmin_i = i;
          out.argmin_j = j;
        }
      }
  }
  if (best == kInf) {
    if (!m.prec.is_exact(n)) fail(ErrorKind::InsufficientPrecision, "every term of the eigenvalue formula is unresolved");
    out.Nprime = kInf;
    return out;
  }
  out.Nprime = best + out.val_alpha - out.val_dchi;
  return out;
}

}  // namespace detail

/// N' = val alpha(lambda) - val chi'(lambda) + min_ij (N_ji + val(P_i V^t) + val(V Q_j^t)).
inline EigenPrecision eigenvalue_precision(const PMatrix& m, const CompactAdjugate& ca, const PadicElem& lambda) {
  const std::size_t n = m.n();
  std::vector<PadicElem> pv, qv;
  for (std::size_t i = 0; i < n; ++i) {
    pv.push_back(eval(row_polynomial(ca.P, i), lambda));
    qv.push_back(eval(row_polynomial(ca.Q, i), lambda));
  }
  return detail::eigen_from_values(m, ca, lambda, pv, qv);
}

/// Same as eigenvalue_precision for several eigenvalues, sharing P W and Q W
/// with W the matrix of powers of the lambdas.
inline std::vector<EigenPrecision> eigenvalues_precision_batch(const PMatrix& m, const CompactAdjugate& ca,
                                                               const std::vector<PadicElem>& lambdas) {
  const std::size_t n = m.n(), s = lambdas.size();
  std::vector<EigenPrecision> out;
  if (s == 0) return out;
  const CtxPtr& ctx = m.ctx;
  PadicMatrix w(n, s, PadicElem::zero(ctx));
  for (std::size_t c = 0; c < s; ++c) {
    PadicElem pw = PadicElem::one(ctx);
    for (std::size_t k = 0; k < n; ++k) {
      w(k, c) = pw;
      pw = pw * lambdas[c];
    }
  }
  const PadicMatrix pw = ca.P * w, qw = ca.Q * w;
  for (std::size_t c = 0; c < s; ++c) {
    std::vector<PadicElem> pv, qv;
    for (std::size_t i = 0; i < n; ++i) {
      pv.push_back(pw(i, c));
      qv.push_back(qw(i, c));
    }
    out.push_back(detail::eigen_from_values(m, ca, lambdas[c], pv, qv));
  }
  return out;
}

}  // namespace padicprec
