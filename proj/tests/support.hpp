#pragma once

// Helpers shared by the unit tests and the acceptance runner. The rational
// oracle here (Faddeev-LeVerrier) is independent of every algorithm in the
// library: it needs divisions by 1..n, fine over Q.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "padicprec/padicprec.hpp"

namespace testing_support {

using namespace padicprec;

using Q = mpq_class;
using QPoly = std::vector<Q>;
using QMatrix = Matrix<Q>;

inline PadicElem lit(const CtxPtr& ctx, const std::string& s) { return parse_padic(ctx, s); }

inline QMatrix qmul(const QMatrix& a, const QMatrix& b) { return multiply(a, b, Q(0)); }

inline QMatrix qidentity(std::size_t n) {
  QMatrix m(n, n, Q(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qtrim(r);
  return r;
}

inline QPoly qpoly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Q(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

/// Remainder modulo a monic polynomial.
inline QPoly qpoly_rem(QPoly a, const QPoly& m) {
  qtrim(a);
  const std::size_t d = m.size() - 1;
  while (a.size() > d) {
    const Q lead = a.back();
    const std::size_t shift = a.size() - 1 - d;
    for (std::size_t i = 0; i <= d; ++i) a[shift + i] -= lead * m[i];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

inline Q qpoly_eval(const QPoly& a, const Q& x) {
  Q r = 0;
  for (std::size_t k = a.size(); k-- > 0;) r = r * x + a[k];
  return r;
}

inline QPoly qpoly_derivative(const QPoly& a) {
  QPoly r;
  for (std::size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * static_cast<long>(k));
  return r;
}

struct LeVerrier {
  QPoly chi;                // monic, lowest degree first
  Matrix<QPoly> adjugate;   // com(X - M)
};

/// chi_M and com(X - M) by the Faddeev-LeVerrier recursion.
inline LeVerrier leverrier(const QMatrix& m) {
  const std::size_t n = m.rows();
  LeVerrier out;
  out.chi.assign(n + 1, Q(0));
  out.chi[n] = 1;
  std::vector<QMatrix> b{qidentity(n)};
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix am = qmul(m, b.back());
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    const Q c = -tr / static_cast<long>(k);
    out.chi[n - k] = c;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c;
    b.push_back(std::move(am));
  }
  out.adjugate = Matrix<QPoly>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QPoly e(n, Q(0));
      for (std::size_t k = 0; k < n; ++k) e[n - 1 - k] = b[k](i, j);
      qtrim(e);
      out.adjugate(i, j) = std::move(e);
    }
  return out;
}

inline QPoly charpoly(const QMatrix& m) { return leverrier(m).chi; }

/// Gauss-Jordan over Q.
inline QMatrix qinverse(QMatrix a) {
  const std::size_t n = a.rows();
  QMatrix inv = qidentity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (a(r, c) == 0) ++r;
    a.swap_rows(r, c);
    inv.swap_rows(r, c);
    const Q piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Q f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline long qval(const Q& x, const mpz_class& p) { return detail::valuation(x, p); }

/// Number of leading digits (absolute) on which a and b agree: val(a - b).
inline long agreement(const Q& a, const Q& b, const mpz_class& p) { return qval(a - b, p); }

inline bool poly_agrees(const PPoly& f, const QPoly& exact) { return agrees(f, exact); }

/// Coefficientwise val(f - g) >= N on representatives.
inline bool poly_congruent(const QPoly& f, const QPoly& g, const mpz_class& p, long N) {
  const QPoly d = qpoly_sub(f, g);
  for (const auto& c : d)
    if (qval(c, p) < N) return false;
  return true;
}

inline long rand_between(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline QMatrix random_int_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  QMatrix m(n, n, Q(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rand_between(rng, lo, hi);
  return m;
}

/// Random product of elementary integer row operations: integral with integral inverse.
inline QMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  QMatrix u = qidentity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(rand_between(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(rand_between(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long f = rand_between(rng, -3, 3);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
  }
  return u;
}

inline PadicMatrix to_padic(const CtxPtr& ctx, const QMatrix& m, long N) {
  return m.map([&](const Q& q) { return PadicElem::from_rational(ctx, q, N); });
}

/// Flat O(p^N) matrix whose representatives are the given rationals.
inline PMatrix flat_matrix(const CtxPtr& ctx, const QMatrix& m, long N) {
  PMatrix out{ctx, to_padic(ctx, m, N), PrecisionSpec::flat(N)};
  out.validate();
  return out;
}

inline QMatrix representatives(const PadicMatrix& m) { return to_rational(m); }

inline QPoly representatives(const PPoly& f) {
  QPoly r;
  for (const auto& c : f.coeffs()) r.push_back(c.to_rational());
  qtrim(r);
  return r;
}

inline QMatrix companion(const QPoly& chi) {
  const std::size_t n = chi.size() - 1;
  QMatrix c(n, n, Q(0));
  for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = 1;
  for (std::size_t j = 0; j < n; ++j) c(n - 1, j) = -chi[j];
  return c;
}

inline QMatrix diag(const std::vector<Q>& d) {
  QMatrix m(d.size(), d.size(), Q(0));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline Q qpow(const mpz_class& p, long e) { return detail::pow_p_rational(p, e); }

/// Random lattice member: entry (i, j) is p^N_ij times a random integer below p^spread.
inline QMatrix random_lattice_point(std::mt19937_64& rng, const PMatrix& m, long spread = 6) {
  const std::size_t n = m.n();
  const mpz_class& p = m.ctx->p;
  QMatrix d(n, n, Q(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const long e = m.prec.at(i, j);
      if (e == kInf) continue;
      const long top = p.get_si() > 1000 ? 1000 : static_cast<long>(std::pow(p.get_d(), static_cast<double>(spread)));
      d(i, j) = qpow(p, e) * rand_between(rng, -top, top);
    }
  return d;
}

inline QMatrix qadd(QMatrix a, const QMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += b(i, j);
  return a;
}

/// Smallest val(a_k(M + H) - a_k(M)) seen over random lattice members H, per k.
inline std::vector<long> perturbation_min_vals(const PMatrix& m, int trials, std::mt19937_64& rng) {
  const std::size_t n = m.n();
  const QMatrix base = representatives(m.entries);
  const QPoly chi = charpoly(base);
  std::vector<long> best(n, kInf);
  for (int t = 0; t < trials; ++t) {
    const QPoly other = charpoly(qadd(base, random_lattice_point(rng, m)));
    for (std::size_t k = 0; k < n; ++k) best[k] = std::min(best[k], qval(other[k] - chi[k], m.ctx->p));
  }
  return best;
}

}  // namespace testing_support
