#pragma once

// Polynomials and truncated power series over Q_p.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padicprec/errors.hpp"
#include "padicprec/padic.hpp"

namespace padicprec {

/// Polynomial with capped-precision coefficients, lowest degree first.
/// Trailing exact zeros are trimmed; O(p^k) coefficients are kept.
class PPoly {
 public:
  PPoly() = default;
  explicit PPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
  PPoly(CtxPtr ctx, std::vector<PadicElem> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) { trim(); }

  static PPoly constant(const PadicElem& c) { return PPoly(c.ctx(), {c}); }
  static PPoly monomial(const CtxPtr& ctx, std::size_t k, const PadicElem& c) {
    std::vector<PadicElem> v(k + 1, PadicElem::zero(ctx));
    v[k] = c;
    return PPoly(ctx, std::move(v));
  }
  static PPoly x(const CtxPtr& ctx) { return monomial(ctx, 1, PadicElem::one(ctx)); }

  /// Exact integer coefficients, lowest degree first.
  static PPoly from_integers(const CtxPtr& ctx, const std::vector<long>& cs) {
    std::vector<PadicElem> v;
    v.reserve(cs.size());
    for (long c : cs) v.push_back(PadicElem::exact(ctx, c));
    return PPoly(ctx, std::move(v));
  }

  const CtxPtr& ctx() const noexcept { return ctx_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<PadicElem>& coeffs() const noexcept { return coeffs_; }

  PadicElem coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : PadicElem::zero(ctx_); }
  void set_coeff(std::size_t k, PadicElem c) {
    if (k >= coeffs_.size()) coeffs_.resize(k + 1, PadicElem::zero(ctx_));
    coeffs_[k] = std::move(c);
    trim();
  }

  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_exact_one(); }

  /// Every coefficient has no known nonzero digit.
  bool is_indistinguishable_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_indistinguishable_zero()) return false;
    return true;
  }

  long min_absprec() const {
    long a = kInf;
    for (const auto& c : coeffs_) a = std::min(a, c.absprec());
    return a;
  }

  friend bool operator==(const PPoly& a, const PPoly& b) { return a.coeffs_ == b.coeffs_; }

  friend PPoly operator+(const PPoly& a, const PPoly& b) {
    const CtxPtr ctx = detail::merge_ctx(a.ctx_, b.ctx_);
    std::vector<PadicElem> v(std::max(a.size(), b.size()), PadicElem::zero(ctx));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return PPoly(ctx, std::move(v));
  }

  friend PPoly operator-(const PPoly& a) {
    PPoly r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend PPoly operator-(const PPoly& a, const PPoly& b) { return a + (-b); }

  friend PPoly operator*(const PPoly& a, const PPoly& b) {
    const CtxPtr ctx = detail::merge_ctx(a.ctx_, b.ctx_);
    if (a.is_zero() || b.is_zero()) return PPoly(ctx);
    std::vector<PadicElem> v(a.size() + b.size() - 1, PadicElem::zero(ctx));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.coeffs_[i].is_exact_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PPoly(ctx, std::move(v));
  }

  friend PPoly operator*(const PadicElem& s, const PPoly& a) {
    PPoly r(detail::merge_ctx(s.ctx(), a.ctx_));
    r.coeffs_.reserve(a.size());
    for (const auto& c : a.coeffs_) r.coeffs_.push_back(s * c);
    r.trim();
    return r;
  }

  PPoly& operator+=(const PPoly& o) { return *this = *this + o; }
  PPoly& operator-=(const PPoly& o) { return *this = *this - o; }

  /// Product truncated modulo X^len.
  friend PPoly mul_trunc(const PPoly& a, const PPoly& b, std::size_t len) {
    const CtxPtr ctx = detail::merge_ctx(a.ctx_, b.ctx_);
    if (a.is_zero() || b.is_zero() || len == 0) return PPoly(ctx);
    std::vector<PadicElem> v(std::min(len, a.size() + b.size() - 1), PadicElem::zero(ctx));
    for (std::size_t i = 0; i < a.size() && i < v.size(); ++i) {
      if (a.coeffs_[i].is_exact_zero()) continue;
      for (std::size_t j = 0; j < b.size() && i + j < v.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PPoly(ctx, std::move(v));
  }

  /// Every coefficient truncated to absolute precision min(absprec, k).
  PPoly truncated_precision(long k) const {
    PPoly r = *this;
    for (auto& c : r.coeffs_) c = c.truncated(k);
    r.trim();
    return r;
  }

  std::string to_string() const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
  }

  CtxPtr ctx_;
  std::vector<PadicElem> coeffs_;
};

/// Coefficientwise agreement on the digits both sides know.
inline bool agrees(const PPoly& a, const PPoly& b) {
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < len; ++k)
    if (!agrees(a.coeff(k), b.coeff(k))) return false;
  return true;
}

/// Agreement with exact rational coefficients on the digits `a` knows.
inline bool agrees(const PPoly& a, const std::vector<mpq_class>& exact) {
  const std::size_t len = std::max(a.size(), exact.size());
  for (std::size_t k = 0; k < len; ++k) {
    const mpq_class e = k < exact.size() ? exact[k] : mpq_class(0);
    if (!agrees(a.coeff(k), e)) return false;
  }
  return true;
}

/// Remainder of a modulo a monic m; no division occurs.
inline PPoly poly_rem(const PPoly& a, const PPoly& m) {
  if (!m.is_monic()) fail(ErrorKind::NonMonicModulus, "modulus " + m.to_string() + " is not monic");
  const long dm = m.degree();
  std::vector<PadicElem> r = a.coeffs();
  for (long k = static_cast<long>(r.size()) - 1; k >= dm; --k) {
    const PadicElem lead = r[static_cast<std::size_t>(k)];
    if (lead.is_exact_zero()) continue;
    for (long i = 0; i < dm; ++i) {
      const auto idx = static_cast<std::size_t>(k - dm + i);
      r[idx] -= lead * m.coeffs()[static_cast<std::size_t>(i)];
    }
  }
  r.resize(static_cast<std::size_t>(std::max(0L, std::min<long>(dm, static_cast<long>(r.size())))));
  return PPoly(detail::merge_ctx(a.ctx(), m.ctx()), std::move(r));
}

/// Quotient and remainder by m whose leading coefficient is invertible.
inline std::pair<PPoly, PPoly> poly_divrem(const PPoly& a, const PPoly& m) {
  const CtxPtr ctx = detail::merge_ctx(a.ctx(), m.ctx());
  const long dm = m.degree();
  if (dm < 0) fail(ErrorKind::DivisionByIndistinguishableZero, "division by the zero polynomial");
  const PadicElem lead_inv = m.coeffs().back().inv();
  std::vector<PadicElem> r = a.coeffs();
  const long da = a.degree();
  std::vector<PadicElem> q(static_cast<std::size_t>(std::max(0L, da - dm + 1)), PadicElem::zero(ctx));
  for (long k = da; k >= dm; --k) {
    const PadicElem c = r[static_cast<std::size_t>(k)] * lead_inv;
    q[static_cast<std::size_t>(k - dm)] = c;
    for (long i = 0; i < dm; ++i) r[static_cast<std::size_t>(k - dm + i)] -= c * m.coeffs()[static_cast<std::size_t>(i)];
  }
  r.resize(static_cast<std::size_t>(std::max(0L, std::min(dm, da + 1))));
  return {PPoly(ctx, std::move(q)), PPoly(ctx, std::move(r))};
}

/// X^d * P(1/X): coefficient i of the result is coefficient d - i of P.
inline PPoly reciprocal(const PPoly& p, long d) {
  if (p.degree() > d) {
    fail(ErrorKind::DegreeExceedsBound,
         "degree " + std::to_string(p.degree()) + " exceeds bound " + std::to_string(d));
  }
  std::vector<PadicElem> v(static_cast<std::size_t>(d + 1), PadicElem::zero(p.ctx()));
  for (long i = 0; i <= d; ++i) v[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(d - i));
  return PPoly(p.ctx(), std::move(v));
}

/// Horner evaluation.
inline PadicElem eval(const PPoly& p, const PadicElem& x) {
  PadicElem acc = PadicElem::zero(detail::merge_ctx(p.ctx(), x.ctx()));
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p.coeffs()[k];
  return acc;
}

inline PPoly derivative(const PPoly& p) {
  if (p.size() <= 1) return PPoly(p.ctx());
  std::vector<PadicElem> v;
  v.reserve(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) v.push_back(PadicElem::exact(p.ctx(), static_cast<long>(k)) * p.coeffs()[k]);
  return PPoly(p.ctx(), std::move(v));
}

/// Power series over Q_p modulo X^order.
class TruncSeries {
 public:
  TruncSeries(CtxPtr ctx, std::size_t order) : ctx_(std::move(ctx)), c_(order, PadicElem::zero(ctx_)) {}
  TruncSeries(const PPoly& p, std::size_t order) : ctx_(p.ctx()), c_(order, PadicElem::zero(ctx_)) {
    for (std::size_t k = 0; k < order && k < p.size(); ++k) c_[k] = p.coeffs()[k];
  }

  static TruncSeries one(const CtxPtr& ctx, std::size_t order) {
    TruncSeries s(ctx, order);
    if (order > 0) s.c_[0] = PadicElem::one(ctx);
    return s;
  }

  std::size_t order() const noexcept { return c_.size(); }
  const CtxPtr& ctx() const noexcept { return ctx_; }
  const PadicElem& operator[](std::size_t k) const { return c_[k]; }
  PadicElem& operator[](std::size_t k) { return c_[k]; }

  bool is_exact_zero() const {
    for (const auto& c : c_)
      if (!c.is_exact_zero()) return false;
    return true;
  }

  PPoly to_poly() const { return PPoly(ctx_, c_); }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r = a;
    for (std::size_t k = 0; k < r.order(); ++k) r.c_[k] += b.c_[k];
    return r;
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r = a;
    for (std::size_t k = 0; k < r.order(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r(a.ctx_, a.order());
    for (std::size_t i = 0; i < a.order(); ++i) {
      if (a.c_[i].is_exact_zero()) continue;
      for (std::size_t j = 0; i + j < a.order(); ++j) {
        if (b.c_[j].is_exact_zero()) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

 private:
  CtxPtr ctx_;
  std::vector<PadicElem> c_;
};

/// Inverse of a series whose constant term is a unit of Z_p.
inline TruncSeries series_inv(const TruncSeries& u) {
  const std::size_t n = u.order();
  if (n == 0) return u;
  const PadicElem& c0 = u[0];
  if (c0.is_indistinguishable_zero() || c0.val() != 0) {
    fail(ErrorKind::NonUnitConstantTerm, "constant term " + c0.to_literal() + " is not a unit");
  }
  TruncSeries r(u.ctx(), n);
  const PadicElem inv0 = c0.is_exact_one() ? c0 : c0.inv();
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    PadicElem acc = PadicElem::zero(u.ctx());
    for (std::size_t i = 1; i <= k; ++i) {
      if (u[i].is_exact_zero()) continue;
      acc += u[i] * r[k - i];
    }
    r[k] = -(inv0 * acc);
  }
  return r;
}

/// Result of an inverse computation modulo a monic polynomial.
struct ModInverse {
  PPoly inverse;
  bool ok = false;
};

/// Inverse of f modulo monic m by the extended Euclidean algorithm, with plain
/// capped-precision propagation. ok == false when gcd(f, m) is not a unit.
inline ModInverse xgcd_mod(const PPoly& f, const PPoly& m) {
  if (!m.is_monic()) fail(ErrorKind::NonMonicModulus, "modulus " + m.to_string() + " is not monic");
  const CtxPtr ctx = detail::merge_ctx(f.ctx(), m.ctx());
  // Invariant: s_i * f == r_i (mod m).
  PPoly r0 = m, r1 = poly_rem(f, m);
  PPoly s0(ctx), s1 = PPoly::constant(PadicElem::one(ctx));
  auto strip = [](PPoly p) {
    // Drops leading coefficients that are exact zeros; an O(p^k) leading
    // coefficient on a polynomial with known digits below it is ambiguous.
    std::vector<PadicElem> c = p.coeffs();
    bool any_known = false;
    for (const auto& x : c) any_known = any_known || !x.is_indistinguishable_zero();
    if (!any_known) return std::pair<PPoly, bool>{PPoly(p.ctx()), true};
    if (c.back().is_indistinguishable_zero()) {
      fail(ErrorKind::PrecisionLossInGcd, "leading coefficient of " + p.to_string() + " has no known digit");
    }
    return std::pair<PPoly, bool>{std::move(p), false};
  };
  {
    auto [p1, z] = strip(r1);
    if (z) return {PPoly(ctx), false};
    r1 = p1;
  }
  while (r1.degree() > 0) {
    auto [q, r] = poly_divrem(r0, r1);
    PPoly s = s0 - q * s1;
    auto [r2, is_zero] = strip(r);
    if (is_zero) return {PPoly(ctx), false};
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = poly_rem(s, m);
  }
  // r1 is a nonzero constant.
  const PadicElem c_inv = r1.coeffs()[0].inv();
  return {poly_rem(c_inv * s1, m), true};
}

inline std::string PPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_exact_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs_[k].to_literal() + ")";
    if (k == 1) s += "*X";
    if (k > 1) s += "*X^" + std::to_string(k);
  }
  return s;
}

/// Parses the text form "(c0) + (c1)*X + ... + (ck)*X^k"; bare literals without
/// "+ O(...)" may omit the parentheses.
inline PPoly parse_poly(const CtxPtr& ctx, std::string_view text) {
  std::vector<PadicElem> coeffs;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto error = [&](const std::string& msg) {
    fail(ErrorKind::ParseError, msg + " in polynomial '" + std::string(text) + "'");
  };
  skip();
  if (text.substr(pos) == "0") return PPoly(ctx);
  while (true) {
    skip();
    if (pos >= text.size()) error("expected term");
    std::string_view lit;
    if (text[pos] == '(') {
      int depth = 0;
      const std::size_t start = pos + 1;
      for (; pos < text.size(); ++pos) {
        if (text[pos] == '(') ++depth;
        if (text[pos] == ')' && --depth == 0) break;
      }
      if (pos >= text.size()) error("unbalanced parentheses");
      lit = text.substr(start, pos - start);
      ++pos;
    } else if (text[pos] == 'X') {
      lit = "1";
    } else {
      const std::size_t start = pos;
      while (pos < text.size() && text[pos] != '*' && text[pos] != ' ' && !(text[pos] == '+' && pos > start)) ++pos;
      lit = text.substr(start, pos - start);
    }
    PadicElem c = parse_padic(ctx, lit);
    skip();
    std::size_t k = 0;
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      skip();
    }
    if (pos < text.size() && text[pos] == 'X') {
      ++pos;
      k = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (start == pos) error("expected exponent");
        k = std::stoul(std::string(text.substr(start, pos - start)));
      }
    }
    if (coeffs.size() <= k) coeffs.resize(k + 1, PadicElem::zero(ctx));
    coeffs[k] += c;
    skip();
    if (pos >= text.size()) break;
    if (text[pos] != '+') error("expected '+'");
    ++pos;
  }
  return PPoly(ctx, std::move(coeffs));
}

}  // namespace padicprec
