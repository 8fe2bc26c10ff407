#pragma once

// Capped-precision arithmetic over Q_p.
//
// An element is either an exact zero, an exact value p^v * u (u an integer
// prime to p), or an approximation p^v * (u + O(p^r)) with 0 <= u < p^r and
// u a unit whenever r > 0. An approximation with r == 0 is the ball O(p^v).

#include <cstdint>
#include <gmpxx.h>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "padicprec/errors.hpp"

namespace padicprec {

/// Sentinel for "infinite" valuations and precisions.
inline constexpr long kInf = std::numeric_limits<long>::max();

inline long add_sat(long a, long b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

struct PadicCtx {
  mpz_class p;
  long default_prec = 20;
};

using CtxPtr = std::shared_ptr<const PadicCtx>;

inline CtxPtr make_ctx(const mpz_class& p, long default_prec = 20) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    fail(ErrorKind::InvalidInput, "p = " + p.get_str() + " is not prime");
  }
  if (default_prec <= 0) fail(ErrorKind::InvalidInput, "default precision must be positive");
  return std::make_shared<const PadicCtx>(PadicCtx{p, default_prec});
}

inline CtxPtr make_ctx(unsigned long p, long default_prec = 20) {
  return make_ctx(mpz_class(p), default_prec);
}

namespace detail {

inline mpz_class pow_p(const mpz_class& p, long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

/// Strips every factor p from m (m != 0) and returns how many were removed.
inline long remove_p(mpz_class& m, const mpz_class& p) {
  if (p == 2) {
    const auto k = static_cast<long>(mpz_scan1(m.get_mpz_t(), 0));
    mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return k;
  }
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

/// Nonnegative residue of m modulo p^k.
inline mpz_class mod_pk(const mpz_class& m, const mpz_class& p, long k) {
  mpz_class r;
  if (p == 2) {
    mpz_fdiv_r_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_fdiv_r(r.get_mpz_t(), m.get_mpz_t(), pow_p(p, k).get_mpz_t());
  }
  return r;
}

inline long valuation(const mpz_class& m, const mpz_class& p) {
  if (m == 0) return kInf;
  mpz_class t = m;
  return remove_p(t, p);
}

inline long valuation(const mpq_class& q, const mpz_class& p) {
  if (q == 0) return kInf;
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline mpq_class pow_p_rational(const mpz_class& p, long v) {
  if (v >= 0) return mpq_class(pow_p(p, v));
  return mpq_class(mpz_class(1), pow_p(p, -v));
}

inline CtxPtr merge_ctx(const CtxPtr& a, const CtxPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (a->p != b->p) fail(ErrorKind::InvalidInput, "mixing elements of Q_p for different p");
  return a;
}

}  // namespace detail

/// Instrumentation for scalar inversions, per thread.
struct OpCounters {
  std::uint64_t inversions = 0;
  std::uint64_t nonunit_inversions = 0;
};

inline OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

class PadicElem {
 public:
  enum class Kind : std::uint8_t { ExactZero, Exact, Approx };

  PadicElem() = default;

  static PadicElem zero(CtxPtr ctx) {
    PadicElem e;
    e.ctx_ = std::move(ctx);
    return e;
  }

  static PadicElem one(CtxPtr ctx) { return exact(std::move(ctx), mpz_class(1)); }

  /// Exact p^v * m for an arbitrary integer m.
  static PadicElem exact(CtxPtr ctx, mpz_class m, long v = 0) {
    PadicElem e;
    e.ctx_ = std::move(ctx);
    if (m == 0) return e;
    v += detail::remove_p(m, e.ctx_->p);
    e.kind_ = Kind::Exact;
    e.val_ = v;
    e.relprec_ = kInf;
    e.unit_ = std::move(m);
    return e;
  }

  static PadicElem exact(CtxPtr ctx, long m) { return exact(std::move(ctx), mpz_class(m)); }

  /// The ball O(p^k).
  static PadicElem big_oh(CtxPtr ctx, long k) {
    PadicElem e;
    e.ctx_ = std::move(ctx);
    e.kind_ = Kind::Approx;
    e.val_ = k;
    e.relprec_ = 0;
    return e;
  }

  /// p^v * m known modulo p^absprec; m is any integer.
  static PadicElem approx(CtxPtr ctx, mpz_class m, long v, long absprec) {
    if (absprec == kInf) return exact(std::move(ctx), std::move(m), v);
    const mpz_class& p = ctx->p;
    if (m == 0 || v >= absprec) return big_oh(std::move(ctx), absprec);
    long r = absprec - v;
    m = detail::mod_pk(m, p, r);
    if (m == 0) return big_oh(std::move(ctx), absprec);
    const long k = detail::remove_p(m, p);
    PadicElem e;
    e.ctx_ = std::move(ctx);
    e.kind_ = Kind::Approx;
    e.val_ = v + k;
    e.relprec_ = r - k;
    e.unit_ = std::move(m);
    return e;
  }

  /// Integer m known modulo p^absprec.
  static PadicElem from_integer(CtxPtr ctx, const mpz_class& m, long absprec) {
    return approx(std::move(ctx), m, 0, absprec);
  }

  /// Rational q (denominator may contain p) known modulo p^absprec.
  static PadicElem from_rational(CtxPtr ctx, const mpq_class& q, long absprec) {
    if (q == 0) {
      return absprec == kInf ? zero(std::move(ctx)) : big_oh(std::move(ctx), absprec);
    }
    const mpz_class& p = ctx->p;
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    const long vn = detail::remove_p(num, p);
    const long vd = detail::remove_p(den, p);
    if (den == 1) return approx(std::move(ctx), num, vn - vd, absprec);
    if (absprec == kInf) {
      fail(ErrorKind::InvalidInput, "rational with denominator prime to p has no exact representation");
    }
    const long v = vn - vd;
    if (v >= absprec) return big_oh(std::move(ctx), absprec);
    const mpz_class mod = detail::pow_p(p, absprec - v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    return approx(std::move(ctx), num * inv, v, absprec);
  }

  Kind kind() const noexcept { return kind_; }
  const CtxPtr& ctx() const noexcept { return ctx_; }
  const mpz_class& p() const { return ctx_->p; }

  bool is_exact_zero() const noexcept { return kind_ == Kind::ExactZero; }
  bool is_exact() const noexcept { return kind_ != Kind::Approx; }
  /// No known nonzero digit: exact zero or O(p^k).
  bool is_indistinguishable_zero() const noexcept {
    return kind_ == Kind::ExactZero || (kind_ == Kind::Approx && relprec_ == 0);
  }

  /// Valuation; kInf for the exact zero and the ball's exponent for O(p^k).
  long val() const noexcept { return kind_ == Kind::ExactZero ? kInf : val_; }
  long relprec() const noexcept { return kind_ == Kind::Approx ? relprec_ : kInf; }
  long absprec() const noexcept { return kind_ == Kind::Approx ? val_ + relprec_ : kInf; }
  const mpz_class& unit() const noexcept { return unit_; }

  bool is_unit() const noexcept { return !is_indistinguishable_zero() && val_ == 0; }
  bool is_exact_one() const noexcept { return kind_ == Kind::Exact && val_ == 0 && unit_ == 1; }

  /// The representative p^v * u as a rational (0 for balls and exact zero).
  mpq_class to_rational() const {
    if (is_indistinguishable_zero()) return 0;
    mpq_class r = detail::pow_p_rational(ctx_->p, val_) * mpq_class(unit_);
    r.canonicalize();
    return r;
  }

  /// Same representative, precision reduced to min(absprec, k).
  PadicElem truncated(long k) const {
    if (k >= absprec()) return *this;
    return approx(ctx_, to_integer_mantissa(), val_, k);
  }

  /// Same representative with `extra` more (zero) digits of absolute precision.
  PadicElem with_extra_digits(long extra) const {
    if (kind_ != Kind::Approx || extra <= 0) return *this;
    if (relprec_ == 0) return big_oh(ctx_, val_ + extra);
    PadicElem e = *this;
    e.relprec_ += extra;
    return e;
  }

  /// The representative promoted to an exact value.
  PadicElem exactified() const {
    if (is_indistinguishable_zero()) return zero(ctx_);
    return exact(ctx_, unit_, val_);
  }

  /// Structural identity: same kind, valuation, precision and mantissa.
  friend bool operator==(const PadicElem& a, const PadicElem& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::ExactZero) return true;
    return a.val_ == b.val_ && a.relprec() == b.relprec() && a.unit_ == b.unit_;
  }

  friend PadicElem operator+(const PadicElem& a, const PadicElem& b) {
    CtxPtr ctx = detail::merge_ctx(a.ctx_, b.ctx_);
    if (a.is_exact_zero()) return b.with_ctx(ctx);
    if (b.is_exact_zero()) return a.with_ctx(ctx);
    const mpz_class& p = ctx->p;
    if (a.kind_ == Kind::Exact && b.kind_ == Kind::Exact) {
      const long v = std::min(a.val_, b.val_);
      mpz_class m = a.unit_ * detail::pow_p(p, a.val_ - v) + b.unit_ * detail::pow_p(p, b.val_ - v);
      return exact(std::move(ctx), std::move(m), v);
    }
    const long absp = std::min(a.absprec(), b.absprec());
    const long v = std::min(a.val_, b.val_);
    if (v >= absp) return big_oh(std::move(ctx), absp);
    mpz_class m = 0;
    if (a.val_ < absp && a.relprec() > 0) m += a.unit_ * detail::pow_p(p, a.val_ - v);
    if (b.val_ < absp && b.relprec() > 0) m += b.unit_ * detail::pow_p(p, b.val_ - v);
    return approx(std::move(ctx), std::move(m), v, absp);
  }

  friend PadicElem operator-(const PadicElem& a) {
    if (a.kind_ == Kind::ExactZero) return a;
    PadicElem e = a;
    if (a.kind_ == Kind::Exact) {
      e.unit_ = -a.unit_;
    } else if (a.relprec_ > 0) {
      e.unit_ = detail::pow_p(a.ctx_->p, a.relprec_) - a.unit_;
    }
    return e;
  }

  friend PadicElem operator-(const PadicElem& a, const PadicElem& b) { return a + (-b); }

  friend PadicElem operator*(const PadicElem& a, const PadicElem& b) {
    CtxPtr ctx = detail::merge_ctx(a.ctx_, b.ctx_);
    if (a.is_exact_zero() || b.is_exact_zero()) return zero(std::move(ctx));
    const long v = a.val_ + b.val_;
    if (a.kind_ == Kind::Exact && b.kind_ == Kind::Exact) {
      PadicElem e;
      e.ctx_ = std::move(ctx);
      e.kind_ = Kind::Exact;
      e.val_ = v;
      e.relprec_ = kInf;
      e.unit_ = a.unit_ * b.unit_;
      return e;
    }
    const long r = std::min(a.relprec(), b.relprec());
    if (r == 0) return big_oh(std::move(ctx), v);
    PadicElem e;
    e.kind_ = Kind::Approx;
    e.val_ = v;
    e.relprec_ = r;
    e.unit_ = detail::mod_pk(a.unit_ * b.unit_, ctx->p, r);
    e.ctx_ = std::move(ctx);
    return e;
  }

  PadicElem& operator+=(const PadicElem& o) { return *this = *this + o; }
  PadicElem& operator-=(const PadicElem& o) { return *this = *this - o; }
  PadicElem& operator*=(const PadicElem& o) { return *this = *this * o; }

  /// Multiplicative inverse. Exact values other than +-p^v become
  /// approximations at the context's default precision.
  PadicElem inv() const {
    if (is_indistinguishable_zero()) {
      fail(ErrorKind::DivisionByIndistinguishableZero, "inverse of " + to_literal());
    }
    auto& counters = op_counters();
    ++counters.inversions;
    if (val_ != 0) ++counters.nonunit_inversions;
    const mpz_class& p = ctx_->p;
    if (kind_ == Kind::Exact) {
      if (unit_ == 1 || unit_ == -1) return exact(ctx_, unit_, -val_);
      const long r = ctx_->default_prec;
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), detail::pow_p(p, r).get_mpz_t());
      return approx(ctx_, inv, -val_, -val_ + r);
    }
    PadicElem e;
    e.ctx_ = ctx_;
    e.kind_ = Kind::Approx;
    e.val_ = -val_;
    e.relprec_ = relprec_;
    mpz_invert(e.unit_.get_mpz_t(), unit_.get_mpz_t(), detail::pow_p(p, relprec_).get_mpz_t());
    return e;
  }

  friend PadicElem operator/(const PadicElem& a, const PadicElem& b) { return a * b.inv(); }

  /// Multiplication by p^k (exact shift of the valuation).
  PadicElem shifted(long k) const {
    if (kind_ == Kind::ExactZero) return *this;
    PadicElem e = *this;
    e.val_ += k;
    return e;
  }

  /// Canonical text literal: "0", "u", "p^v * u", "u + O(p^k)", "p^v * u + O(p^k)", "O(p^k)".
  std::string to_literal() const {
    if (kind_ == Kind::ExactZero) return "0";
    const std::string ps = ctx_->p.get_str();
    if (kind_ == Kind::Approx && relprec_ == 0) return "O(" + ps + "^" + std::to_string(val_) + ")";
    std::string s;
    if (val_ != 0) s = ps + "^" + std::to_string(val_) + " * ";
    s += unit_.get_str();
    if (kind_ == Kind::Approx) s += " + O(" + ps + "^" + std::to_string(absprec()) + ")";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const PadicElem& e) { return os << e.to_literal(); }

 private:
  PadicElem with_ctx(const CtxPtr& ctx) const {
    PadicElem e = *this;
    e.ctx_ = ctx;
    return e;
  }

  mpz_class to_integer_mantissa() const { return is_indistinguishable_zero() ? mpz_class(0) : unit_; }

  CtxPtr ctx_;
  Kind kind_ = Kind::ExactZero;
  long val_ = 0;
  long relprec_ = 0;
  mpz_class unit_;
};

/// a and b agree on every digit both of them know.
inline bool agrees(const PadicElem& a, const PadicElem& b) { return (a - b).is_indistinguishable_zero(); }

/// Agreement of an approximation with an exact rational on the digits it knows.
inline bool agrees(const PadicElem& a, const mpq_class& exact_value) {
  if (a.is_exact()) return a.to_rational() == exact_value;
  const mpq_class diff = a.to_rational() - exact_value;
  return detail::valuation(diff, a.p()) >= a.absprec();
}

namespace detail {

struct LiteralParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool at_end() {
    skip_ws();
    return pos == s.size();
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::ParseError, msg + " in literal '" + std::string(s) + "'");
  }
  mpz_class integer(bool allow_sign) {
    skip_ws();
    const std::size_t start = pos;
    if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits) error("expected integer");
    std::string text(s.substr(start, pos - start));
    if (text[0] == '+') text.erase(0, 1);
    return mpz_class(text);
  }
  long small_integer() {
    const mpz_class z = integer(true);
    if (!z.fits_slong_p()) error("exponent out of range");
    return z.get_si();
  }
  /// Parses "p^k" after the base has been read; checks the base.
  long exponent_of(const mpz_class& base, const mpz_class& p) {
    if (base != p) error("base " + base.get_str() + " differs from p = " + p.get_str());
    if (!eat('^')) error("expected '^'");
    return small_integer();
  }
  long big_oh(const mpz_class& p) {
    if (!eat('O') || !eat('(')) error("expected O(p^k)");
    const mpz_class base = integer(false);
    const long k = exponent_of(base, p);
    if (!eat(')')) error("expected ')'");
    return k;
  }
};

}  // namespace detail

/// Parses any literal accepted by PadicElem::to_literal (and non-canonical variants
/// such as "75 + O(5^4)" or "-1 + O(2^3)").
inline PadicElem parse_padic(const CtxPtr& ctx, std::string_view text) {
  detail::LiteralParser ps{text};
  const mpz_class& p = ctx->p;
  ps.skip_ws();
  if (ps.pos < text.size() && text[ps.pos] == 'O') {
    const long k = ps.big_oh(p);
    if (!ps.at_end()) ps.error("trailing characters");
    return PadicElem::big_oh(ctx, k);
  }
  mpz_class first = ps.integer(true);
  long v = 0;
  mpz_class mantissa;
  if (ps.eat('^')) {
    if (first != p) ps.error("base " + first.get_str() + " differs from p = " + p.get_str());
    v = ps.small_integer();
    if (!ps.eat('*')) ps.error("expected '*'");
    mantissa = ps.integer(true);
  } else {
    mantissa = first;
  }
  if (ps.at_end()) return PadicElem::exact(ctx, mantissa, v);
  if (!ps.eat('+')) ps.error("expected '+ O(p^k)'");
  const long k = ps.big_oh(p);
  if (!ps.at_end()) ps.error("trailing characters");
  return PadicElem::approx(ctx, mantissa, v, k);
}

/// Reduction of an integral element to F_p, as an integer in [0, p).
inline mpz_class reduce_mod_p(const PadicElem& a) {
  if (a.is_exact_zero()) return 0;
  if (a.val() < 0) fail(ErrorKind::NegativeValuation, "reduction mod p of " + a.to_literal());
  if (a.absprec() < 1) fail(ErrorKind::InsufficientPrecision, "no known digit in " + a.to_literal());
  if (a.val() > 0) return 0;
  return detail::mod_pk(a.unit(), a.p(), 1);
}

// ---------------------------------------------------------------------------
// Floating-point model: fixed relative precision, no precision tracking.
// Every result is the exact result of the operation on the representatives,
// truncated to `digits` p-adic digits starting at its valuation.

class FloatPadic {
 public:
  FloatPadic() = default;

  static FloatPadic from_rational(CtxPtr ctx, long digits, const mpq_class& q) {
    FloatPadic f;
    f.ctx_ = std::move(ctx);
    f.digits_ = digits;
    if (q == 0) return f;
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    const mpz_class& p = f.ctx_->p;
    const long v = detail::remove_p(num, p) - detail::remove_p(den, p);
    const mpz_class mod = detail::pow_p(p, digits);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    f.set(v, num * inv);
    return f;
  }

  static FloatPadic from(const PadicElem& e, long digits) {
    return from_rational(e.ctx(), digits, e.to_rational());
  }

  bool is_zero() const noexcept { return zero_; }
  long val() const noexcept { return zero_ ? kInf : val_; }
  const CtxPtr& ctx() const noexcept { return ctx_; }

  mpq_class to_rational() const {
    if (zero_) return 0;
    mpq_class r = detail::pow_p_rational(ctx_->p, val_) * mpq_class(unit_);
    r.canonicalize();
    return r;
  }

  friend FloatPadic operator+(const FloatPadic& a, const FloatPadic& b) {
    if (a.zero_) return b.ctx_ ? b : a;
    if (b.zero_) return a;
    const mpz_class& p = a.ctx_->p;
    const long v = std::min(a.val_, b.val_);
    mpz_class m = 0;
    if (a.val_ - v < a.digits_) m += a.unit_ * detail::pow_p(p, a.val_ - v);
    if (b.val_ - v < a.digits_) m += b.unit_ * detail::pow_p(p, b.val_ - v);
    FloatPadic r;
    r.ctx_ = a.ctx_;
    r.digits_ = a.digits_;
    r.set(v, std::move(m));
    return r;
  }

  friend FloatPadic operator-(const FloatPadic& a) {
    FloatPadic r = a;
    if (!a.zero_) r.unit_ = detail::pow_p(a.ctx_->p, a.digits_) - a.unit_;
    return r;
  }

  friend FloatPadic operator-(const FloatPadic& a, const FloatPadic& b) { return a + (-b); }

  friend FloatPadic operator*(const FloatPadic& a, const FloatPadic& b) {
    FloatPadic r;
    r.ctx_ = a.ctx_ ? a.ctx_ : b.ctx_;
    r.digits_ = a.digits_;
    if (a.zero_ || b.zero_) return r;
    r.set(a.val_ + b.val_, a.unit_ * b.unit_);
    return r;
  }

 private:
  void set(long v, mpz_class m) {
    const mpz_class& p = ctx_->p;
    if (m == 0) {
      zero_ = true;
      return;
    }
    v += detail::remove_p(m, p);
    zero_ = false;
    val_ = v;
    unit_ = detail::mod_pk(m, p, digits_);
  }

  CtxPtr ctx_;
  long digits_ = 1;
  bool zero_ = true;
  long val_ = 0;
  mpz_class unit_;
};

// ---------------------------------------------------------------------------
// Randomness. All draws go through std::mt19937_64 with integer-only
// transformations so results are identical across platforms.

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) for n >= 1.
inline std::uint64_t uniform_u64(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// Uniform integer in [0, bound) for bound >= 1.
inline mpz_class uniform_below(Rng& rng, const mpz_class& bound) {
  if (bound <= 1) return 0;
  const std::size_t bits = mpz_sizeinbase(mpz_class(bound - 1).get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  mpz_class r;
  do {
    r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t x = rng();
      r <<= 64;
      r += mpz_class(static_cast<unsigned long>(x >> 32)) << 32;
      r += static_cast<unsigned long>(x & 0xffffffffULL);
    }
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  } while (r >= bound);
  return r;
}

/// Largest |v| produced by random_valuation; the tail beyond it is redrawn.
inline constexpr long kMaxRandomValuation = 10000;

/// Draws v with P[v = 0] = 1/5 and P[v = n] = 2 / (5 |n| (|n| + 1)) for n != 0.
inline long random_valuation(Rng& rng) {
  const std::uint64_t bucket = uniform_u64(rng, 5);
  if (bucket == 0) return 0;
  // P[m >= n] = 1/n via m = floor(2^63 / r) with r uniform in [1, 2^63].
  std::uint64_t m;
  do {
    const std::uint64_t r = (rng() >> 1) + 1;
    m = (std::uint64_t{1} << 63) / r;
  } while (m > static_cast<std::uint64_t>(kMaxRandomValuation));
  const long mag = static_cast<long>(m);
  return bucket <= 2 ? mag : -mag;
}

/// p^v * (a + O(p^N)) with v from random_valuation and a uniform in [0, p^N).
/// The absolute precision is v + N whatever v_p(a) is, so an even a (p = 2)
/// leaves fewer than N significant digits.
inline PadicElem random_padic(const CtxPtr& ctx, long relprec, Rng& rng) {
  if (relprec < 1) fail(ErrorKind::InvalidInput, "relative precision must be >= 1");
  const long v = random_valuation(rng);
  const mpz_class a = uniform_below(rng, detail::pow_p(ctx->p, relprec));
  return PadicElem::approx(ctx, a, v, v + relprec);
}

/// Uniform integral element with the given absolute precision.
inline PadicElem random_integral(const CtxPtr& ctx, long absprec, Rng& rng) {
  return PadicElem::from_integer(ctx, uniform_below(rng, detail::pow_p(ctx->p, absprec)), absprec);
}

/// Seed for trial `index` derived from a master seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace padicprec
