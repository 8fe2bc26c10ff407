#pragma once

// Loss-of-precision benchmark on random matrices over Q_p: optimal jagged
// precision vs. a capped-relative division-free charpoly vs. the same
// computation in fixed-digit arithmetic.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "padicprec/errors.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/oracle.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/precision.hpp"

namespace padicprec {

struct ExperimentConfig {
  unsigned long p = 2;
  std::size_t n = 9;
  long N = 20;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  bool optimal = true, cr = true, fp = true;
  std::string format = "csv";
  std::string out;

  void validate() const {
    if (samples < 1) fail(ErrorKind::InvalidInput, "samples must be >= 1");
    if (n < 1) fail(ErrorKind::InvalidInput, "n must be >= 1");
    if (N < 1) fail(ErrorKind::InvalidInput, "relative precision must be >= 1");
    if (mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0) {
      fail(ErrorKind::InvalidInput, "p must be prime");
    }
    if (format != "csv" && format != "json") fail(ErrorKind::InvalidInput, "format must be csv or json");
  }
};

/// Parses a comma-separated subset of {optimal, cr, fp}.
inline void set_columns(ExperimentConfig& cfg, const std::string& list) {
  cfg.optimal = cfg.cr = cfg.fp = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "optimal") cfg.optimal = true;
    else if (item == "cr") cfg.cr = true;
    else if (item == "fp") cfg.fp = true;
    else fail(ErrorKind::InvalidInput, "unknown column '" + item + "'");
  }
}

/// n x n matrix of random_padic draws at relative precision cfg.N; the lattice
/// is read off the entries.
inline PMatrix gen_random_matrix(const ExperimentConfig& cfg, Rng& rng) {
  const CtxPtr ctx = make_ctx(cfg.p, cfg.N);
  PadicMatrix m(cfg.n, cfg.n, PadicElem::zero(ctx));
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = 0; j < cfg.n; ++j) m(i, j) = random_padic(ctx, cfg.N, rng);
  return PMatrix::from_entries(ctx, std::move(m));
}

/// Losses of one trial, per coefficient k (N - (prec_k - val a_k)).
struct TrialLoss {
  bool excluded = false;
  std::string reason;
  std::vector<long> optimal, cr, fp;
};

struct ExperimentRow {
  std::size_t k = 0;
  double mean_optimal = 0, dev_optimal = 0;
  double mean_cr = 0, dev_cr = 0;
  double mean_fp = 0, dev_fp = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::vector<TrialLoss> trials;
  std::size_t excluded = 0;
};

inline TrialLoss run_trial(const ExperimentConfig& cfg, std::size_t index) {
  TrialLoss t;
  Rng rng(derive_seed(cfg.seed, index));
  const PMatrix m = gen_random_matrix(cfg, rng);
  const std::size_t n = cfg.n;
  const RatMatrix exact_m = to_rational(m.entries);
  const RatPoly exact_chi = berkowitz(exact_m, mpq_class(0), mpq_class(1));
  const mpz_class p(cfg.p);
  std::vector<long> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = detail::valuation(exact_chi[k], p);
    if (v[k] == kInf) {
      t.excluded = true;
      t.reason = "coefficient " + std::to_string(k) + " vanishes";
      return t;
    }
  }
  auto loss = [&](long prec, std::size_t k) { return cfg.N - (prec - v[k]); };
  try {
    std::vector<long> nprime;
    if (cfg.optimal || cfg.fp) {
      const PrecisionReport rep = optimal_jagged_charpoly(m);
      for (std::size_t k = 0; k < n; ++k)
        if (!rep.certified[k]) {
          t.excluded = true;
          t.reason = "optimal precision of coefficient " + std::to_string(k) + " not certified";
          return t;
        }
      nprime = rep.Nprime;
    }
    if (cfg.optimal)
      for (std::size_t k = 0; k < n; ++k) t.optimal.push_back(loss(nprime[k], k));
    if (cfg.cr) {
      const CtxPtr& ctx = m.ctx;
      const std::vector<PadicElem> chi = berkowitz(m.entries, PadicElem::zero(ctx), PadicElem::one(ctx));
      for (std::size_t k = 0; k < n; ++k) t.cr.push_back(loss(chi[k].absprec(), k));
    }
    if (cfg.fp) {
      const CtxPtr& ctx = m.ctx;
      Matrix<FloatPadic> fm(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fm(i, j) = FloatPadic::from(m(i, j), cfg.N);
      const std::vector<FloatPadic> chi = berkowitz(fm, FloatPadic::from_rational(ctx, cfg.N, 0),
                                                    FloatPadic::from_rational(ctx, cfg.N, 1));
      for (std::size_t k = 0; k < n; ++k) {
        // Correct digits stop at the first wrong one, and never exceed what the data determines.
        const long wrong = detail::valuation(chi[k].to_rational() - exact_chi[k], p);
        t.fp.push_back(loss(std::min(wrong, nprime[k]), k));
      }
    }
  } catch (const Error& e) {
    t = TrialLoss{};
    t.excluded = true;
    t.reason = e.what();
  }
  return t;
}

inline std::size_t experiment_threads() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PADIC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) threads = std::min(threads, static_cast<std::size_t>(cap));
  }
  return threads;
}

namespace detail {

inline void mean_dev(const std::vector<TrialLoss>& trials, std::vector<long> TrialLoss::*col, std::size_t k,
                     double& mean, double& dev) {
  // Exact integer sums; the division happens once at the end.
  mpz_class sum = 0, sumsq = 0;
  long count = 0;
  for (const auto& t : trials) {
    if (t.excluded || (t.*col).empty()) continue;
    const long x = (t.*col)[k];
    sum += x;
    sumsq += mpz_class(x) * x;
    ++count;
  }
  if (count == 0) {
    mean = dev = std::nan("");
    return;
  }
  const mpq_class m(sum, count);
  mean = m.get_d();
  if (count < 2) {
    dev = 0;
    return;
  }
  const mpq_class var((sumsq * count - sum * sum), mpz_class(count) * (count - 1));
  dev = std::sqrt(var.get_d());
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg;
  res.trials.resize(cfg.samples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.samples; i = next++) res.trials[i] = run_trial(cfg, i);
  };
  const std::size_t threads = std::min(experiment_threads(), cfg.samples);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& t : res.trials) res.excluded += t.excluded ? 1 : 0;
  for (std::size_t k = 0; k < cfg.n; ++k) {
    ExperimentRow row;
    row.k = k;
    detail::mean_dev(res.trials, &TrialLoss::optimal, k, row.mean_optimal, row.dev_optimal);
    detail::mean_dev(res.trials, &TrialLoss::cr, k, row.mean_cr, row.dev_cr);
    detail::mean_dev(res.trials, &TrialLoss::fp, k, row.mean_fp, row.dev_fp);
    res.rows.push_back(row);
  }
  return res;
}

namespace detail {

inline std::string fmt_stat(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace detail

inline std::string experiment_csv(const ExperimentResult& r) {
  std::string out = "k,mean_optimal,dev_optimal,mean_cr,dev_cr,mean_fp,dev_fp,excluded_trials\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.k) + "," + detail::fmt_stat(row.mean_optimal) + "," +
           detail::fmt_stat(row.dev_optimal) + "," + detail::fmt_stat(row.mean_cr) + "," +
           detail::fmt_stat(row.dev_cr) + "," + detail::fmt_stat(row.mean_fp) + "," +
           detail::fmt_stat(row.dev_fp) + "," + std::to_string(r.excluded) + "\n";
  }
  return out;
}

}  // namespace padicprec
