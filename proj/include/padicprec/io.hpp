#pragma once

// JSON encodings: matrices, polynomials, compact adjugates, precision reports
// and experiment configurations/results. +inf is written as the string "inf".

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padicprec/compact.hpp"
#include "padicprec/errors.hpp"
#include "padicprec/experiment.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/polyring.hpp"
#include "padicprec/precision.hpp"

namespace padicprec {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json exponent_json(long e) { return e == kInf ? Json("inf") : Json(e); }

inline long exponent_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    fail(ErrorKind::ParseError, "expected an integer or \"inf\"");
  }
  if (!j.is_number_integer()) fail(ErrorKind::ParseError, "expected an integer or \"inf\"");
  return j.get<long>();
}

inline Json prime_json(const mpz_class& p) {
  if (p.fits_ulong_p()) return Json(p.get_ui());
  return Json(p.get_str());
}

inline mpz_class prime_from_json(const Json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class p;
    if (p.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::ParseError, "bad prime");
    return p;
  }
  fail(ErrorKind::ParseError, "\"p\" must be an integer");
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline Json matrix_block_json(const PadicMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_literal());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline PadicMatrix matrix_block_from_json(const CtxPtr& ctx, const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) fail(ErrorKind::ParseError, "matrix block must have n rows");
  PadicMatrix m(n, n, PadicElem::zero(ctx));
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) fail(ErrorKind::ParseError, "matrix row must have n entries");
    for (std::size_t k = 0; k < n; ++k) {
      const Json& e = j[i][k];
      if (e.is_string()) m(i, k) = parse_padic(ctx, e.get<std::string>());
      else if (e.is_number_integer()) m(i, k) = PadicElem::exact(ctx, e.get<long>());
      else fail(ErrorKind::ParseError, "matrix entries must be literals");
    }
  }
  return m;
}

inline Json matrix_to_json(const PMatrix& m) {
  Json j;
  j["p"] = detail::prime_json(m.ctx->p);
  j["n"] = m.n();
  Json prec;
  if (m.prec.is_flat()) {
    prec["flat"] = detail::exponent_json(m.prec.flat_value());
  } else {
    Json rows = Json::array();
    const auto& e = m.prec.jagged_values();
    for (std::size_t i = 0; i < e.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < e.cols(); ++k) row.push_back(detail::exponent_json(e(i, k)));
      rows.push_back(std::move(row));
    }
    prec["jagged"] = std::move(rows);
  }
  j["prec"] = std::move(prec);
  j["entries"] = matrix_block_json(m.entries);
  return j;
}

inline PMatrix matrix_from_json(const Json& j) {
  const mpz_class p = detail::prime_from_json(detail::field(j, "p"));
  const Json& nj = detail::field(j, "n");
  if (!nj.is_number_integer() || nj.get<long>() < 0) fail(ErrorKind::ParseError, "\"n\" must be a nonnegative integer");
  const auto n = static_cast<std::size_t>(nj.get<long>());
  const Json& pj = detail::field(j, "prec");
  PrecisionSpec prec;
  long top = 0;
  if (pj.is_object() && pj.contains("flat")) {
    prec = PrecisionSpec::flat(detail::exponent_from_json(pj.at("flat")));
  } else if (pj.is_object() && pj.contains("jagged")) {
    const Json& rows = pj.at("jagged");
    if (!rows.is_array() || rows.size() != n) fail(ErrorKind::ParseError, "jagged precision must have n rows");
    Matrix<long> e(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) fail(ErrorKind::ParseError, "jagged row must have n entries");
      for (std::size_t k = 0; k < n; ++k) e(i, k) = detail::exponent_from_json(rows[i][k]);
    }
    prec = PrecisionSpec::jagged(std::move(e));
  } else {
    fail(ErrorKind::ParseError, "\"prec\" must be {\"flat\": N} or {\"jagged\": [[...]]}");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (prec.at(i, k) != kInf) top = std::max(top, prec.at(i, k));
  if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) fail(ErrorKind::InvalidInput, "p must be prime");
  const CtxPtr ctx = make_ctx(p, std::max(20L, 2 * top));
  PMatrix m{ctx, matrix_block_from_json(ctx, detail::field(j, "entries"), n), std::move(prec)};
  m.validate();
  return m;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline Json poly_to_json(const PPoly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.to_literal());
  return a;
}

inline PPoly poly_from_json(const CtxPtr& ctx, const Json& j) {
  if (j.is_string()) return parse_poly(ctx, j.get<std::string>());
  if (!j.is_array()) fail(ErrorKind::ParseError, "polynomial must be an array of literals");
  std::vector<PadicElem> cs;
  for (const auto& c : j) {
    if (!c.is_string()) fail(ErrorKind::ParseError, "polynomial coefficients must be literals");
    cs.push_back(parse_padic(ctx, c.get<std::string>()));
  }
  return PPoly(ctx, std::move(cs));
}

inline Json compact_to_json(const CompactAdjugate& ca) {
  Json j;
  j["alpha"] = poly_to_json(ca.alpha);
  j["chi"] = poly_to_json(ca.chi);
  j["P"] = matrix_block_json(ca.P);
  j["Q"] = matrix_block_json(ca.Q);
  return j;
}

inline CompactAdjugate compact_from_json(const CtxPtr& ctx, const Json& j) {
  CompactAdjugate ca;
  ca.alpha = poly_from_json(ctx, detail::field(j, "alpha"));
  ca.chi = poly_from_json(ctx, detail::field(j, "chi"));
  if (!ca.chi.is_monic()) fail(ErrorKind::ParseError, "chi must be monic");
  const auto n = static_cast<std::size_t>(ca.chi.degree());
  ca.P = matrix_block_from_json(ctx, detail::field(j, "P"), n);
  ca.Q = matrix_block_from_json(ctx, detail::field(j, "Q"), n);
  return ca;
}

inline Json report_to_json(const PrecisionReport& r) {
  Json j;
  Json np = Json::array(), cert = Json::array(), sv = Json::array();
  for (long x : r.Nprime) np.push_back(detail::exponent_json(x));
  for (bool b : r.certified) cert.push_back(b);
  for (long x : r.sigma_vals) sv.push_back(detail::exponent_json(x));
  j["Nprime"] = std::move(np);
  j["certified"] = std::move(cert);
  j["gain"] = r.gain;
  j["coefficient_gain"] = r.coefficient_gain;
  j["sigma_vals"] = std::move(sv);
  j["cyclic_mod_p"] = r.cyclic_mod_p ? Json(*r.cyclic_mod_p) : Json(nullptr);
  j["validity_ok"] = r.validity_ok;
  j["validity_s"] = detail::exponent_json(r.validity_s);
  j["diagnostic"] = r.diagnostic;
  return j;
}

inline Json eigen_to_json(const EigenPrecision& e) {
  Json j;
  j["lambda"] = e.lambda.to_literal();
  j["Nprime"] = detail::exponent_json(e.Nprime);
  Json t;
  t["val_alpha"] = detail::exponent_json(e.val_alpha);
  t["val_dchi"] = detail::exponent_json(e.val_dchi);
  t["argmin"] = Json::array({e.argmin_i, e.argmin_j});
  j["terms"] = std::move(t);
  return j;
}

inline void apply_config_json(ExperimentConfig& cfg, const Json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "experiment config must be an object");
  try {
    if (j.contains("p")) cfg.p = j.at("p").get<unsigned long>();
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("prec")) cfg.N = j.at("prec").get<long>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("columns")) {
      const Json& c = j.at("columns");
      if (c.is_string()) {
        set_columns(cfg, c.get<std::string>());
      } else {
        std::string joined;
        for (const auto& x : c) joined += (joined.empty() ? "" : ",") + x.get<std::string>();
        set_columns(cfg, joined);
      }
    }
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("experiment config: ") + e.what());
  }
}

inline Json experiment_to_json(const ExperimentResult& r) {
  auto stat = [](double x) { return std::isnan(x) ? Json(nullptr) : Json(std::stod(detail::fmt_stat(x))); };
  Json j;
  Json cfg;
  cfg["p"] = r.config.p;
  cfg["n"] = r.config.n;
  cfg["prec"] = r.config.N;
  cfg["samples"] = r.config.samples;
  cfg["seed"] = r.config.seed;
  Json cols = Json::array();
  if (r.config.optimal) cols.push_back("optimal");
  if (r.config.cr) cols.push_back("cr");
  if (r.config.fp) cols.push_back("fp");
  cfg["columns"] = std::move(cols);
  j["config"] = std::move(cfg);
  j["fp_model"] = "fixed relative digits, truncating";
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["k"] = row.k;
    x["mean_optimal"] = stat(row.mean_optimal);
    x["dev_optimal"] = stat(row.dev_optimal);
    x["mean_cr"] = stat(row.mean_cr);
    x["dev_cr"] = stat(row.dev_cr);
    x["mean_fp"] = stat(row.mean_fp);
    x["dev_fp"] = stat(row.dev_fp);
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  j["excluded_trials"] = r.excluded;
  return j;
}

}  // namespace padicprec
