#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "padicprec/padicprec.hpp"

using namespace padicprec;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitPrecision = 3;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot write " + out);
  f << text;
}

int cmd_charpoly(const std::string& path) {
  const PMatrix m = matrix_from_json(read_json_file(path));
  const OptimalCharpoly r = charpoly_optimal(m);
  Json j;
  j["chi"] = poly_to_json(r.chi);
  j["text"] = r.chi.to_string();
  j["report"] = report_to_json(r.report);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_eigenprec(const std::string& path, std::uint64_t seed) {
  const PMatrix m = matrix_from_json(read_json_file(path));
  const Validity v = validity_check(m);
  // The compact form is computed on a lift of M; the formula only reads valuations.
  const long extra = 32 + (v.s == kInf ? 0 : 2 * std::max(v.s, 0L));
  Rng rng(seed);
  const CompactAdjugate ca = compact_form(detail::lifted(m, extra), rng);
  const std::vector<PadicElem> lambdas = simple_eigenvalues(ca.chi);
  Json list = Json::array();
  for (const EigenPrecision& e : eigenvalues_precision_batch(m, ca, lambdas)) {
    EigenPrecision shown = e;
    if (e.Nprime != kInf) shown.lambda = e.lambda.truncated(e.Nprime);
    list.push_back(eigen_to_json(shown));
  }
  Json j;
  j["eigenvalues"] = std::move(list);
  j["validity"] = v.diagnostic;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_check(const std::string& path) {
  const PMatrix m = matrix_from_json(read_json_file(path));
  const PrecisionReport r = optimal_jagged_charpoly(m);
  std::string gain = "none";
  if (r.coefficient_gain) gain = "coefficients";
  else if (r.gain) gain = "lattice";
  std::cout << "cyclic: " << (r.cyclic_mod_p ? (*r.cyclic_mod_p ? "true" : "false") : "unknown")
            << ", gain: " << gain << "\n";
  std::cout << "validity: " << r.diagnostic << "\n";
  std::cout << "sigma_vals:";
  for (long s : r.sigma_vals) std::cout << " " << (s == kInf ? std::string("inf") : std::to_string(s));
  std::cout << "\n";
  return 0;
}

struct ExperimentFlags {
  std::string config;
  std::optional<unsigned long> p;
  std::optional<std::size_t> n, samples;
  std::optional<long> prec;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> columns, format, out;
};

int cmd_experiment(const ExperimentFlags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) apply_config_json(cfg, read_json_file(f.config));
  if (f.p) cfg.p = *f.p;
  if (f.n) cfg.n = *f.n;
  if (f.prec) cfg.N = *f.prec;
  if (f.samples) cfg.samples = *f.samples;
  if (f.seed) cfg.seed = *f.seed;
  if (f.columns) set_columns(cfg, *f.columns);
  if (f.format) cfg.format = *f.format;
  if (f.out) cfg.out = *f.out;
  const ExperimentResult r = run_experiment(cfg);
  emit(cfg.format == "json" ? experiment_to_json(r).dump(2) + "\n" : experiment_csv(r), cfg.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal p-adic precision for characteristic polynomials and eigenvalues"};
  app.require_subcommand(1);

  std::string path;
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial at optimal jagged precision");
  charpoly->add_option("matrix", path, "matrix JSON file")->required();

  std::uint64_t eig_seed = 1;
  auto* eigen = app.add_subcommand("eigenprec", "simple eigenvalues and their optimal precision");
  eigen->add_option("matrix", path, "matrix JSON file")->required();
  eigen->add_option("--seed", eig_seed, "seed for the random cyclic vector");

  auto* check = app.add_subcommand("check", "precision diagnostics for a matrix");
  check->add_option("matrix", path, "matrix JSON file")->required();

  ExperimentFlags ef;
  auto* exp = app.add_subcommand("experiment", "loss-of-precision benchmark on random matrices");
  exp->add_option("config", ef.config, "experiment config JSON (flags override it)");
  exp->add_option("--p", ef.p, "prime (default 2)");
  exp->add_option("--n", ef.n, "matrix size (default 9)");
  exp->add_option("--prec", ef.prec, "relative precision N of the entries (default 20)");
  exp->add_option("--samples", ef.samples, "number of random matrices (default 1000)");
  exp->add_option("--seed", ef.seed, "master seed (default 0)");
  exp->add_option("--columns", ef.columns, "comma-separated subset of optimal,cr,fp");
  exp->add_option("--format", ef.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("--out", ef.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*charpoly) return cmd_charpoly(path);
    if (*eigen) return cmd_eigenprec(path, eig_seed);
    if (*check) return cmd_check(path);
    if (*exp) return cmd_experiment(ef);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
