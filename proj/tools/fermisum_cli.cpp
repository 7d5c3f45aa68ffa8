// Command-line front end: orchestrates the verification suites and the
// numerical experiments, emitting reproducible CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 suite failure, 2 usage/validation error,
// 3 capacity error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermisum/errors.hpp"
#include "fermisum/holonomy.hpp"
#include "fermisum/spectral.hpp"
#include "fermisum/statesum.hpp"
#include "fermisum/util.hpp"
#include "fermisum/verify.hpp"
#include "fermisum/zetareg.hpp"

namespace {

using fermisum::Complex;
using fermisum::format_float17;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

constexpr double kPi = std::numbers::pi;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fermisum::ArgumentError("cannot open output file '" + out_path + "'");
  out << content;
}

/// Defaults come from the JSON config file unless the flag was given
/// explicitly on the command line.
class ConfigFile {
 public:
  void load(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw fermisum::ArgumentError("cannot open config file '" + path + "'");
    try {
      in >> cfg_;
    } catch (const json::parse_error& err) {
      throw fermisum::ArgumentError(std::string("config file: invalid JSON: ") +
                                    err.what());
    }
    if (!cfg_.is_object())
      throw fermisum::ArgumentError("config file: expected a JSON object");
  }

  template <typename T>
  void apply(const CLI::Option* opt, const char* key, T& var) const {
    if (opt->count() == 0 && cfg_.contains(key)) {
      try {
        var = cfg_.at(key).get<T>();
      } catch (const json::exception&) {
        throw fermisum::ArgumentError(std::string("config file: bad value for field '") +
                                      key + "'");
      }
    }
  }

  bool has(const char* key) const { return cfg_.contains(key); }
  json raw(const char* key) const { return cfg_.at(key); }

 private:
  json cfg_ = json::object();
};

std::string compact(const json& j) { return j.dump(); }

json complex_fields(const char* prefix, Complex z) {
  json j;
  j[std::string(prefix) + "_re"] = z.real();
  j[std::string(prefix) + "_im"] = z.imag();
  return j;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(bool mutate, const std::string& out_path) {
  fermisum::verify::VerifyOptions options;
  options.mutate_berezin_sign = mutate;
  const auto results = fermisum::verify::run_verification(options);

  bool all_pass = true;
  json suites = json::array();
  for (const auto& r : results) {
    suites.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all_pass = all_pass && r.pass;
  }
  json doc;
  doc["command"] = "verify";
  doc["mutate_berezin"] = mutate;
  doc["suites"] = suites;
  doc["all_pass"] = all_pass;
  write_output(out_path, doc.dump(2) + "\n");

  if (!all_pass) {
    for (const auto& r : results)
      if (!r.pass)
        std::cerr << "verify: suite '" << r.name << "' failed: " << r.detail << "\n";
    return kExitSuiteFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// circle

int cmd_circle(const fermisum::cli::Holonomy& holonomy, long n_edges, double l,
               bool force_symbolic, const std::string& out_path,
               const std::string& format) {
  const auto tri = fermisum::cli::circle_from(holonomy, std::size_t(n_edges), l);

  json config;
  config["holonomy"] = holonomy.echo;
  config["N"] = n_edges;
  config["n"] = tri.fibre_dim;
  config["l"] = l;

  struct Record {
    Complex value;
    const char* method;
  };
  std::vector<Record> records;
  records.push_back({fermisum::statesum::circle_partition_closed(tri), "closed"});
  // symbolic path: on request it may raise the capacity error; otherwise it
  // runs whenever the generator budget allows
  if (force_symbolic || 2 * tri.fibre_dim * tri.edge_count() <=
                            std::size_t(fermisum::grassmann::kGeneratorCapacity))
    records.push_back({fermisum::statesum::circle_partition_symbolic(tri), "symbolic"});

  if (format == "csv") {
    std::ostringstream os;
    os << "# config=" << compact(config) << "\n";
    os << "n,N,l,mode,value_re,value_im,method\n";
    for (const auto& r : records)
      os << tri.fibre_dim << ',' << n_edges << ',' << format_float17(l) << ",massless,"
         << format_float17(r.value.real()) << ',' << format_float17(r.value.imag())
         << ',' << r.method << "\n";
    write_output(out_path, os.str());
  } else {
    json doc;
    doc["command"] = "circle";
    doc["config"] = config;
    doc["records"] = json::array();
    for (const auto& r : records) {
      json rec;
      rec["n"] = tri.fibre_dim;
      rec["N"] = n_edges;
      rec["l"] = l;
      rec["mode"] = "massless";
      rec["value_re"] = r.value.real();
      rec["value_im"] = r.value.imag();
      rec["method"] = r.method;
      doc["records"].push_back(rec);
    }
    write_output(out_path, doc.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(double theta, long n_edges, long k_max, std::optional<double> l,
                 const std::string& out_path, const std::string& format) {
  const auto report = fermisum::spectral::compare_spectra(theta, n_edges, k_max, l);

  json config;
  config["theta"] = theta;
  config["N"] = n_edges;
  config["k_max"] = k_max;
  config["l"] = report.l;

  if (format == "json") {
    json doc;
    doc["command"] = "spectrum";
    doc["config"] = config;
    doc["deviation_order"] = report.deviation_order;
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < report.k.size(); ++i) {
      json row;
      row["k"] = report.k[i];
      row["re_disc"] = report.discrete[i].real();
      row["im_disc"] = report.discrete[i].imag();
      row["re_cont"] = report.continuum[i].real();
      row["im_cont"] = report.continuum[i].imag();
      row["abs_dev"] = report.deviation[i];
      doc["rows"].push_back(row);
    }
    write_output(out_path, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# config=" << compact(config) << "\n";
    os << fermisum::spectral::spectrum_csv(report);
    write_output(out_path, os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// mass

int cmd_mass(double theta, double mass, double l, long n_min, long n_max, int points,
             bool exponential, double mass_prime, const std::string& out_path,
             const std::string& format) {
  if (n_min < 1 || n_max < n_min)
    throw fermisum::ArgumentError("mass: need 1 <= nmin <= nmax");
  if (points < 2) throw fermisum::ArgumentError("mass: need at least two sweep points");

  const auto q = fermisum::linalg::ComplexMatrix::scalar(std::polar(1.0, -theta));
  const Complex limit = exponential
                            ? fermisum::statesum::massive_limit(q, mass_prime, l)
                            : fermisum::statesum::massive_limit(q, mass, l);

  json config;
  config["theta"] = theta;
  config["l"] = l;
  config["nmin"] = n_min;
  config["nmax"] = n_max;
  config["points"] = points;
  if (exponential)
    config["mprime"] = mass_prime;
  else
    config["m"] = mass;
  config["mode"] = exponential ? "exponential" : "massive";

  std::vector<long> sweep;
  for (int i = 0; i < points; ++i) {
    const double t = double(i) / double(points - 1);
    const long n = std::lround(double(n_min) * std::pow(double(n_max) / double(n_min), t));
    if (sweep.empty() || sweep.back() != n) sweep.push_back(n);
  }

  std::vector<double> logn, logdev;
  std::vector<std::pair<long, Complex>> rows;
  for (long n : sweep) {
    Complex value;
    if (exponential) {
      value = fermisum::statesum::exponential_mass_partition(
          fermisum::statesum::u1_circle(theta, std::size_t(n), l), mass_prime);
    } else {
      value = fermisum::statesum::massive_circle_partition(fermisum::statesum::make_massive(
          fermisum::statesum::u1_circle(theta, std::size_t(n), l), mass));
    }
    rows.push_back({n, value});
    const double dev = std::abs(value - limit);
    if (!exponential && dev > 0.0) {
      logn.push_back(std::log(double(n)));
      logdev.push_back(std::log(dev));
    }
  }

  std::optional<double> slope;
  if (logn.size() >= 2) slope = fermisum::fit_line(logn, logdev).slope;

  if (format == "json") {
    json doc;
    doc["command"] = "mass";
    doc["config"] = config;
    doc["limit_re"] = limit.real();
    doc["limit_im"] = limit.imag();
    doc["rows"] = json::array();
    for (const auto& [n, value] : rows) {
      json row;
      row["N"] = n;
      row["value_re"] = value.real();
      row["value_im"] = value.imag();
      row["abs_dev"] = std::abs(value - limit);
      doc["rows"].push_back(row);
    }
    if (slope)
      doc["fitted_slope"] = *slope;
    else
      doc["fitted_slope"] = nullptr;
    write_output(out_path, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# config=" << compact(config) << "\n";
    os << "N,value_re,value_im,abs_dev\n";
    for (const auto& [n, value] : rows)
      os << n << ',' << format_float17(value.real()) << ','
         << format_float17(value.imag()) << ','
         << format_float17(std::abs(value - limit)) << "\n";
    if (slope) os << "# fitted_slope=" << format_float17(*slope) << "\n";
    write_output(out_path, os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cutoff

int cmd_cutoff(double a, double l, double c_min, double c_max, int points,
               const std::string& out_path, const std::string& format) {
  if (points < 4) throw fermisum::ArgumentError("cutoff: need at least four grid points");
  if (!(c_min > 0.0 && c_max > c_min))
    throw fermisum::ArgumentError("cutoff: need 0 < cmin < cmax");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i)
    grid.push_back(c_min * std::pow(c_max / c_min, double(i) / double(points - 1)));
  const auto report = fermisum::spectral::cutoff_scan(a, l, grid);

  json config;
  config["a"] = a;
  config["l"] = l;
  config["cmin"] = c_min;
  config["cmax"] = c_max;
  config["points"] = points;
  config["scheme"] = "sharp";

  if (format == "json") {
    json doc;
    doc["command"] = "cutoff";
    doc["config"] = config;
    doc["fitted_kappa"] = report.kappa;
    doc["fitted_beta"] = report.beta;
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
      json row;
      row["c"] = report.entries[i].c;
      row["logdet"] = report.entries[i].log_det;
      row["fitted_leading"] =
          report.kappa * report.entries[i].c * std::log(report.entries[i].c);
      row["residual"] = report.residual_after_leading[i];
      row["lambda_counterterm"] = report.lambda_counterterm[i];
      doc["rows"].push_back(row);
    }
    write_output(out_path, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# config=" << compact(config) << "\n";
    os << fermisum::spectral::cutoff_csv(report);
    os << "# fitted_kappa=" << format_float17(report.kappa)
       << " fitted_beta=" << format_float17(report.beta) << "\n";
    write_output(out_path, os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// haar

int cmd_haar(long fibre_dim, long samples, std::optional<std::uint64_t> seed,
             const std::string& out_path) {
  if (fibre_dim < 1) throw fermisum::ArgumentError("haar: n must be positive");
  if (fibre_dim > 1 && !seed)
    throw fermisum::ArgumentError("haar: --seed is mandatory for the Monte Carlo path");
  const auto avg = fermisum::statesum::haar_average_circle(
      std::size_t(fibre_dim), samples, seed.value_or(0));

  json config;
  config["n"] = fibre_dim;
  config["samples"] = samples;
  if (seed) config["seed"] = *seed;

  json doc;
  doc["command"] = "haar";
  doc["config"] = config;
  doc["estimate_re"] = avg.estimate.real();
  doc["estimate_im"] = avg.estimate.imag();
  doc["std_error"] = avg.std_error;
  doc["samples"] = avg.samples;
  doc["method"] = avg.method;
  const double nearest = std::round(avg.estimate.real());
  doc["nearest_integer"] = static_cast<long>(nearest);
  doc["integer_within_3sigma"] =
      std::abs(avg.estimate - Complex(nearest, 0.0)) <= 3.0 * avg.std_error + 1e-12;
  write_output(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// zeta

int cmd_zeta(double a, double l, bool allow_zero_mode, const std::string& out_path) {
  if (!(a >= 0.0 && a < 1.0))
    throw fermisum::ArgumentError("zeta: a must lie in [0,1)");
  const auto conn = fermisum::zetareg::make_u1_connection(a, l);
  if (conn.zero_mode() && !allow_zero_mode)
    throw fermisum::ArgumentError(
        "zeta: a = 0 is a zero mode; pass --allow-zero-mode to evaluate by continuity");
  const auto r = fermisum::zetareg::continuum_regularised_det(conn);

  json doc;
  doc["command"] = "zeta";
  doc["config"] = {{"a", a}, {"l", l}};
  doc["a"] = r.a;
  doc["l"] = r.l;
  doc["eta0"] = r.eta0;
  doc["zeta0"] = r.zeta0;
  if (r.zero_mode)
    doc["zetaprime0"] = nullptr;  // divergent: the determinant vanishes
  else
    doc["zetaprime0"] = r.zetaprime0;
  doc.update(complex_fields("det_iD", r.det_iD));
  doc.update(complex_fields("det_D_plus", r.det_D_eps_plus));
  doc.update(complex_fields("det_D_minus", r.det_D_eps_minus));
  doc["zero_mode"] = r.zero_mode;
  write_output(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fermisum: fermionic state sums on triangulated 1-manifolds and the\n"
      "zeta-regularised Dirac determinants they reproduce"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  std::string verify_out, verify_config;
  bool mutate = false;
  verify->add_option("--out", verify_out, "output file (default stdout)");
  verify->add_option("--config", verify_config, "JSON config file");
  verify
      ->add_flag("--mutate-berezin", mutate,
                 "test hook: flip the Berezin sign convention (suites must fail)")
      ->group("");  // hidden

  // circle ------------------------------------------------------------------
  auto* circle = app.add_subcommand("circle", "circle partition function");
  std::string circle_holonomy, circle_out, circle_config, circle_format = "json";
  double circle_theta = kPi, circle_l = 1.0;
  long circle_edges = 1;
  auto* circle_hol_opt =
      circle->add_option("--holonomy", circle_holonomy, "holonomy spec (JSON)");
  auto* circle_theta_opt = circle->add_option(
      "--theta", circle_theta, "shortcut for the U(1) holonomy e^{-i theta}");
  auto* circle_edges_opt = circle->add_option("--N", circle_edges, "edge count");
  auto* circle_l_opt = circle->add_option("--l", circle_l, "circumference");
  bool circle_symbolic = false;
  circle->add_flag("--symbolic", circle_symbolic,
                   "require the symbolic Berezin path (capacity permitting)");
  auto* circle_out_opt = circle->add_option("--out", circle_out, "output file");
  auto* circle_format_opt =
      circle->add_option("--format", circle_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  circle->add_option("--config", circle_config, "JSON config file");

  // spectrum ----------------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "discrete vs continuum Dirac spectra");
  std::string spectrum_out, spectrum_config, spectrum_format = "csv";
  double spectrum_theta = kPi;
  long spectrum_edges = 64, spectrum_kmax = 5;
  double spectrum_l = -1.0;  // default l = N
  auto* sp_theta = spectrum->add_option("--theta", spectrum_theta, "holonomy phase");
  auto* sp_edges = spectrum->add_option("--N", spectrum_edges, "edge count");
  auto* sp_kmax = spectrum->add_option("--kmax", spectrum_kmax, "compare |k| <= kmax");
  auto* sp_l = spectrum->add_option("--l", spectrum_l, "circumference (default N)");
  auto* sp_out = spectrum->add_option("--out", spectrum_out, "output file");
  auto* sp_format =
      spectrum->add_option("--format", spectrum_format, "csv|json")->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("--config", spectrum_config, "JSON config file");

  // mass --------------------------------------------------------------------
  auto* mass = app.add_subcommand("mass", "massive state sum N-sweep");
  std::string mass_out, mass_config, mass_format = "csv";
  double mass_theta = kPi, mass_m = 1.0, mass_l = 1.0, mass_mprime = 1.0;
  long mass_nmin = 100, mass_nmax = 10000;
  int mass_points = 25;
  bool mass_exponential = false;
  auto* ms_theta = mass->add_option("--theta", mass_theta, "holonomy phase");
  auto* ms_m = mass->add_option("--m", mass_m, "mass");
  auto* ms_l = mass->add_option("--l", mass_l, "circumference");
  auto* ms_nmin = mass->add_option("--nmin", mass_nmin, "sweep start");
  auto* ms_nmax = mass->add_option("--nmax", mass_nmax, "sweep end");
  auto* ms_points = mass->add_option("--points", mass_points, "sweep points");
  auto* ms_expo = mass->add_flag("--exponential", mass_exponential,
                                 "exponential-mass mode (complex m, N-independent)");
  auto* ms_mprime = mass->add_option("--mprime", mass_mprime, "m' for exponential mode");
  auto* ms_out = mass->add_option("--out", mass_out, "output file");
  auto* ms_format =
      mass->add_option("--format", mass_format, "csv|json")->check(CLI::IsMember({"json", "csv"}));
  mass->add_option("--config", mass_config, "JSON config file");

  // cutoff ------------------------------------------------------------------
  auto* cutoff = app.add_subcommand("cutoff", "sharp-cutoff log-determinant scan");
  std::string cutoff_out, cutoff_config, cutoff_format = "csv";
  double cutoff_a = 0.5, cutoff_l = 2.0 * kPi, cutoff_cmin = 100.0, cutoff_cmax = 10000.0;
  int cutoff_points = 25;
  auto* co_a = cutoff->add_option("--a", cutoff_a, "connection parameter in (0,1)");
  auto* co_l = cutoff->add_option("--l", cutoff_l, "circumference");
  auto* co_cmin = cutoff->add_option("--cmin", cutoff_cmin, "grid start");
  auto* co_cmax = cutoff->add_option("--cmax", cutoff_cmax, "grid end");
  auto* co_points = cutoff->add_option("--points", cutoff_points, "grid points");
  auto* co_out = cutoff->add_option("--out", cutoff_out, "output file");
  auto* co_format =
      cutoff->add_option("--format", cutoff_format, "csv|json")->check(CLI::IsMember({"json", "csv"}));
  cutoff->add_option("--config", cutoff_config, "JSON config file");

  // haar --------------------------------------------------------------------
  auto* haar = app.add_subcommand("haar", "Haar-averaged circle partition function");
  std::string haar_out, haar_config;
  long haar_n = 1, haar_samples = 100000;
  std::uint64_t haar_seed = 0;
  auto* ha_n = haar->add_option("--n", haar_n, "fibre dimension");
  auto* ha_samples = haar->add_option("--samples", haar_samples, "Monte Carlo samples");
  auto* ha_seed = haar->add_option("--seed", haar_seed, "RNG seed (mandatory for n >= 2)");
  auto* ha_out = haar->add_option("--out", haar_out, "output file");
  haar->add_option("--config", haar_config, "JSON config file");

  // zeta --------------------------------------------------------------------
  auto* zeta = app.add_subcommand("zeta", "continuum regularised Dirac determinant");
  std::string zeta_out, zeta_config;
  double zeta_a = 0.5, zeta_l = 2.0 * kPi;
  bool zeta_allow_zero = false;
  auto* ze_a = zeta->add_option("--a", zeta_a, "connection parameter in [0,1)");
  auto* ze_l = zeta->add_option("--l", zeta_l, "circumference");
  zeta->add_flag("--allow-zero-mode", zeta_allow_zero,
                 "evaluate a = 0 by continuity (determinant 0)");
  auto* ze_out = zeta->add_option("--out", zeta_out, "output file");
  zeta->add_option("--config", zeta_config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      ConfigFile cfg;
      cfg.load(verify_config);
      return cmd_verify(mutate, verify_out);
    }

    if (circle->parsed()) {
      ConfigFile cfg;
      cfg.load(circle_config);
      cfg.apply(circle_edges_opt, "N", circle_edges);
      cfg.apply(circle_l_opt, "l", circle_l);
      cfg.apply(circle_out_opt, "out", circle_out);
      cfg.apply(circle_format_opt, "format", circle_format);

      fermisum::cli::Holonomy holonomy;
      if (circle_hol_opt->count() > 0) {
        holonomy = fermisum::cli::parse_holonomy(circle_holonomy);
      } else if (cfg.has("holonomy")) {
        holonomy = fermisum::cli::parse_holonomy(cfg.raw("holonomy"));
      } else {
        double theta = circle_theta;
        cfg.apply(circle_theta_opt, "theta", theta);
        holonomy = fermisum::cli::parse_holonomy(json{{"type", "u1"}, {"theta", theta}});
      }
      if (circle_edges < 1) throw fermisum::ArgumentError("circle: N must be positive");
      return cmd_circle(holonomy, circle_edges, circle_l, circle_symbolic, circle_out,
                        circle_format);
    }

    if (spectrum->parsed()) {
      ConfigFile cfg;
      cfg.load(spectrum_config);
      cfg.apply(sp_theta, "theta", spectrum_theta);
      cfg.apply(sp_edges, "N", spectrum_edges);
      cfg.apply(sp_kmax, "k_max", spectrum_kmax);
      cfg.apply(sp_l, "l", spectrum_l);
      cfg.apply(sp_out, "out", spectrum_out);
      cfg.apply(sp_format, "format", spectrum_format);
      if (sp_l->count() > 0 && !(spectrum_l > 0.0))
        throw fermisum::ArgumentError("spectrum: l must be positive");
      std::optional<double> l;
      if (spectrum_l > 0.0) l = spectrum_l;
      return cmd_spectrum(spectrum_theta, spectrum_edges, spectrum_kmax, l, spectrum_out,
                          spectrum_format);
    }

    if (mass->parsed()) {
      ConfigFile cfg;
      cfg.load(mass_config);
      cfg.apply(ms_theta, "theta", mass_theta);
      cfg.apply(ms_m, "m", mass_m);
      cfg.apply(ms_l, "l", mass_l);
      cfg.apply(ms_nmin, "nmin", mass_nmin);
      cfg.apply(ms_nmax, "nmax", mass_nmax);
      cfg.apply(ms_points, "points", mass_points);
      cfg.apply(ms_expo, "exponential", mass_exponential);
      cfg.apply(ms_mprime, "mprime", mass_mprime);
      cfg.apply(ms_out, "out", mass_out);
      cfg.apply(ms_format, "format", mass_format);
      return cmd_mass(mass_theta, mass_m, mass_l, mass_nmin, mass_nmax, mass_points,
                      mass_exponential, mass_mprime, mass_out, mass_format);
    }

    if (cutoff->parsed()) {
      ConfigFile cfg;
      cfg.load(cutoff_config);
      cfg.apply(co_a, "a", cutoff_a);
      cfg.apply(co_l, "l", cutoff_l);
      cfg.apply(co_cmin, "cmin", cutoff_cmin);
      cfg.apply(co_cmax, "cmax", cutoff_cmax);
      cfg.apply(co_points, "points", cutoff_points);
      cfg.apply(co_out, "out", cutoff_out);
      cfg.apply(co_format, "format", cutoff_format);
      return cmd_cutoff(cutoff_a, cutoff_l, cutoff_cmin, cutoff_cmax, cutoff_points,
                        cutoff_out, cutoff_format);
    }

    if (haar->parsed()) {
      ConfigFile cfg;
      cfg.load(haar_config);
      cfg.apply(ha_n, "n", haar_n);
      cfg.apply(ha_samples, "samples", haar_samples);
      cfg.apply(ha_out, "out", haar_out);
      std::optional<std::uint64_t> seed;
      if (ha_seed->count() > 0)
        seed = haar_seed;
      else if (cfg.has("seed"))
        seed = cfg.raw("seed").get<std::uint64_t>();
      return cmd_haar(haar_n, haar_samples, seed, haar_out);
    }

    if (zeta->parsed()) {
      ConfigFile cfg;
      cfg.load(zeta_config);
      cfg.apply(ze_a, "a", zeta_a);
      cfg.apply(ze_l, "l", zeta_l);
      cfg.apply(ze_out, "out", zeta_out);
      return cmd_zeta(zeta_a, zeta_l, zeta_allow_zero, zeta_out);
    }
  } catch (const fermisum::CapacityError& err) {
    std::cerr << "capacity error: " << err.what() << "\n"
              << "symbolic paths are limited to 2*n*N <= "
              << fermisum::grassmann::kGeneratorCapacity
              << " generators; reduce N or n, or use the closed form\n";
    return kExitCapacity;
  } catch (const fermisum::ArgumentError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const fermisum::PoleError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitSuiteFailure;
  }
  return kExitOk;
}
