#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qtr/commands.hpp"
#include "qtr/version.hpp"

namespace {

using qtr::KeyValueConfig;

struct CommonOpts {
  std::string config_path;
  std::string out_path = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  CLI::Option* config_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* tolerance_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  opts.config_opt =
      cmd->add_option("--config", opts.config_path, "flat 'key = value' config file; flags win");
  opts.out_opt = cmd->add_option("--out", opts.out_path, "output path, '-' for stdout");
  opts.format_opt = cmd->add_option("--format", opts.format, "output format: csv or jsonl");
  opts.seed_opt = cmd->add_option("--seed", opts.seed, "random seed (used by martingale)");
  opts.tolerance_opt = cmd->add_option("--tolerance", opts.tolerance,
                                       "tolerance for commands that check a bound");
}

template <typename T>
T pick(const CLI::Option* opt, const T& flag_value, std::optional<T> config_value, T fallback) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  if (config_value) return *config_value;
  return fallback;
}

KeyValueConfig load_config(const CommonOpts& opts) {
  if (opts.config_opt->count() > 0) return KeyValueConfig::from_file(opts.config_path);
  return KeyValueConfig{};
}

qtr::OutputFormat resolve_format(const CommonOpts& opts, KeyValueConfig& config) {
  return qtr::parse_format(
      pick<std::string>(opts.format_opt, opts.format, config.take_string("format"), "csv"));
}

std::string resolve_out(const CommonOpts& opts, KeyValueConfig& config) {
  return pick<std::string>(opts.out_opt, opts.out_path, config.take_string("out"), "-");
}

int resolve_dim(const CLI::Option* opt, int flag_value, KeyValueConfig& config, int fallback) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  if (auto cfg = config.take_int("dim")) return *cfg;
  if (const char* env = std::getenv("QTR_DEFAULT_DIM")) {
    const int dim = qtr::parse_int_strict(env, "QTR_DEFAULT_DIM");
    if (dim < 1) throw qtr::ParameterError("QTR_DEFAULT_DIM must be a positive integer");
    return dim;
  }
  return fallback;
}

/// Runs the writer against stdout or a freshly truncated file.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-" || path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw qtr::IoError("cannot open output file '" + path + "'");
  body(out);
  out.flush();
  if (!out) throw qtr::IoError("failed while writing '" + path + "'");
}

int run_martingale_cmd(const CommonOpts& common, const CLI::Option* opts[], double theta,
                       double delta_sq, double dt, int steps, int walkers, bool emit_walkers) {
  KeyValueConfig config = load_config(common);
  qtr::MartingaleParams params;
  params.walk.theta = pick(opts[0], theta, config.take_double("theta"), 0.1);
  params.walk.delta_sq = pick(opts[1], delta_sq, config.take_double("delta_sq"), 1.0);
  params.walk.dt = pick(opts[2], dt, config.take_double("dt"), 1.0);
  params.walk.steps = pick(opts[3], steps, config.take_int("steps"), 100);
  params.walk.walkers = pick(opts[4], walkers, config.take_int("walkers"), 1000);
  params.walk.seed = pick(common.seed_opt, common.seed, config.take_uint64("seed"),
                          std::uint64_t{0});
  params.emit_walkers = pick(opts[5], emit_walkers, config.take_bool("emit_walkers"), false);
  params.format = resolve_format(common, config);
  const std::string out_path = resolve_out(common, config);
  config.take_double("tolerance");  // accepted globally, unused here
  config.reject_unknown();

  with_output(out_path, [&](std::ostream& out) { qtr::run_martingale(params, out); });
  return qtr::kExitOk;
}

int run_dilation_curve_cmd(const CommonOpts& common, const CLI::Option* opts[],
                           const std::string& v_text, double epsilon, double threshold,
                           double t_max, int t_points) {
  KeyValueConfig config = load_config(common);
  qtr::DilationCurveParams params;
  if (opts[0]->count() > 0) {
    params.v_list = qtr::parse_double_list_strict(v_text, "v");
  } else if (auto cfg = config.take_double_list("v")) {
    params.v_list = *cfg;
  }
  params.epsilon = pick(opts[1], epsilon, config.take_double("epsilon"), 1.0);
  params.threshold = pick(opts[2], threshold, config.take_double("threshold"), 1.0);
  params.t_max = pick(opts[3], t_max, config.take_double("t_max"), 0.0);
  params.t_points = pick(opts[4], t_points, config.take_int("t_points"), 101);
  params.format = resolve_format(common, config);
  const std::string out_path = resolve_out(common, config);
  config.take_uint64("seed");
  config.take_double("tolerance");
  config.reject_unknown();

  with_output(out_path, [&](std::ostream& out) { qtr::run_dilation_curve(params, out); });
  return qtr::kExitOk;
}

int run_verify_theorem_cmd(const CommonOpts& common, const CLI::Option* opts[],
                           const std::string& v_text, double epsilon, double mass, double omega,
                           double hbar, double t, int dim) {
  KeyValueConfig config = load_config(common);
  qtr::VerifyTheoremParams params;
  if (opts[0]->count() > 0) {
    params.v_list = qtr::parse_double_list_strict(v_text, "v");
  } else if (auto cfg = config.take_double_list("v")) {
    params.v_list = *cfg;
  }
  params.epsilon = pick(opts[1], epsilon, config.take_double("epsilon"), 1.0);
  params.mass = pick(opts[2], mass, config.take_double("mass"), 1.0);
  params.omega = pick(opts[3], omega, config.take_double("omega"), 1.0);
  params.hbar = pick(opts[4], hbar, config.take_double("hbar"), 1.0);
  params.t = pick(opts[5], t, config.take_double("t"), 0.0);
  params.dim = resolve_dim(opts[6], dim, config, 0);
  params.tolerance =
      pick(common.tolerance_opt, common.tolerance, config.take_double("tolerance"), 1e-5);
  params.format = resolve_format(common, config);
  const std::string out_path = resolve_out(common, config);
  config.take_uint64("seed");
  config.reject_unknown();

  qtr::VerifyTheoremReport report{};
  with_output(out_path, [&](std::ostream& out) { report = qtr::run_verify_theorem(params, out); });
  return report.pass ? qtr::kExitOk : qtr::kExitTolerance;
}

int run_boost_check_cmd(const CommonOpts& common, const CLI::Option* opts[], double v, double mass,
                        double omega, double hbar, double t, int dim) {
  KeyValueConfig config = load_config(common);
  qtr::BoostCheckParams params;
  params.v = pick(opts[0], v, config.take_double("v"), 0.3);
  params.mass = pick(opts[1], mass, config.take_double("mass"), 1.0);
  params.omega = pick(opts[2], omega, config.take_double("omega"), 1.0);
  params.hbar = pick(opts[3], hbar, config.take_double("hbar"), 1.0);
  params.t = pick(opts[4], t, config.take_double("t"), 1.0);
  params.dim = resolve_dim(opts[5], dim, config, 0);
  params.tolerance =
      pick(common.tolerance_opt, common.tolerance, config.take_double("tolerance"), 1e-8);
  params.format = resolve_format(common, config);
  const std::string out_path = resolve_out(common, config);
  config.take_uint64("seed");
  config.reject_unknown();

  qtr::BoostCheckReport report{};
  with_output(out_path, [&](std::ostream& out) { report = qtr::run_boost_check(params, out); });
  return report.pass ? qtr::kExitOk : qtr::kExitTolerance;
}

int run_langevin_check_cmd(const CommonOpts& common, const CLI::Option* opts[], int dim,
                           double omega, double hbar, double epsilon, double beta,
                           const std::string& jump) {
  KeyValueConfig config = load_config(common);
  qtr::LangevinCheckParams params;
  params.dim = resolve_dim(opts[0], dim, config, 16);
  params.omega = pick(opts[1], omega, config.take_double("omega"), 1.0);
  params.hbar = pick(opts[2], hbar, config.take_double("hbar"), 1.0);
  params.epsilon = pick(opts[3], epsilon, config.take_double("epsilon"), 1.0);
  params.beta = pick(opts[4], beta, config.take_double("beta"), 0.5);
  params.jump = pick<std::string>(opts[5], jump, config.take_string("jump"), "none");
  params.tolerance =
      pick(common.tolerance_opt, common.tolerance, config.take_double("tolerance"), 1e-10);
  params.format = resolve_format(common, config);
  const std::string out_path = resolve_out(common, config);
  config.take_uint64("seed");
  config.reject_unknown();

  qtr::LangevinCheckReport report{};
  with_output(out_path, [&](std::ostream& out) { report = qtr::run_langevin_check(params, out); });
  return report.pass ? qtr::kExitOk : qtr::kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qtr: truncated Fock-space experiments with dilation observables and "
               "stochastic time registers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qtr::kVersion);

  // martingale
  CLI::App* martingale = app.add_subcommand(
      "martingale", "simulate the biased Wiener register ensemble and its linear mean");
  CommonOpts mart_common;
  add_common(martingale, mart_common);
  double theta = 0.1, delta_sq = 1.0, dt = 1.0;
  int steps = 100, walkers = 1000;
  bool emit_walkers = false;
  const CLI::Option* mart_opts[6];
  mart_opts[0] = martingale->add_option("--theta", theta, "drift mean of the Gaussian increment");
  mart_opts[1] = martingale->add_option("--delta-sq", delta_sq, "diffusion scale");
  mart_opts[2] = martingale->add_option("--dt", dt, "step size");
  mart_opts[3] = martingale->add_option("--steps", steps, "number of steps");
  mart_opts[4] = martingale->add_option("--walkers", walkers, "number of walkers");
  mart_opts[5] = martingale->add_flag("--emit-walkers", emit_walkers,
                                      "append one column per walker trajectory");

  // dilation-curve
  CLI::App* curve = app.add_subcommand(
      "dilation-curve", "emit (epsilon/gamma) t growth curves and threshold crossing times");
  CommonOpts curve_common;
  add_common(curve, curve_common);
  std::string curve_v = "0,0.5,0.8";
  double curve_eps = 1.0, curve_threshold = 1.0, curve_t_max = 0.0;
  int curve_points = 101;
  const CLI::Option* curve_opts[5];
  curve_opts[0] = curve->add_option("--v", curve_v, "comma-separated velocities, |v| < 1");
  curve_opts[1] = curve->add_option("--epsilon", curve_eps, "register slope in the rest frame");
  curve_opts[2] = curve->add_option("--threshold", curve_threshold, "register value to reach");
  curve_opts[3] = curve->add_option("--t-max", curve_t_max, "end of the time grid (0 = auto)");
  curve_opts[4] = curve->add_option("--t-points", curve_points, "points on the time grid");

  // verify-theorem
  CLI::App* verify = app.add_subcommand(
      "verify-theorem", "measure the diagonal observable in boosted vacua against epsilon/gamma");
  CommonOpts verify_common;
  add_common(verify, verify_common);
  std::string verify_v = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  double verify_eps = 1.0, verify_mass = 1.0, verify_omega = 1.0, verify_hbar = 1.0,
         verify_t = 0.0;
  int verify_dim = 0;
  const CLI::Option* verify_opts[7];
  verify_opts[0] = verify->add_option("--v", verify_v, "comma-separated velocities, |v| < 1");
  verify_opts[1] = verify->add_option("--epsilon", verify_eps, "rest-frame slope");
  verify_opts[2] = verify->add_option("--mass", verify_mass, "oscillator mass");
  verify_opts[3] = verify->add_option("--omega", verify_omega, "oscillator frequency");
  verify_opts[4] = verify->add_option("--hbar", verify_hbar, "action quantum");
  verify_opts[5] = verify->add_option("--t", verify_t, "epoch entering the boost generator");
  verify_opts[6] = verify->add_option("--dim", verify_dim, "truncation floor (0 = auto)");

  // boost-check
  CLI::App* boost = app.add_subcommand(
      "boost-check", "compare the boosted vacuum against the closed-form coherent state");
  CommonOpts boost_common;
  add_common(boost, boost_common);
  double boost_v = 0.3, boost_mass = 1.0, boost_omega = 1.0, boost_hbar = 1.0, boost_t = 1.0;
  int boost_dim = 0;
  const CLI::Option* boost_opts[6];
  boost_opts[0] = boost->add_option("--v", boost_v, "boost velocity, |v| < 1");
  boost_opts[1] = boost->add_option("--mass", boost_mass, "oscillator mass");
  boost_opts[2] = boost->add_option("--omega", boost_omega, "oscillator frequency");
  boost_opts[3] = boost->add_option("--hbar", boost_hbar, "action quantum");
  boost_opts[4] = boost->add_option("--t", boost_t, "epoch entering the boost generator");
  boost_opts[5] = boost->add_option("--dim", boost_dim, "truncation (0 = auto)");

  // langevin-check
  CLI::App* langevin = app.add_subcommand(
      "langevin-check", "evaluate the open-system drift of the diagonal observable");
  CommonOpts langevin_common;
  add_common(langevin, langevin_common);
  int lange_dim = 16;
  double lange_omega = 1.0, lange_hbar = 1.0, lange_eps = 1.0, lange_beta = 0.5;
  std::string lange_jump = "none";
  const CLI::Option* lange_opts[6];
  lange_opts[0] = langevin->add_option("--dim", lange_dim, "truncation dimension");
  lange_opts[1] = langevin->add_option("--omega", lange_omega, "number-operator frequency");
  lange_opts[2] = langevin->add_option("--hbar", lange_hbar, "action quantum");
  lange_opts[3] = langevin->add_option("--epsilon", lange_eps, "series slope");
  lange_opts[4] = langevin->add_option("--beta", lange_beta, "series constant");
  lange_opts[5] = langevin->add_option("--jump", lange_jump, "jump operator: none or annihilation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qtr::kExitOk : qtr::kExitParameter;
  }

  try {
    if (app.got_subcommand(martingale)) {
      return run_martingale_cmd(mart_common, mart_opts, theta, delta_sq, dt, steps, walkers,
                                emit_walkers);
    }
    if (app.got_subcommand(curve)) {
      return run_dilation_curve_cmd(curve_common, curve_opts, curve_v, curve_eps, curve_threshold,
                                    curve_t_max, curve_points);
    }
    if (app.got_subcommand(verify)) {
      return run_verify_theorem_cmd(verify_common, verify_opts, verify_v, verify_eps, verify_mass,
                                    verify_omega, verify_hbar, verify_t, verify_dim);
    }
    if (app.got_subcommand(boost)) {
      return run_boost_check_cmd(boost_common, boost_opts, boost_v, boost_mass, boost_omega,
                                 boost_hbar, boost_t, boost_dim);
    }
    if (app.got_subcommand(langevin)) {
      return run_langevin_check_cmd(langevin_common, lange_opts, lange_dim, lange_omega,
                                    lange_hbar, lange_eps, lange_beta, lange_jump);
    }
  } catch (const qtr::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qtr::kExitIo;
  } catch (const qtr::TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qtr::kExitParameter;
  } catch (const qtr::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qtr::kExitParameter;
  } catch (const qtr::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qtr::kExitParameter;
  } catch (const qtr::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qtr::kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qtr::kExitFailure;
  }
  return qtr::kExitFailure;
}
