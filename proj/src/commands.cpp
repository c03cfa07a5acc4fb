#include "qtr/commands.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtr/dilation.hpp"
#include "qtr/galilean.hpp"
#include "qtr/langevin.hpp"
#include "qtr/version.hpp"

namespace qtr {

namespace {

JsonLine base_meta(const std::string& command, OutputFormat format) {
  JsonLine meta;
  meta.add("command", command).add("version", kVersion).add("format", format_name(format));
  return meta;
}

void check_velocities(const std::vector<double>& v_list) {
  if (v_list.empty()) throw ParameterError("at least one velocity is required");
  for (const double v : v_list) {
    if (!std::isfinite(v) || std::abs(v) >= 1.0) {
      throw SuperluminalError("velocity " + format_float(v) + " is not subluminal (|v| < 1)");
    }
  }
}

}  // namespace

MartingaleReport run_martingale(const MartingaleParams& params, std::ostream& out) {
  params.walk.validate();
  JsonLine meta = base_meta("martingale", params.format);
  meta.add("theta", params.walk.theta)
      .add("delta_sq", params.walk.delta_sq)
      .add("dt", params.walk.dt)
      .add("steps", params.walk.steps)
      .add("walkers", params.walk.walkers)
      .add("seed", params.walk.seed)
      .add("increment_variance", 0.5)
      .add("emit_walkers", params.emit_walkers);

  std::vector<std::string> columns{"step", "ensemble_mean", "ensemble_std"};
  if (params.emit_walkers) {
    for (int w = 0; w < params.walk.walkers; ++w) columns.push_back("walker_" + std::to_string(w));
  }

  const WalkEnsemble ensemble = simulate_walks(params.walk);
  const std::vector<double> mean = ensemble_mean(ensemble);
  const std::vector<double> spread = ensemble_std(ensemble);

  TableWriter writer(out, params.format, std::move(columns), meta);
  std::vector<Cell> cells;
  for (int k = 0; k <= params.walk.steps; ++k) {
    cells.clear();
    cells.emplace_back(static_cast<std::int64_t>(k));
    cells.emplace_back(mean[static_cast<std::size_t>(k)]);
    cells.emplace_back(spread[static_cast<std::size_t>(k)]);
    if (params.emit_walkers) {
      for (int w = 0; w < params.walk.walkers; ++w) cells.emplace_back(ensemble.at(w, k));
    }
    writer.row(cells);
  }

  const MartingaleReport report{linear_slope(mean), params.walk.analytic_slope()};
  JsonLine summary;
  summary.add("fitted_slope", report.fitted_slope).add("analytic_slope", report.analytic_slope);
  writer.summary(summary);
  return report;
}

DilationCurveReport run_dilation_curve(const DilationCurveParams& params, std::ostream& out) {
  check_velocities(params.v_list);
  if (!(params.threshold > 0.0)) throw ParameterError("threshold must be > 0");
  if (!(params.epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (params.t_points < 2) throw ParameterError("t_points must be >= 2");
  if (params.t_max < 0.0) throw ParameterError("t_max must be >= 0");

  DilationCurveReport report;
  double slowest = 0.0;
  for (const double v : params.v_list) {
    const double crossing = time_to_threshold(params.threshold, params.epsilon, v);
    report.crossings.emplace_back(v, crossing);
    slowest = std::max(slowest, crossing);
  }
  const double t_max = params.t_max > 0.0 ? params.t_max : 1.05 * slowest;

  JsonLine meta = base_meta("dilation-curve", params.format);
  meta.add("v", std::span<const double>(params.v_list))
      .add("epsilon", params.epsilon)
      .add("threshold", params.threshold)
      .add("t_max", t_max)
      .add("t_points", params.t_points);

  TableWriter writer(out, params.format, {"v", "t", "accumulated"}, meta);
  for (const double v : params.v_list) {
    const double slope = params.epsilon / lorentz_gamma(v);
    for (int i = 0; i < params.t_points; ++i) {
      const double t = t_max * static_cast<double>(i) / static_cast<double>(params.t_points - 1);
      const Cell cells[] = {Cell{v}, Cell{t}, Cell{slope * t}};
      writer.row(cells);
    }
  }

  JsonLine crossings;
  std::string arr = "[";
  for (std::size_t i = 0; i < report.crossings.size(); ++i) {
    if (i > 0) arr += ",";
    JsonLine item;
    item.add("v", report.crossings[i].first)
        .add("time_to_threshold", report.crossings[i].second);
    arr += item.str();
  }
  arr += "]";
  crossings.add_raw("crossings", arr);
  writer.summary(crossings);
  return report;
}

VerifyTheoremReport run_verify_theorem(const VerifyTheoremParams& params, std::ostream& out) {
  check_velocities(params.v_list);
  if (!(params.tolerance >= 0.0)) throw ParameterError("tolerance must be >= 0");

  JsonLine meta = base_meta("verify-theorem", params.format);
  meta.add("v", std::span<const double>(params.v_list))
      .add("epsilon", params.epsilon)
      .add("mass", params.mass)
      .add("omega", params.omega)
      .add("hbar", params.hbar)
      .add("t", params.t)
      .add("dim", params.dim)
      .add("tolerance", params.tolerance);

  TableWriter writer(out, params.format, {"v", "measured", "target", "abs_error"}, meta);
  VerifyTheoremReport report{0.0, true};
  for (const double v : params.v_list) {
    const BoostParams boost{v, params.mass, params.omega, params.hbar, params.t};
    const DilationCheck check = verify_dilation(boost, params.epsilon, params.dim);
    const Cell cells[] = {Cell{v}, Cell{check.measured}, Cell{check.target},
                          Cell{check.abs_error}};
    writer.row(cells);
    report.max_abs_error = std::max(report.max_abs_error, check.abs_error);
  }
  report.pass = report.max_abs_error <= params.tolerance;

  JsonLine summary;
  summary.add("max_abs_error", report.max_abs_error)
      .add("tolerance", params.tolerance)
      .add("pass", report.pass);
  writer.summary(summary);
  return report;
}

BoostCheckReport run_boost_check(const BoostCheckParams& params, std::ostream& out) {
  const BoostParams boost{params.v, params.mass, params.omega, params.hbar, params.t};
  boost.validate();
  if (!(params.tolerance >= 0.0)) throw ParameterError("tolerance must be >= 0");
  const Complex alpha = alpha_of(boost);
  // The automatic truncation aims well past the precondition tail so the
  // fidelity floor is set by arithmetic, not by the cutoff.
  const int dim = params.dim > 0 ? params.dim : coherent_dim_for(alpha, 1e-20) + 2;

  const StateVector boosted = boost_state(boost, StateVector::vacuum(dim));
  const StateVector reference = coherent_state(alpha, dim);
  const double fid = fidelity(boosted, reference);

  BoostCheckReport report{fid, dim, 1.0 - fid <= params.tolerance};

  JsonLine meta = base_meta("boost-check", params.format);
  meta.add("v", params.v)
      .add("mass", params.mass)
      .add("omega", params.omega)
      .add("hbar", params.hbar)
      .add("t", params.t)
      .add("dim", dim)
      .add("tolerance", params.tolerance);

  TableWriter writer(out, params.format,
                     {"v", "t", "dim", "alpha_re", "alpha_im", "fidelity"}, meta);
  const Cell cells[] = {Cell{params.v}, Cell{params.t}, Cell{static_cast<std::int64_t>(dim)},
                        Cell{alpha.real()}, Cell{alpha.imag()}, Cell{fid}};
  writer.row(cells);

  JsonLine summary;
  summary.add("fidelity", fid).add("infidelity", 1.0 - fid).add("tolerance", params.tolerance)
      .add("pass", report.pass);
  writer.summary(summary);
  return report;
}

LangevinCheckReport run_langevin_check(const LangevinCheckParams& params, std::ostream& out) {
  if (params.dim < 2) throw ParameterError("dim must be >= 2");
  if (params.jump != "none" && params.jump != "annihilation") {
    throw ParameterError("jump must be 'none' or 'annihilation', got '" + params.jump + "'");
  }
  if (!(params.tolerance >= 0.0)) throw ParameterError("tolerance must be >= 0");

  const DilationSeries series(params.epsilon, params.beta, params.dim);
  const TruncatedOperator s_op = build_S_operator(series, params.dim);
  LangevinSpec spec = LangevinSpec::number_conserving(params.dim, params.omega, params.hbar);
  const bool default_spec = params.jump == "none";
  if (!default_spec) {
    auto [a, adag] = ladder_operators(params.dim);
    spec.jump = a;
  }

  const DriftNorms norms = drift_norms(s_op, spec);
  // A user-chosen jump operator is exploratory: its drift is reported, not
  // judged against the constancy tolerance.
  const bool pass = default_spec ? norms.edge_masked <= params.tolerance : true;
  LangevinCheckReport report{norms.full, norms.edge_masked, default_spec, pass};

  JsonLine meta = base_meta("langevin-check", params.format);
  meta.add("dim", params.dim)
      .add("omega", params.omega)
      .add("hbar", params.hbar)
      .add("epsilon", params.epsilon)
      .add("beta", params.beta)
      .add("jump", params.jump)
      .add("tolerance", params.tolerance);

  TableWriter writer(out, params.format,
                     {"dim", "omega", "beta", "epsilon", "jump", "drift_norm_full",
                      "drift_norm_masked"},
                     meta);
  const Cell cells[] = {Cell{static_cast<std::int64_t>(params.dim)}, Cell{params.omega},
                        Cell{params.beta},  Cell{params.epsilon},
                        Cell{params.jump},  Cell{norms.full},
                        Cell{norms.edge_masked}};
  writer.row(cells);

  JsonLine summary;
  summary.add("drift_norm_full", norms.full)
      .add("drift_norm_masked", norms.edge_masked)
      .add("default_spec", default_spec)
      .add("pass", pass);
  writer.summary(summary);
  return report;
}

}  // namespace qtr
