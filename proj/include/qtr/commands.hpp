#ifndef QTR_COMMANDS_HPP
#define QTR_COMMANDS_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qtr/experiment_io.hpp"
#include "qtr/walk.hpp"

namespace qtr {

// Process exit codes shared by the CLI and its tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;    // unexpected error
inline constexpr int kExitParameter = 2;  // bad parameter, config, or flag
inline constexpr int kExitIo = 3;         // unreadable config / unwritable output
inline constexpr int kExitTolerance = 4;  // a checked tolerance was exceeded

/// Ensemble experiment matching the register's dynamical equation; emits
/// per-step mean and spread plus a fitted-vs-analytic slope summary.
struct MartingaleParams {
  WalkConfig walk;
  bool emit_walkers = false;
  OutputFormat format = OutputFormat::kCsv;
};

struct MartingaleReport {
  double fitted_slope;
  double analytic_slope;
};

MartingaleReport run_martingale(const MartingaleParams& params, std::ostream& out);

/// Linear register growth (epsilon / gamma) t per velocity, with the time
/// each curve takes to reach the threshold.
struct DilationCurveParams {
  std::vector<double> v_list{0.0, 0.5, 0.8};
  double epsilon = 1.0;
  double threshold = 1.0;
  double t_max = 0.0;  // 0 selects 1.05x the slowest crossing
  int t_points = 101;
  OutputFormat format = OutputFormat::kCsv;
};

struct DilationCurveReport {
  std::vector<std::pair<double, double>> crossings;  // (v, time_to_threshold)
};

DilationCurveReport run_dilation_curve(const DilationCurveParams& params, std::ostream& out);

/// Measures the diagonal observable in the boosted vacuum over a velocity
/// grid and compares against epsilon / gamma.
struct VerifyTheoremParams {
  std::vector<double> v_list{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double epsilon = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double t = 0.0;
  int dim = 0;  // truncation floor; 0 = automatic
  double tolerance = 1e-5;
  OutputFormat format = OutputFormat::kCsv;
};

struct VerifyTheoremReport {
  double max_abs_error;
  bool pass;
};

VerifyTheoremReport run_verify_theorem(const VerifyTheoremParams& params, std::ostream& out);

/// Checks that boosting the vacuum reproduces the closed-form coherent state.
struct BoostCheckParams {
  double v = 0.3;
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double t = 1.0;
  int dim = 0;  // 0 = automatic
  double tolerance = 1e-8;  // maximum allowed infidelity
  OutputFormat format = OutputFormat::kCsv;
};

struct BoostCheckReport {
  double fidelity;
  int dim_used;
  bool pass;
};

BoostCheckReport run_boost_check(const BoostCheckParams& params, std::ostream& out);

/// Evaluates the open-system drift of the diagonal observable; the default
/// number-conserving spec must leave it constant.
struct LangevinCheckParams {
  int dim = 16;
  double omega = 1.0;
  double hbar = 1.0;
  double epsilon = 1.0;
  double beta = 0.5;
  std::string jump = "none";  // "none" | "annihilation"
  double tolerance = 1e-10;   // bound on the edge-masked norm (default spec)
  OutputFormat format = OutputFormat::kCsv;
};

struct LangevinCheckReport {
  double norm_full;
  double norm_masked;
  bool default_spec;
  bool pass;
};

LangevinCheckReport run_langevin_check(const LangevinCheckParams& params, std::ostream& out);

}  // namespace qtr

#endif  // QTR_COMMANDS_HPP
