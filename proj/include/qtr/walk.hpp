#ifndef QTR_WALK_HPP
#define QTR_WALK_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qtr/errors.hpp"

namespace qtr {

/// Biased Wiener register: each step adds sqrt(delta_sq * dt) * g with
/// g ~ Gaussian(theta, 1/2). The increment variance is fixed at 1/2; only
/// theta and sqrt(delta_sq * dt) matter, the split between delta_sq and dt
/// is kept for fidelity to the dynamical equation.
struct WalkConfig {
  double theta = 0.1;      // drift mean of the Gaussian
  double delta_sq = 1.0;   // diffusion scale, > 0
  double dt = 1.0;         // step size, > 0
  int steps = 100;         // >= 1
  int walkers = 1000;      // >= 1
  std::uint64_t seed = 0;

  void validate() const;
  /// Mean increment per step, theta * sqrt(delta_sq * dt).
  double analytic_slope() const;
};

/// Ensemble of register trajectories, Z(0) = 0. Identical config (seed
/// included) reproduces the ensemble bit for bit; each walker draws from its
/// own counter-based substream, so trajectories do not depend on how many
/// walkers run beside them.
class WalkEnsemble {
 public:
  WalkEnsemble(WalkConfig config, std::vector<double> values);

  const WalkConfig& config() const { return config_; }
  int walkers() const { return config_.walkers; }
  int steps() const { return config_.steps; }
  double at(int walker, int step) const {
    return values_[static_cast<std::size_t>(walker) * (config_.steps + 1) + step];
  }
  std::span<const double> trajectory(int walker) const {
    return std::span<const double>(values_).subspan(
        static_cast<std::size_t>(walker) * (config_.steps + 1),
        static_cast<std::size_t>(config_.steps) + 1);
  }

 private:
  WalkConfig config_;
  std::vector<double> values_;  // walkers x (steps + 1), row-major
};

WalkEnsemble simulate_walks(const WalkConfig& config);

/// Per-step arithmetic mean across walkers (length steps + 1).
std::vector<double> ensemble_mean(const WalkEnsemble& ensemble);
/// Per-step population standard deviation across walkers.
std::vector<double> ensemble_std(const WalkEnsemble& ensemble);

/// Least-squares slope of y against its index 0..n-1.
double linear_slope(std::span<const double> y);

struct TickRecord {
  int walker;
  std::optional<int> first_crossing_step;  // smallest k with Z(k) >= threshold
  double threshold;
};

/// First threshold crossing per walker. Requires threshold > 0.
std::vector<TickRecord> detect_ticks(const WalkEnsemble& ensemble, double threshold);

struct SprtBoundaries {
  double upper;
  double lower;
};

/// Wald boundaries ln((1-beta_err)/alpha_err) and ln(beta_err/(1-alpha_err)).
/// Error rates must lie in (0, 1/2).
SprtBoundaries sprt_boundaries(double alpha_err, double beta_err);

enum class SprtDecision { kAcceptUpper, kAcceptLower, kUndecided };

struct SprtResult {
  SprtDecision decision;
  int stopping_step;  // step at which the walk left (lower, upper), or steps
  double final_value;
};

/// Runs a single walk (substream walker_index of config.seed) until it exits
/// (lower, upper) or exhausts config.steps. Requires lower < 0 < upper.
SprtResult sprt_run(const WalkConfig& config, double upper, double lower, int walker_index = 0);

}  // namespace qtr

#endif  // QTR_WALK_HPP
