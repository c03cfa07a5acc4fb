#include "qtr/walk.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qtr {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t walker_key(std::uint64_t seed, std::uint64_t walker) {
  return mix64(seed + kGolden * (walker + 1));
}

std::uint64_t stream_u64(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + kGolden * (counter + 1));
}

// Standard normal via Box-Muller on counters (2k, 2k+1); exact sampler, no
// central-limit shortcut. u1 in (0, 1], u2 in [0, 1).
double standard_normal(std::uint64_t key, std::uint64_t draw) {
  const double u1 =
      (static_cast<double>(stream_u64(key, 2 * draw) >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(stream_u64(key, 2 * draw + 1) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double increment(const WalkConfig& config, std::uint64_t key, std::uint64_t step) {
  const double g = config.theta + std::sqrt(0.5) * standard_normal(key, step);
  return std::sqrt(config.delta_sq * config.dt) * g;
}

}  // namespace

void WalkConfig::validate() const {
  if (!std::isfinite(theta)) throw ParameterError("walk theta must be finite");
  if (!(delta_sq > 0.0)) throw ParameterError("walk delta_sq must be > 0");
  if (!(dt > 0.0)) throw ParameterError("walk dt must be > 0");
  if (steps < 1) throw ParameterError("walk steps must be >= 1");
  if (walkers < 1) throw ParameterError("walk walkers must be >= 1");
}

double WalkConfig::analytic_slope() const { return theta * std::sqrt(delta_sq * dt); }

WalkEnsemble::WalkEnsemble(WalkConfig config, std::vector<double> values)
    : config_(std::move(config)), values_(std::move(values)) {}

WalkEnsemble simulate_walks(const WalkConfig& config) {
  config.validate();
  const std::size_t stride = static_cast<std::size_t>(config.steps) + 1;
  std::vector<double> values(static_cast<std::size_t>(config.walkers) * stride);
  for (int w = 0; w < config.walkers; ++w) {
    const std::uint64_t key = walker_key(config.seed, static_cast<std::uint64_t>(w));
    double z = 0.0;
    double* traj = values.data() + static_cast<std::size_t>(w) * stride;
    traj[0] = 0.0;
    for (int k = 1; k <= config.steps; ++k) {
      z += increment(config, key, static_cast<std::uint64_t>(k) - 1);
      traj[k] = z;
    }
  }
  return WalkEnsemble(config, std::move(values));
}

std::vector<double> ensemble_mean(const WalkEnsemble& ensemble) {
  if (ensemble.walkers() < 1) throw ParameterError("ensemble has no walkers");
  std::vector<double> mean(static_cast<std::size_t>(ensemble.steps()) + 1, 0.0);
  for (int w = 0; w < ensemble.walkers(); ++w) {
    const auto traj = ensemble.trajectory(w);
    for (int k = 0; k <= ensemble.steps(); ++k) mean[static_cast<std::size_t>(k)] += traj[k];
  }
  for (auto& m : mean) m /= static_cast<double>(ensemble.walkers());
  return mean;
}

std::vector<double> ensemble_std(const WalkEnsemble& ensemble) {
  const auto mean = ensemble_mean(ensemble);
  std::vector<double> var(mean.size(), 0.0);
  for (int w = 0; w < ensemble.walkers(); ++w) {
    const auto traj = ensemble.trajectory(w);
    for (int k = 0; k <= ensemble.steps(); ++k) {
      const double d = traj[k] - mean[static_cast<std::size_t>(k)];
      var[static_cast<std::size_t>(k)] += d * d;
    }
  }
  for (auto& v : var) v = std::sqrt(v / static_cast<double>(ensemble.walkers()));
  return var;
}

double linear_slope(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) throw ParameterError("slope fit needs at least two points");
  const double x_mean = static_cast<double>(n - 1) / 2.0;
  double y_mean = 0.0;
  for (const double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    num += dx * (y[i] - y_mean);
    den += dx * dx;
  }
  return num / den;
}

std::vector<TickRecord> detect_ticks(const WalkEnsemble& ensemble, double threshold) {
  if (!(threshold > 0.0)) throw ParameterError("tick threshold must be > 0");
  std::vector<TickRecord> records;
  records.reserve(static_cast<std::size_t>(ensemble.walkers()));
  for (int w = 0; w < ensemble.walkers(); ++w) {
    const auto traj = ensemble.trajectory(w);
    std::optional<int> crossing;
    for (int k = 0; k <= ensemble.steps(); ++k) {
      if (traj[k] >= threshold) {
        crossing = k;
        break;
      }
    }
    records.push_back(TickRecord{w, crossing, threshold});
  }
  return records;
}

SprtBoundaries sprt_boundaries(double alpha_err, double beta_err) {
  if (!(alpha_err > 0.0) || !(alpha_err < 0.5) || !(beta_err > 0.0) || !(beta_err < 0.5)) {
    throw ParameterError("SPRT error rates must lie in (0, 1/2)");
  }
  return SprtBoundaries{std::log((1.0 - beta_err) / alpha_err),
                        std::log(beta_err / (1.0 - alpha_err))};
}

SprtResult sprt_run(const WalkConfig& config, double upper, double lower, int walker_index) {
  config.validate();
  if (!(lower < 0.0) || !(upper > 0.0)) {
    throw ParameterError("SPRT boundaries must satisfy lower < 0 < upper");
  }
  if (walker_index < 0) throw ParameterError("walker index must be >= 0");
  const std::uint64_t key = walker_key(config.seed, static_cast<std::uint64_t>(walker_index));
  double z = 0.0;
  for (int k = 1; k <= config.steps; ++k) {
    z += increment(config, key, static_cast<std::uint64_t>(k) - 1);
    if (z >= upper) return SprtResult{SprtDecision::kAcceptUpper, k, z};
    if (z <= lower) return SprtResult{SprtDecision::kAcceptLower, k, z};
  }
  return SprtResult{SprtDecision::kUndecided, config.steps, z};
}

}  // namespace qtr
