// Independent oracles for the test suites: direct summations, closed forms,
// finite differences, and sampling-error formulas that never route through
// the code paths they check.
#ifndef QTR_TESTS_SUPPORT_ORACLES_HPP
#define QTR_TESTS_SUPPORT_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qtr/fock.hpp"
#include "qtr/walk.hpp"

namespace qtr::oracles {

/// Plain Taylor summation of exp(op), no scaling or squaring. Accurate for
/// small-norm inputs, which is all the cross-checks need.
inline TruncatedOperator taylor_expm(const TruncatedOperator& op, int terms = 48) {
  TruncatedOperator sum = TruncatedOperator::identity(op.dim());
  TruncatedOperator term = TruncatedOperator::identity(op.dim());
  for (int k = 1; k <= terms; ++k) {
    term = term * op;
    term *= Complex{1.0 / static_cast<double>(k), 0.0};
    sum += term;
  }
  return sum;
}

/// Coherent amplitudes from the closed form e^{-|a|^2/2} a^n / sqrt(n!),
/// evaluated through lgamma instead of the library's running recurrence.
inline std::vector<Complex> coherent_amplitudes(Complex alpha, int dim) {
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  const double log_norm = -0.5 * std::norm(alpha);
  for (int n = 0; n < dim; ++n) {
    const double mag_log = log_norm - 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
    amps[static_cast<std::size_t>(n)] = std::exp(mag_log) * std::pow(alpha, n);
  }
  return amps;
}

/// Poisson(|alpha|^2) tail weight sum_{n >= dim} p_n, summed forward in
/// long double.
inline long double coherent_tail_weight(Complex alpha, int dim) {
  const long double lambda = static_cast<long double>(std::norm(alpha));
  long double p = std::exp(-lambda);
  long double head = 0.0L;
  for (int n = 0; n < dim; ++n) {
    head += p;
    p *= lambda / static_cast<long double>(n + 1);
  }
  long double tail = 0.0L;
  for (int n = dim; n < dim + 512; ++n) {
    tail += p;
    p *= lambda / static_cast<long double>(n + 1);
  }
  return tail;
}

/// k-th Taylor coefficient f^(k)(0)/k! by central differences (k <= 4).
inline double numeric_taylor_coeff(const std::function<long double(long double)>& f, int k,
                                   long double h = 1e-3L) {
  long double deriv = 0.0L;
  switch (k) {
    case 0: deriv = f(0.0L); break;
    case 1: deriv = (f(h) - f(-h)) / (2.0L * h); break;
    case 2: deriv = (f(h) - 2.0L * f(0.0L) + f(-h)) / (h * h); break;
    case 3: deriv = (f(2.0L * h) - 2.0L * f(h) + 2.0L * f(-h) - f(-2.0L * h)) /
                    (2.0L * h * h * h); break;
    case 4: deriv = (f(2.0L * h) - 4.0L * f(h) + 6.0L * f(0.0L) - 4.0L * f(-h) + f(-2.0L * h)) /
                    (h * h * h * h); break;
    default: return std::nan("");
  }
  long double factorial = 1.0L;
  for (int j = 2; j <= k; ++j) factorial *= j;
  return static_cast<double>(deriv / factorial);
}

/// Standard error of the ensemble-mean endpoint Z(steps).
inline double endpoint_stderr(const WalkConfig& config) {
  return std::sqrt(config.delta_sq * config.dt * 0.5 * config.steps / config.walkers);
}

/// Standard error of the least-squares slope fitted to the ensemble mean of
/// a drifted random walk over steps+1 points. With D = sum_j (j - jbar)^2,
/// the fit weights each increment i by W_i = i(n+1-i)/(2D), so
/// Var = (sigma_inc^2 / walkers) sum_i W_i^2.
inline double slope_stderr(const WalkConfig& config) {
  const int n = config.steps;
  const double d = static_cast<double>(n) * (n + 1) * (n + 2) / 12.0;
  double weight_sq = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double w = static_cast<double>(i) * (n + 1 - i) / (2.0 * d);
    weight_sq += w * w;
  }
  const double incr_var = config.delta_sq * config.dt * 0.5;
  return std::sqrt(incr_var / config.walkers * weight_sq);
}

struct TailDecay {
  bool monotone;       // |target - partial sum| non-increasing past the crossover
  double final_error;  // error of the full partial sum
};

/// Convergence shape of a dilation partial sum against its closed-form
/// target. The crossover is the last sign change of the term sequence; past
/// it every term pulls the same way, so the error must shrink monotonically
/// until it reaches the rounding floor.
template <typename Series>
TailDecay tail_decay(const Series& series, double u, double target) {
  const int order = series.order();
  std::vector<double> partial(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) partial[static_cast<std::size_t>(n)] = series.partial_sum(u, n);

  int start = 2;
  for (int n = 1; n + 1 < order; ++n) {
    const double term_a = partial[static_cast<std::size_t>(n) + 1] - partial[static_cast<std::size_t>(n)];
    const double term_b = partial[static_cast<std::size_t>(n) + 2] - partial[static_cast<std::size_t>(n) + 1];
    if ((term_a > 0.0) != (term_b > 0.0)) start = n + 2;
  }

  const double scale = std::max(1.0, std::abs(target));
  bool monotone = true;
  double prev = std::abs(partial[static_cast<std::size_t>(start)] - target);
  for (int n = start + 1; n <= order; ++n) {
    const double err = std::abs(partial[static_cast<std::size_t>(n)] - target);
    if (prev < 1e-13 * scale) break;
    if (err > prev * (1.0 + 1e-9)) monotone = false;
    prev = err;
  }
  return TailDecay{monotone, std::abs(partial[static_cast<std::size_t>(order)] - target)};
}

/// Deterministic generator for property-test draws (xorshift-multiply).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed ^ 0x853c49e6748fea9bULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Complex complex_in_disk(double radius) {
    while (true) {
      const double re = uniform(-radius, radius);
      const double im = uniform(-radius, radius);
      if (re * re + im * im <= radius * radius) return Complex{re, im};
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace qtr::oracles

#endif  // QTR_TESTS_SUPPORT_ORACLES_HPP
