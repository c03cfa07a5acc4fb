#include "qtr/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qtr {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  long double sum = 0.0L;
  long double comp = 0.0L;

  void add(long double x) {
    const long double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  long double value() const { return sum + comp; }
};

std::vector<long double> sqrt_coeffs_ld(int order) {
  std::vector<long double> b(static_cast<std::size_t>(order) + 1);
  b[0] = 1.0L;
  for (int k = 1; k <= order; ++k) {
    b[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k) - 1] *
                                     static_cast<long double>(2 * k - 3) /
                                     static_cast<long double>(2 * k);
  }
  return b;
}

// Taylor coefficients c_n of sqrt(1-u) e^{beta u} and the resulting diagonal
// coefficients s_n = eps n! c_n / beta^n, in long double. Entries may be
// non-finite once n!/beta^n outgrows extended precision; callers decide.
struct SeriesTable {
  std::vector<long double> c;
  std::vector<long double> s;
};

SeriesTable tabulate_series(double epsilon, double beta, int order) {
  const auto b = sqrt_coeffs_ld(order - 1);
  std::vector<long double> expo(static_cast<std::size_t>(order));  // beta^j / j!
  expo[0] = 1.0L;
  for (int j = 1; j < order; ++j) {
    expo[static_cast<std::size_t>(j)] =
        expo[static_cast<std::size_t>(j) - 1] * static_cast<long double>(beta) / j;
  }
  SeriesTable table;
  table.c.resize(static_cast<std::size_t>(order));
  table.s.resize(static_cast<std::size_t>(order));
  long double fact_over_pow = 1.0L;  // n! / beta^n
  for (int n = 0; n < order; ++n) {
    if (n == 0) {
      table.c[0] = 1.0L;  // b_0 * beta^0 / 0!
    } else {
      CompensatedSum acc;
      for (int k = 0; k <= n; ++k) {
        acc.add(b[static_cast<std::size_t>(k)] * expo[static_cast<std::size_t>(n - k)]);
      }
      table.c[static_cast<std::size_t>(n)] = acc.value();
      fact_over_pow *= static_cast<long double>(n) / static_cast<long double>(beta);
    }
    table.s[static_cast<std::size_t>(n)] =
        static_cast<long double>(epsilon) * fact_over_pow * table.c[static_cast<std::size_t>(n)];
  }
  table.s[0] = static_cast<long double>(epsilon);  // c_0 = 1 by construction
  return table;
}

constexpr int kMaxSeriesOrder = 4096;
constexpr double kDoubleCeiling = 1e306;

void check_series_params(double epsilon, double beta, int n_series) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("series slope epsilon must be positive and finite");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("series constant beta must be positive and finite");
  }
  if (n_series < 1 || n_series > kMaxSeriesOrder) {
    throw ParameterError("series order must be in [1, " + std::to_string(kMaxSeriesOrder) +
                         "], got " + std::to_string(n_series));
  }
}

}  // namespace

double lorentz_gamma(double v) {
  if (!std::isfinite(v) || std::abs(v) >= 1.0) {
    throw SuperluminalError("Lorentz factor requires |v| < 1, got " + std::to_string(v));
  }
  return 1.0 / std::sqrt(1.0 - v * v);
}

std::vector<double> sqrt_series_coeffs(int order) {
  if (order < 0) throw ParameterError("series order must be >= 0");
  const auto b = sqrt_coeffs_ld(order);
  std::vector<double> out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = static_cast<double>(b[k]);
  return out;
}

DilationSeries::DilationSeries(double epsilon, double beta, int n_series)
    : epsilon_(epsilon), beta_(beta) {
  check_series_params(epsilon, beta, n_series);
  SeriesTable table = tabulate_series(epsilon, beta, n_series);
  for (int n = 0; n < n_series; ++n) {
    if (!std::isfinite(table.s[static_cast<std::size_t>(n)])) {
      throw NumericError("dilation coefficient S_" + std::to_string(n) +
                         " overflows extended precision; reduce the order or raise beta");
    }
  }
  coeffs_ = std::move(table.s);
}

double DilationSeries::coeff(int n) const {
  const long double v = coeff_ld(n);
  const double d = static_cast<double>(v);
  if (!std::isfinite(d)) {
    throw NumericError("dilation coefficient S_" + std::to_string(n) +
                       " does not fit double precision");
  }
  return d;
}

long double DilationSeries::coeff_ld(int n) const {
  if (n < 0 || n >= order()) {
    throw ShapeError("coefficient index " + std::to_string(n) + " outside series order " +
                     std::to_string(order()));
  }
  return coeffs_[static_cast<std::size_t>(n)];
}

double DilationSeries::partial_sum(double u, int terms) const {
  if (terms < 0 || terms > order()) {
    throw ShapeError("partial sum over " + std::to_string(terms) +
                     " terms exceeds series order " + std::to_string(order()));
  }
  const long double x = static_cast<long double>(beta_) * static_cast<long double>(u);
  long double weight = 1.0L;  // x^n / n!
  CompensatedSum acc;
  for (int n = 0; n < terms; ++n) {
    acc.add(coeffs_[static_cast<std::size_t>(n)] * weight);
    weight *= x / static_cast<long double>(n + 1);
  }
  return static_cast<double>(acc.value());
}

TruncatedOperator build_S_operator(const DilationSeries& series, int dim) {
  if (dim > series.order()) {
    throw ShapeError("operator dimension " + std::to_string(dim) + " exceeds series order " +
                     std::to_string(series.order()));
  }
  TruncatedOperator op(dim);
  for (int n = 0; n < dim; ++n) op.at(n, n) = series.coeff(n);
  return op;
}

DilationCheck verify_dilation(const BoostParams& params, double epsilon, int dim) {
  params.validate();
  if (dim < 0 || dim > 2048) {
    throw ParameterError("dim floor must be in [0, 2048], got " + std::to_string(dim));
  }
  const double target = epsilon / lorentz_gamma(params.v);
  const Complex alpha = alpha_of(params);
  const double beta = beta_of(params);
  const double u = params.v * params.v;

  const int dim_coherent = coherent_dim_for(alpha, 1e-12);

  int dim_used;
  if (dim > 0) {
    if (dim < dim_coherent) {
      throw TruncationError("dim " + std::to_string(dim) +
                                " violates the coherent tail condition; need dim >= " +
                                std::to_string(dim_coherent),
                            dim_coherent);
    }
    dim_used = dim;
  } else {
    // Automatic truncation: scan the series once in extended precision, pick
    // the smallest order whose discarded tail perturbs the measurement by
    // less than 1e-12, and stay where the coefficients still fit a double.
    const int scan_order = std::min(kMaxSeriesOrder, std::max(dim_coherent, 512));
    SeriesTable table = tabulate_series(epsilon, beta, scan_order);
    int double_safe = scan_order;
    for (int n = 0; n < scan_order; ++n) {
      const long double mag = std::abs(table.s[static_cast<std::size_t>(n)]);
      if (!(mag < static_cast<long double>(kDoubleCeiling))) {
        double_safe = n;
        break;
      }
    }

    const long double lambda = static_cast<long double>(beta) * u;
    const long double tail_budget = 1e-12L * std::exp(lambda);  // 1e-12 epsilon on the measurement
    int dim_series = double_safe;
    long double tail = 0.0L;
    long double u_pow = std::pow(static_cast<long double>(u), double_safe - 1);
    for (int n = double_safe - 1; n >= 2; --n) {
      tail += std::abs(table.c[static_cast<std::size_t>(n)]) * u_pow;
      if (u > 0.0) u_pow /= u;
      if (tail < tail_budget) {
        dim_series = n;
      } else {
        break;
      }
    }

    dim_used = std::max({dim_coherent, dim_series, 2});
    dim_used = std::min(dim_used, std::max(double_safe, 2));
  }

  DilationSeries series(epsilon, beta, dim_used);
  TruncatedOperator s_op = build_S_operator(series, dim_used);
  StateVector state = coherent_state(alpha, dim_used);
  const double measured = expectation(s_op, state).real();
  return DilationCheck{measured, target, std::abs(measured - target), dim_used};
}

double qtr_expectation_growth(const DilationSeries& series, const StateVector& state,
                              double delta_t, int dim) {
  if (!(delta_t >= 0.0)) {
    throw ParameterError("elapsed time must be >= 0, got " + std::to_string(delta_t));
  }
  if (state.dim() != dim) {
    throw ShapeError("state dimension " + std::to_string(state.dim()) +
                     " does not match requested dim " + std::to_string(dim));
  }
  TruncatedOperator s_op = build_S_operator(series, dim);
  return expectation(s_op, state).real() * delta_t;
}

double time_to_threshold(double threshold, double epsilon, double v) {
  if (!(threshold > 0.0)) throw ParameterError("threshold must be > 0");
  if (!(epsilon > 0.0)) throw ParameterError("slope epsilon must be > 0");
  return lorentz_gamma(v) * threshold / epsilon;
}

}  // namespace qtr
