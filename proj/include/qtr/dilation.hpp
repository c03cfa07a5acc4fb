#ifndef QTR_DILATION_HPP
#define QTR_DILATION_HPP

#include <vector>

#include "qtr/fock.hpp"
#include "qtr/galilean.hpp"

namespace qtr {

/// Lorentz factor 1/sqrt(1 - v^2) in units c = 1. Throws SuperluminalError
/// for |v| >= 1.
double lorentz_gamma(double v);

/// Taylor coefficients b_0..b_order of sqrt(1 - u) about u = 0:
/// b_k = (-1)^k binom(1/2, k), so (1, -1/2, -1/8, -1/16, ...).
std::vector<double> sqrt_series_coeffs(int order);

/// Diagonal coefficients S_{n,n} of the dilation observable, solved from the
/// coefficient matching of sqrt(1 - u) e^{beta u} in u = v^2:
///   c_n = sum_{k<=n} b_k beta^{n-k} / (n-k)!,   S_{n,n} = eps n! c_n / beta^n.
/// The convolution runs in extended precision with compensated summation;
/// coefficients are kept in long double because n!/beta^n outgrows double
/// well before the series tail becomes negligible.
class DilationSeries {
 public:
  /// Requires eps > 0, beta > 0, n_series >= 1. Throws NumericError if any
  /// coefficient overflows extended precision.
  DilationSeries(double epsilon, double beta, int n_series);

  double epsilon() const { return epsilon_; }
  double beta() const { return beta_; }
  int order() const { return static_cast<int>(coeffs_.size()); }

  /// S_{n,n} as double; throws ShapeError past the order, NumericError if the
  /// value does not fit a double.
  double coeff(int n) const;
  long double coeff_ld(int n) const;

  /// sum_{n < terms} S_{n,n} (beta u)^n / n!, evaluated in extended
  /// precision. Converges to epsilon sqrt(1-u) e^{beta u} for 0 <= u < 1.
  double partial_sum(double u, int terms) const;

 private:
  double epsilon_;
  double beta_;
  std::vector<long double> coeffs_;
};

/// Diagonal hermitian operator carrying coeffs 0..dim-1. Requires
/// dim <= series.order().
TruncatedOperator build_S_operator(const DilationSeries& series, int dim);

struct DilationCheck {
  double measured;    // <alpha| S |alpha> through the truncated operator
  double target;      // epsilon / gamma(v)
  double abs_error;   // |measured - target|
  int dim_used;       // truncation actually evaluated
};

/// Builds the diagonal observable for beta_of(params) and measures it in the
/// coherent state alpha_of(params). dim = 0 selects the truncation
/// automatically, raising it until both the coherent tail and the series
/// tail fall below 1e-12; an explicit dim is used as given and must satisfy
/// the coherent tail condition.
DilationCheck verify_dilation(const BoostParams& params, double epsilon, int dim);

/// Accumulated register value <S> * delta_t under the constant-drift
/// reduction. Requires delta_t >= 0 and state.dim() == dim.
double qtr_expectation_growth(const DilationSeries& series, const StateVector& state,
                              double delta_t, int dim);

/// Time at which (eps/gamma) t reaches the threshold: gamma(v) * A / eps.
double time_to_threshold(double threshold, double epsilon, double v);

}  // namespace qtr

#endif  // QTR_DILATION_HPP
