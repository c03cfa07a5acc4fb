#ifndef QTR_GALILEAN_HPP
#define QTR_GALILEAN_HPP

#include "qtr/fock.hpp"

namespace qtr {

/// Parameters of a constant-velocity change of reference frame. Units have
/// c = 1, so the velocity is dimensionless and must stay subluminal.
struct BoostParams {
  double v = 0.0;      // relative velocity, |v| < 1
  double mass = 1.0;   // > 0
  double omega = 1.0;  // > 0
  double hbar = 1.0;   // > 0
  double t = 0.0;      // epoch entering the generator, >= 0

  /// Throws SuperluminalError / ParameterError on violation.
  void validate() const;
};

/// Boost generator G = p t - m x, hermitian.
TruncatedOperator boost_generator(const BoostParams& params, int dim);

/// Coherent amplitude of the boosted vacuum:
/// alpha = -v sqrt(m / (2 hbar)) (t sqrt(omega) + i).
Complex alpha_of(const BoostParams& params);

/// beta = (m / (2 hbar)) (omega t^2 + 1), so |alpha_of|^2 = v^2 beta exactly.
double beta_of(const BoostParams& params);

/// exp((i/hbar) v G) applied to the state. Boosting the vacuum reproduces
/// coherent_state(alpha_of(params)).
StateVector boost_state(const BoostParams& params, const StateVector& state);

}  // namespace qtr

#endif  // QTR_GALILEAN_HPP
