#include "qtr/galilean.hpp"

#include <cmath>
#include <string>

namespace qtr {

void BoostParams::validate() const {
  if (!std::isfinite(v) || std::abs(v) >= 1.0) {
    throw SuperluminalError("boost velocity must satisfy |v| < 1, got " + std::to_string(v));
  }
  if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
    throw ParameterError("boost parameters need mass, omega, hbar > 0");
  }
  if (!(t >= 0.0)) {
    throw ParameterError("epoch time must be >= 0, got " + std::to_string(t));
  }
}

TruncatedOperator boost_generator(const BoostParams& params, int dim) {
  params.validate();
  auto [x, p] = quadrature_operators(dim, params.mass, params.omega, params.hbar);
  return Complex{params.t, 0.0} * p - Complex{params.mass, 0.0} * x;
}

Complex alpha_of(const BoostParams& params) {
  params.validate();
  const double scale = -params.v * std::sqrt(params.mass / (2.0 * params.hbar));
  return Complex{scale * params.t * std::sqrt(params.omega), scale};
}

double beta_of(const BoostParams& params) {
  params.validate();
  return params.mass / (2.0 * params.hbar) * (params.omega * params.t * params.t + 1.0);
}

StateVector boost_state(const BoostParams& params, const StateVector& state) {
  params.validate();
  const Complex alpha = alpha_of(params);
  const int required = coherent_dim_for(alpha, 1e-12);
  if (state.dim() < required) {
    throw TruncationError("state dimension " + std::to_string(state.dim()) +
                              " too small for the boosted amplitude; need dim >= " +
                              std::to_string(required),
                          required);
  }
  TruncatedOperator gen = boost_generator(params, state.dim());
  gen *= Complex{0.0, params.v / params.hbar};
  return apply(matrix_exponential(gen), state);
}

}  // namespace qtr
