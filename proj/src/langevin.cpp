#include "qtr/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qtr {

LangevinSpec LangevinSpec::number_conserving(int dim, double omega, double hbar) {
  auto [a, adag] = ladder_operators(dim);
  TruncatedOperator h = Complex{omega, 0.0} * (adag * a);
  return LangevinSpec{std::move(h), TruncatedOperator(dim), hbar};
}

void LangevinSpec::validate() const {
  if (hamiltonian.dim() != jump.dim()) {
    throw ShapeError("Hamiltonian dim " + std::to_string(hamiltonian.dim()) +
                     " does not match jump operator dim " + std::to_string(jump.dim()));
  }
  if (!(hbar > 0.0)) throw ParameterError("hbar must be > 0");
  if (!hamiltonian.is_hermitian(1e-12)) {
    throw ParameterError("Langevin Hamiltonian must be hermitian within 1e-12");
  }
}

TruncatedOperator adjoint_drift(const TruncatedOperator& z, const LangevinSpec& spec) {
  spec.validate();
  if (z.dim() != spec.hamiltonian.dim()) {
    throw ShapeError("observable dim " + std::to_string(z.dim()) + " does not match spec dim " +
                     std::to_string(spec.hamiltonian.dim()));
  }
  const TruncatedOperator& c = spec.jump;
  const TruncatedOperator cdag = c.adjoint();
  const TruncatedOperator cdag_c = cdag * c;

  TruncatedOperator drift = cdag * (z * c);
  drift -= Complex{0.5, 0.0} * (cdag_c * z);
  drift -= Complex{0.5, 0.0} * (z * cdag_c);
  TruncatedOperator comm = spec.hamiltonian * z - z * spec.hamiltonian;
  drift += Complex{0.0, 1.0 / spec.hbar} * comm;
  return drift;
}

double check_constant_S(const TruncatedOperator& s, const LangevinSpec& spec) {
  if (!s.is_hermitian(1e-12)) {
    throw ParameterError("register observable must be hermitian within 1e-12");
  }
  return adjoint_drift(s, spec).max_abs();
}

DriftNorms drift_norms(const TruncatedOperator& s, const LangevinSpec& spec) {
  if (!s.is_hermitian(1e-12)) {
    throw ParameterError("register observable must be hermitian within 1e-12");
  }
  const TruncatedOperator drift = adjoint_drift(s, spec);
  const int dim = drift.dim();
  double masked = 0.0;
  for (int r = 0; r + 1 < dim; ++r) {
    for (int col = 0; col + 1 < dim; ++col) {
      masked = std::max(masked, std::abs(drift.at(r, col)));
    }
  }
  return DriftNorms{drift.max_abs(), masked};
}

}  // namespace qtr
