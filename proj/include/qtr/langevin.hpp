#ifndef QTR_LANGEVIN_HPP
#define QTR_LANGEVIN_HPP

#include "qtr/fock.hpp"

namespace qtr {

/// Open-system drift data: Hamiltonian H (hermitian) and jump operator c.
struct LangevinSpec {
  TruncatedOperator hamiltonian;
  TruncatedOperator jump;
  double hbar = 1.0;

  /// Default spec for a register observable: H = omega a^dagger a, c = 0.
  static LangevinSpec number_conserving(int dim, double omega, double hbar = 1.0);

  void validate() const;
};

/// Heisenberg-picture drift c^dag Z c - (1/2){c^dag c, Z} + (i/hbar)[H, Z].
/// Maps hermitian Z to hermitian output and annihilates the identity.
TruncatedOperator adjoint_drift(const TruncatedOperator& z, const LangevinSpec& spec);

/// Max-magnitude entry of adjoint_drift(S); zero certifies S as a fixed
/// point of the drift.
double check_constant_S(const TruncatedOperator& s, const LangevinSpec& spec);

/// Drift norms with and without the top Fock level, which truncation
/// corrupts for operators that move quanta.
struct DriftNorms {
  double full;
  double edge_masked;
};

DriftNorms drift_norms(const TruncatedOperator& s, const LangevinSpec& spec);

}  // namespace qtr

#endif  // QTR_LANGEVIN_HPP
