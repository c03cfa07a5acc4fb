#ifndef QTR_FOCK_HPP
#define QTR_FOCK_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "qtr/errors.hpp"

namespace qtr {

using Complex = std::complex<double>;

/// Dense operator on the first `dim` levels of a Fock space. Values are
/// immutable in spirit: every operation returns a fresh operator.
class TruncatedOperator {
 public:
  /// Zero matrix of the given dimension. dim must be >= 2.
  explicit TruncatedOperator(int dim);

  static TruncatedOperator identity(int dim);

  int dim() const { return dim_; }

  Complex& at(int row, int col) { return entries_[row * static_cast<std::size_t>(dim_) + col]; }
  const Complex& at(int row, int col) const {
    return entries_[row * static_cast<std::size_t>(dim_) + col];
  }

  std::span<const Complex> entries() const { return entries_; }

  TruncatedOperator adjoint() const;

  TruncatedOperator& operator+=(const TruncatedOperator& other);
  TruncatedOperator& operator-=(const TruncatedOperator& other);
  TruncatedOperator& operator*=(Complex scale);

  friend TruncatedOperator operator+(TruncatedOperator lhs, const TruncatedOperator& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend TruncatedOperator operator-(TruncatedOperator lhs, const TruncatedOperator& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend TruncatedOperator operator*(Complex scale, TruncatedOperator op) {
    op *= scale;
    return op;
  }
  /// Matrix product.
  friend TruncatedOperator operator*(const TruncatedOperator& lhs, const TruncatedOperator& rhs);

  /// Largest entry magnitude.
  double max_abs() const;
  /// Maximum absolute column sum (the induced 1-norm).
  double one_norm() const;

  bool is_hermitian(double tol = 1e-12) const;
  /// U U^dagger = 1 within tol. Truncation breaks exact unitarity at the top
  /// level, hence the looser default.
  bool is_unitary(double tol = 1e-10) const;

 private:
  int dim_;
  std::vector<Complex> entries_;  // row-major, dim*dim
};

/// Pure state over `dim` Fock levels. Construction normalizes, so the unit
/// norm invariant holds exactly; a zero vector is rejected.
class StateVector {
 public:
  StateVector(int dim, std::vector<Complex> amplitudes);

  static StateVector vacuum(int dim);
  static StateVector basis_state(int level, int dim);

  int dim() const { return dim_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& amplitude(int level) const { return amplitudes_[static_cast<std::size_t>(level)]; }

 private:
  int dim_;
  std::vector<Complex> amplitudes_;
};

/// Annihilation and creation operators (a, a^dagger): a[n-1, n] = sqrt(n).
std::pair<TruncatedOperator, TruncatedOperator> ladder_operators(int dim);

/// Position and momentum, x = sqrt(hbar/(2 m omega)) (a + a^dagger) and
/// p = i sqrt(hbar m omega / 2) (a^dagger - a). Both hermitian.
std::pair<TruncatedOperator, TruncatedOperator> quadrature_operators(int dim, double mass,
                                                                     double omega, double hbar);

/// Smallest dim whose truncated coherent tail sum_{n>=dim} e^{-|alpha|^2}
/// |alpha|^{2n} / n! is below tail_weight. Never less than 2.
int coherent_dim_for(Complex alpha, double tail_weight = 1e-12);

/// Coherent state |alpha>: amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!),
/// renormalized after truncation. Requires the tail condition at 1e-12.
StateVector coherent_state(Complex alpha, int dim);

/// Displacement operator exp(alpha a^dagger - alpha^* a). Same tail
/// precondition as coherent_state.
TruncatedOperator displacement(Complex alpha, int dim);

/// <state| op |state>. Real within 1e-12 for hermitian op.
Complex expectation(const TruncatedOperator& op, const StateVector& state);

/// op |state>, renormalized.
StateVector apply(const TruncatedOperator& op, const StateVector& state);

/// |<a|b>|.
Complex overlap(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

/// exp(op) by scaling-and-squaring around a truncated Taylor core. Unitary
/// within 1e-10 for skew-hermitian input.
TruncatedOperator matrix_exponential(const TruncatedOperator& op);

}  // namespace qtr

#endif  // QTR_FOCK_HPP
