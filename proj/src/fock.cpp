#include "qtr/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qtr {

namespace {

void check_dim(int dim) {
  if (dim < 2) {
    throw ParameterError("Fock truncation dimension must be at least 2, got " +
                         std::to_string(dim));
  }
}

void check_same_dim(int a, int b) {
  if (a != b) {
    throw ShapeError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

TruncatedOperator::TruncatedOperator(int dim) : dim_(dim) {
  check_dim(dim);
  entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

TruncatedOperator TruncatedOperator::identity(int dim) {
  TruncatedOperator op(dim);
  for (int n = 0; n < dim; ++n) op.at(n, n) = 1.0;
  return op;
}

TruncatedOperator TruncatedOperator::adjoint() const {
  TruncatedOperator out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
  return out;
}

TruncatedOperator& TruncatedOperator::operator+=(const TruncatedOperator& other) {
  check_same_dim(dim_, other.dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

TruncatedOperator& TruncatedOperator::operator-=(const TruncatedOperator& other) {
  check_same_dim(dim_, other.dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

TruncatedOperator& TruncatedOperator::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

TruncatedOperator operator*(const TruncatedOperator& lhs, const TruncatedOperator& rhs) {
  check_same_dim(lhs.dim_, rhs.dim_);
  const int n = lhs.dim_;
  TruncatedOperator out(n);
  const Complex* a = lhs.entries_.data();
  const Complex* b = rhs.entries_.data();
  Complex* c = out.entries_.data();
  // i-k-j order keeps the inner loop contiguous.
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a[i * static_cast<std::size_t>(n) + k];
      if (aik == Complex{0.0, 0.0}) continue;
      const Complex* brow = b + k * static_cast<std::size_t>(n);
      Complex* crow = c + i * static_cast<std::size_t>(n);
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return out;
}

double TruncatedOperator::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double TruncatedOperator::one_norm() const {
  double best = 0.0;
  for (int c = 0; c < dim_; ++c) {
    double col = 0.0;
    for (int r = 0; r < dim_; ++r) col += std::abs(at(r, c));
    best = std::max(best, col);
  }
  return best;
}

bool TruncatedOperator::is_hermitian(double tol) const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
  return true;
}

bool TruncatedOperator::is_unitary(double tol) const {
  TruncatedOperator prod = (*this) * adjoint();
  prod -= identity(dim_);
  return prod.max_abs() <= tol;
}

StateVector::StateVector(int dim, std::vector<Complex> amplitudes) : dim_(dim) {
  check_dim(dim);
  if (static_cast<int>(amplitudes.size()) != dim) {
    throw ShapeError("amplitude vector length " + std::to_string(amplitudes.size()) +
                     " does not match dim " + std::to_string(dim));
  }
  long double norm_sq = 0.0L;
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw NumericError("non-finite amplitude in state vector");
    }
    norm_sq += static_cast<long double>(std::norm(a));
  }
  if (norm_sq <= 0.0L) throw ParameterError("state vector has zero norm");
  const double inv = 1.0 / static_cast<double>(std::sqrt(norm_sq));
  for (auto& a : amplitudes) a *= inv;
  amplitudes_ = std::move(amplitudes);
}

StateVector StateVector::vacuum(int dim) { return basis_state(0, dim); }

StateVector StateVector::basis_state(int level, int dim) {
  check_dim(dim);
  if (level < 0 || level >= dim) {
    throw ParameterError("basis level " + std::to_string(level) + " outside [0, " +
                         std::to_string(dim) + ")");
  }
  std::vector<Complex> amps(static_cast<std::size_t>(dim), Complex{0.0, 0.0});
  amps[static_cast<std::size_t>(level)] = 1.0;
  return StateVector(dim, std::move(amps));
}

std::pair<TruncatedOperator, TruncatedOperator> ladder_operators(int dim) {
  check_dim(dim);
  TruncatedOperator a(dim);
  for (int n = 1; n < dim; ++n) a.at(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a, a.adjoint()};
}

std::pair<TruncatedOperator, TruncatedOperator> quadrature_operators(int dim, double mass,
                                                                     double omega, double hbar) {
  if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
    throw ParameterError("quadrature operators need mass, omega, hbar > 0");
  }
  auto [a, adag] = ladder_operators(dim);
  const double xs = std::sqrt(hbar / (2.0 * mass * omega));
  const double ps = std::sqrt(hbar * mass * omega / 2.0);
  TruncatedOperator x = Complex{xs, 0.0} * (a + adag);
  TruncatedOperator p = Complex{0.0, ps} * (adag - a);
  return {x, p};
}

int coherent_dim_for(Complex alpha, double tail_weight) {
  if (!(tail_weight > 0.0)) throw ParameterError("tail weight must be positive");
  const long double lambda = static_cast<long double>(std::norm(alpha));
  if (lambda == 0.0L) return 2;
  // Poisson(lambda) point masses, then suffix sums: all-positive arithmetic,
  // so the tail is accurate down to long double underflow.
  constexpr int kMaxScan = 4096;
  std::vector<long double> pmf;
  pmf.reserve(256);
  long double p = std::exp(-lambda);
  int n = 0;
  while (true) {
    pmf.push_back(p);
    const bool past_mode = static_cast<long double>(n) > lambda;
    if (past_mode && p < static_cast<long double>(tail_weight) * 1e-6L) break;
    if (++n >= kMaxScan) {
      throw ParameterError("coherent amplitude too large for a tractable truncation");
    }
    p *= lambda / static_cast<long double>(n);
  }
  long double tail = 0.0L;
  int dim = static_cast<int>(pmf.size());
  for (int k = static_cast<int>(pmf.size()) - 1; k >= 0; --k) {
    tail += pmf[static_cast<std::size_t>(k)];
    if (tail >= static_cast<long double>(tail_weight)) break;
    dim = k;  // tail starting at level k is still below the target
  }
  return std::max(dim, 2);
}

namespace {

void check_tail(Complex alpha, int dim) {
  check_dim(dim);
  const int required = coherent_dim_for(alpha, 1e-12);
  if (dim < required) {
    throw TruncationError("truncation too small for |alpha| = " + std::to_string(std::abs(alpha)) +
                              ": need dim >= " + std::to_string(required) + ", got " +
                              std::to_string(dim),
                          required);
  }
}

}  // namespace

StateVector coherent_state(Complex alpha, int dim) {
  check_tail(alpha, dim);
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  const double lambda = std::norm(alpha);
  Complex amp = std::exp(-lambda / 2.0);
  for (int n = 0; n < dim; ++n) {
    amps[static_cast<std::size_t>(n)] = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return StateVector(dim, std::move(amps));
}

TruncatedOperator displacement(Complex alpha, int dim) {
  check_tail(alpha, dim);
  auto [a, adag] = ladder_operators(dim);
  TruncatedOperator gen = alpha * adag - std::conj(alpha) * a;
  return matrix_exponential(gen);
}

Complex expectation(const TruncatedOperator& op, const StateVector& state) {
  check_same_dim(op.dim(), state.dim());
  const int n = op.dim();
  Complex result{0.0, 0.0};
  for (int r = 0; r < n; ++r) {
    Complex row{0.0, 0.0};
    for (int c = 0; c < n; ++c) row += op.at(r, c) * state.amplitude(c);
    result += std::conj(state.amplitude(r)) * row;
  }
  return result;
}

StateVector apply(const TruncatedOperator& op, const StateVector& state) {
  check_same_dim(op.dim(), state.dim());
  const int n = op.dim();
  std::vector<Complex> out(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  for (int r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (int c = 0; c < n; ++c) acc += op.at(r, c) * state.amplitude(c);
    out[static_cast<std::size_t>(r)] = acc;
  }
  return StateVector(n, std::move(out));
}

Complex overlap(const StateVector& a, const StateVector& b) {
  check_same_dim(a.dim(), b.dim());
  Complex acc{0.0, 0.0};
  for (int n = 0; n < a.dim(); ++n) acc += std::conj(a.amplitude(n)) * b.amplitude(n);
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(overlap(a, b)); }

TruncatedOperator matrix_exponential(const TruncatedOperator& op) {
  for (const auto& e : op.entries()) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw NumericError("matrix exponential of non-finite operator");
    }
  }
  const int dim = op.dim();
  const double norm = op.one_norm();
  if (!std::isfinite(norm)) {
    throw NumericError("matrix exponential input norm overflows double precision");
  }
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  TruncatedOperator scaled = op;
  scaled *= Complex{std::ldexp(1.0, -squarings), 0.0};

  // Taylor core at ||scaled||_1 <= 0.5: terms fall below double epsilon well
  // before the cap.
  TruncatedOperator sum = TruncatedOperator::identity(dim);
  TruncatedOperator term = TruncatedOperator::identity(dim);
  constexpr int kMaxTerms = 64;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = term * scaled;
    term *= Complex{1.0 / static_cast<double>(k), 0.0};
    sum += term;
    if (term.max_abs() < 1e-18 * std::max(1.0, sum.max_abs())) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace qtr
