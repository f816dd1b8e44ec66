#pragma once

#include <array>
#include <functional>
#include <vector>

#include "causal/estimator.hpp"
#include "causal/types.hpp"

namespace causal {

/// Qubit density matrix [[alpha, beta], [conj(beta), 1 - alpha]].
struct QubitState {
  double alpha = 0.0;
  Complex beta{};

  /// Throws InvalidState unless 0 <= alpha <= 1 and |beta|^2 <= alpha (1 - alpha).
  void validate(std::string_view field = "state") const;
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Order lambda_A lambda_B contribution to detector B's reduced state.
struct SignalBlock {
  Matrix2 m{};
  /// Quadrature error estimate (largest entrywise change under node doubling).
  double error = 0.0;

  Complex trace() const noexcept { return m[0][0] + m[1][1]; }
};

/// 2 lambda_A lambda_B int int chi_A(t) chi_B(t') Re(beta_A e^{i W_A t}) C(t, t') M(t'),
/// with M(t') = [[-2 Im(beta_B e^{i W_B t'}), -i e^{-i W_B t'} (1 - 2 alpha_B)],
///               [ i e^{-i W_B t'} (1 - 2 alpha_B), 2 Im(beta_B e^{i W_B t'})]].
///
/// `C` is the smeared commutator as a function of s = t - t'. `breakpoints`
/// lists points in s where C may have kinks. Throws OverlappingSupports only in
/// the boundary-aware overload.
SignalBlock signal_block(const DetectorSpec& A, const QubitState& sA, const DetectorSpec& B,
                         const QubitState& sB, const std::function<Complex(double)>& C,
                         const std::vector<double>& breakpoints, int order);

SignalBlock signal_block(const Estimator& est, const DetectorSpec& A, const QubitState& sA,
                         const DetectorSpec& B, const QubitState& sB);

SignalBlock signal_block(const BoundaryConfig& bc, const DetectorSpec& A, const QubitState& sA,
                         const DetectorSpec& B, const QubitState& sB,
                         const CommutatorOptions& opts);

/// Largest singular value of the block.
double signal_magnitude(const SignalBlock& block) noexcept;

/// Frobenius norm of m - m^dagger.
double hermiticity_defect(const SignalBlock& block) noexcept;

}  // namespace causal
