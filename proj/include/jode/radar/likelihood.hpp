#pragma once

#include <span>
#include <utility>

#include <Eigen/Dense>

namespace jode::radar {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Conditional log likelihood ratio at one hypothesized location:
///   sum_n [ R_n^H (Q_n + I)^{-1} R_n - ln |Q_n + I| ].
/// Uses a Cholesky solve; throws NumericError if some Q_n + I is not
/// positive definite or the quadratic form has a non-negligible imaginary part.
[[nodiscard]] double log_clr_radar(std::span<const CMatrix> q, std::span<const CVector> r);

/// ln |Q + I_M| and (1/2) ln |Qbar + I_2M| where Qbar = [Qr, -Qi; Qi, Qr]
/// is the real embedding of Q. The two agree for Hermitian PSD Q.
[[nodiscard]] std::pair<double, double> det_identity_check(const CMatrix& q);

/// R^H (Q + I)^{-1} R and its real-embedding counterpart
/// [Rr; Ri]' (Qbar + I)^{-1} [Rr; Ri].
[[nodiscard]] std::pair<double, double> quadratic_form_identity(const CMatrix& q, const CVector& r);

/// Real 2M x 2M embedding [Re Q, -Im Q; Im Q, Re Q].
[[nodiscard]] Eigen::MatrixXd real_embedding(const CMatrix& q);

}  // namespace jode::radar
