#include "jode/radar/likelihood.hpp"

#include <cmath>
#include <sstream>

#include "jode/core/errors.hpp"

namespace jode::radar {

namespace {

template <class Matrix>
auto factor_shifted(const Matrix& q) {
  const Matrix shifted = q + Matrix::Identity(q.rows(), q.cols());
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() != Eigen::Success) throw NumericError("Q + I is not positive definite");
  return llt;
}

template <class LLT>
double log_det_from(const LLT& llt) {
  double s = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(std::real(l(i, i)));
  return 2.0 * s;
}

}  // namespace

Eigen::MatrixXd real_embedding(const CMatrix& q) {
  const auto m = q.rows();
  Eigen::MatrixXd out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = q.real();
  out.topRightCorner(m, m) = -q.imag();
  out.bottomLeftCorner(m, m) = q.imag();
  out.bottomRightCorner(m, m) = q.real();
  return out;
}

double log_clr_radar(std::span<const CMatrix> q, std::span<const CVector> r) {
  if (q.size() != r.size()) throw NumericError("receiver count mismatch between Q and R");
  double total = 0.0;
  for (std::size_t n = 0; n < q.size(); ++n) {
    const auto llt = factor_shifted(q[n]);
    const CVector x = llt.solve(r[n]);
    const std::complex<double> quad = r[n].dot(x);  // conjugates r
    if (std::abs(quad.imag()) > 1e-9 * std::max(1.0, std::abs(quad.real()))) {
      std::ostringstream msg;
      msg << "quadratic form has imaginary residual " << quad.imag() << " at receiver " << n;
      throw NumericError(msg.str());
    }
    total += quad.real() - log_det_from(llt);
  }
  return total;
}

std::pair<double, double> det_identity_check(const CMatrix& q) {
  const double complex_form = log_det_from(factor_shifted(q));
  const Eigen::MatrixXd qbar = real_embedding(q);
  const double real_form = 0.5 * log_det_from(factor_shifted(qbar));
  return {complex_form, real_form};
}

std::pair<double, double> quadratic_form_identity(const CMatrix& q, const CVector& r) {
  const CVector x = factor_shifted(q).solve(r);
  const double complex_form = r.dot(x).real();

  const auto m = r.size();
  Eigen::VectorXd stacked(2 * m);
  stacked.head(m) = r.real();
  stacked.tail(m) = r.imag();
  const Eigen::VectorXd y = factor_shifted(real_embedding(q)).solve(stacked);
  return {complex_form, stacked.dot(y)};
}

}  // namespace jode::radar
