#include "phiact/linop.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace phiact {

Matrix LinearOperator::apply(const Eigen::Ref<const Matrix>& X) const {
  if (!apply_) {
    throw std::logic_error("LinearOperator::apply: operator is empty");
  }
  if (X.rows() != dim_) {
    throw std::invalid_argument(
        "LinearOperator::apply: block has " + std::to_string(X.rows()) +
        " rows, operator dimension is " + std::to_string(dim_));
  }
  Matrix Y = apply_(X);
  if (Y.rows() != X.rows() || Y.cols() != X.cols()) {
    throw std::logic_error("LinearOperator::apply: shape not preserved");
  }
  return Y;
}

LinearOperator dense_operator(const Matrix& entries, std::string label) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("dense_operator: matrix must be square");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("dense_operator: matrix has non-finite entries");
  }
  auto held = std::make_shared<const Matrix>(entries);
  return LinearOperator(
      held->rows(),
      [held](const Eigen::Ref<const Matrix>& X) -> Matrix { return *held * X; },
      std::move(label));
}

Matrix shifted_apply(const LinearOperator& op, double xi,
                     const Eigen::Ref<const Matrix>& X) {
  if (!std::isfinite(xi)) {
    throw std::invalid_argument("shifted_apply: shift must be finite");
  }
  if (xi == 0.0) return op.apply(X);
  Matrix Y = op.apply(X);
  Y.noalias() -= xi * X;
  return Y;
}

double inf_norm(const Eigen::Ref<const Matrix>& X) {
  if (X.size() == 0) return 0.0;
  return X.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace phiact
