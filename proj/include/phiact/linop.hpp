#ifndef PHIACT_LINOP_HPP
#define PHIACT_LINOP_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <utility>

namespace phiact {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Opaque real n -> n linear map, queried only through products with
/// column blocks.  Immutable after construction; apply must be re-entrant
/// so evaluations on the same operator can run concurrently.
class LinearOperator {
 public:
  using ApplyFn = std::function<Matrix(const Eigen::Ref<const Matrix>&)>;

  LinearOperator() : dim_(0) {}
  LinearOperator(Index dim, ApplyFn apply, std::string label = {})
      : dim_(dim), apply_(std::move(apply)), label_(std::move(label)) {}

  Index dim() const { return dim_; }
  const std::string& label() const { return label_; }

  /// A*X for an n x k block X.  Throws on a row-count mismatch.
  Matrix apply(const Eigen::Ref<const Matrix>& X) const;

 private:
  Index dim_;
  ApplyFn apply_;
  std::string label_;
};

/// Wraps a square dense matrix as a LinearOperator.  The entries are
/// copied; the operator stays valid after the source goes out of scope.
/// Rejects non-square or non-finite input.
LinearOperator dense_operator(const Matrix& entries, std::string label = {});

/// (A - xi*I)*X.  For xi == 0 this is exactly op.apply(X), bit for bit.
Matrix shifted_apply(const LinearOperator& op, double xi,
                     const Eigen::Ref<const Matrix>& X);

/// Matrix infinity norm (max absolute row sum); the norm used by the
/// adaptive termination tests.
double inf_norm(const Eigen::Ref<const Matrix>& X);

}  // namespace phiact

#endif  // PHIACT_LINOP_HPP
