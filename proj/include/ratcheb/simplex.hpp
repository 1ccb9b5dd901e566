#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ratcheb {
namespace lp {

enum class Status { optimal, infeasible, unbounded, stalled };

struct Result {
  Status status = Status::stalled;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<int> basis;
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule:
///   maximize c^T x  subject to  A x = b, x >= 0.
/// Rows of A must be reasonably scaled; b may have any sign.
Result simplex_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& c, int max_iter = 200000);

}  // namespace lp
}  // namespace ratcheb
