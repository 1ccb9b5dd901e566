#include "ratcheb/simplex.hpp"

#include <cmath>

#include "ratcheb/errors.hpp"

namespace ratcheb {
namespace lp {

namespace {
constexpr double kPivotTol = 1e-11;

struct Tableau {
  Eigen::MatrixXd T;        // m x (n + 1); last column is the rhs
  std::vector<int> basis;   // basic variable per row
  Eigen::VectorXd reduced;  // objective row, length n + 1

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int r = 0; r < T.rows(); ++r) {
      if (r == row) continue;
      const double f = T(r, col);
      if (f != 0.0) T.row(r) -= f * T.row(row);
    }
    const double f = reduced(col);
    if (f != 0.0) reduced -= f * T.row(row).transpose();
    basis[row] = col;
  }
};

// Bland's rule: smallest-index entering column with positive reduced cost,
// smallest-index leaving row on ties.  Deterministic and cycle-free.
Status run(Tableau& tb, int nvars, int& iters, int max_iter) {
  const int m = static_cast<int>(tb.T.rows());
  for (; iters < max_iter; ++iters) {
    int col = -1;
    for (int j = 0; j < nvars; ++j) {
      if (tb.reduced(j) > kPivotTol) {
        col = j;
        break;
      }
    }
    if (col < 0) return Status::optimal;
    int row = -1;
    double best = 0.0;
    for (int r = 0; r < m; ++r) {
      if (tb.T(r, col) > kPivotTol) {
        const double ratio = tb.T(r, nvars) / tb.T(r, col);
        if (row < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && tb.basis[r] < tb.basis[row])) {
          row = r;
          best = ratio;
        }
      }
    }
    if (row < 0) return Status::unbounded;
    tb.pivot(row, col);
  }
  return Status::stalled;
}
}  // namespace

Result simplex_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& c, int max_iter) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Result res;

  // Phase 1: minimize the sum of artificials.
  Tableau tb;
  tb.T.resize(m, n + m + 1);
  tb.basis.resize(m);
  for (int r = 0; r < m; ++r) {
    const double s = b(r) >= 0.0 ? 1.0 : -1.0;
    tb.T.block(r, 0, 1, n) = s * A.row(r);
    for (int a = 0; a < m; ++a) tb.T(r, n + a) = (a == r) ? 1.0 : 0.0;
    tb.T(r, n + m) = s * b(r);
    tb.basis[r] = n + r;
  }
  tb.reduced = Eigen::VectorXd::Zero(n + m + 1);
  // maximize -(sum of artificials): reduced costs of original columns
  for (int j = 0; j <= n + m; ++j) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += tb.T(r, j);
    tb.reduced(j) = (j < n || j == n + m) ? s : s - 1.0;
  }
  int iters = 0;
  Status st = run(tb, n + m, iters, max_iter);
  res.iterations = iters;
  if (st != Status::optimal || tb.reduced(n + m) > 1e-7) {
    res.status = (st == Status::optimal) ? Status::infeasible : st;
    return res;
  }
  // Drive any remaining artificial variables out of the basis.
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] >= n) {
      int col = -1;
      for (int j = 0; j < n; ++j) {
        if (std::abs(tb.T(r, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) tb.pivot(r, col);
      // otherwise the row is redundant; leave the artificial at zero
    }
  }

  // Phase 2 on the original columns.
  Tableau tb2;
  tb2.T.resize(m, n + 1);
  tb2.T.block(0, 0, m, n) = tb.T.block(0, 0, m, n);
  tb2.T.col(n) = tb.T.col(n + m);
  tb2.basis = tb.basis;
  tb2.reduced = Eigen::VectorXd::Zero(n + 1);
  for (int j = 0; j <= n; ++j) tb2.reduced(j) = (j < n) ? c(j) : 0.0;
  for (int r = 0; r < m; ++r) {
    if (tb2.basis[r] < n) {
      const double f = tb2.reduced(tb2.basis[r]);
      if (f != 0.0) tb2.reduced -= f * tb2.T.row(r).transpose();
    }
  }
  st = run(tb2, n, iters, max_iter);
  res.iterations = iters;
  res.status = st;
  if (st != Status::optimal) return res;

  res.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (tb2.basis[r] < n) res.x[tb2.basis[r]] = tb2.T(r, n);
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += c(j) * res.x[j];
  res.objective = obj;
  res.basis = tb2.basis;
  return res;
}

}  // namespace lp
}  // namespace ratcheb
