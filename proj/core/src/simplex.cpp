#include "ssdkit/simplex.hpp"

#include <cmath>
#include <vector>

namespace ssdkit {

namespace {

class Tableau {
 public:
  Tableau(const Matrix& A, const Vector& b, double pivot_tol)
      : m_(static_cast<int>(A.rows())),
        n_(static_cast<int>(A.cols())),
        tol_(pivot_tol),
        T_(A.rows() + 1, A.cols() + A.rows() + 1),
        basis_(static_cast<std::size_t>(A.rows())) {
    T_.setZero();
    for (int i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) T_(i, j) = sign * A(i, j);
      T_(i, n_ + i) = 1.0;
      T_(i, rhs()) = sign * b[i];
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  int rhs() const { return n_ + m_; }

  void set_phase1_objective() {
    // Reduced costs for min(sum of artificials) with the artificial basis.
    for (int j = 0; j <= rhs(); ++j) {
      double s = 0.0;
      for (int i = 0; i < m_; ++i) s += T_(i, j);
      T_(m_, j) = (j >= n_ && j < n_ + m_) ? 0.0 : -s;
    }
  }

  void set_phase2_objective(const Vector& c) {
    for (int j = 0; j <= rhs(); ++j) {
      double cj = (j < n_) ? c[j] : 0.0;
      double s = 0.0;
      for (int i = 0; i < m_; ++i) {
        const int bi = basis_[static_cast<std::size_t>(i)];
        if (bi < n_) s += c[bi] * T_(i, j);
      }
      T_(m_, j) = cj - s;
    }
  }

  // Returns optimal|unbounded|failed. Artificial columns never enter when
  // artificials_blocked.
  LpStatus iterate(bool artificials_blocked) {
    const long max_iters = 200 + 60L * (n_ + m_);
    const long bland_after = 20 + 10L * (n_ + m_);
    for (long iter = 0; iter < max_iters; ++iter) {
      const bool bland = iter >= bland_after;
      int enter = -1;
      double best = -tol_;
      for (int j = 0; j < n_ + m_; ++j) {
        if (artificials_blocked && j >= n_) continue;
        const double r = T_(m_, j);
        if (bland) {
          if (r < -tol_) {
            enter = j;
            break;
          }
        } else if (r < best) {
          best = r;
          enter = j;
        }
      }
      if (enter < 0) return LpStatus::optimal;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = T_(i, enter);
        if (a <= tol_) continue;
        const double ratio = T_(i, rhs()) / a;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis_[static_cast<std::size_t>(i)] <
                 basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    return LpStatus::failed;
  }

  void pivot(int row, int col) {
    const double piv = T_(row, col);
    T_.row(row) /= piv;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = T_(i, col);
      if (factor != 0.0) T_.row(i) -= factor * T_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
    // Negative round-off on the rhs breaks ratio tests later; clamp it.
    for (int i = 0; i < m_; ++i) {
      if (T_(i, rhs()) < 0.0 && T_(i, rhs()) > -tol_) T_(i, rhs()) = 0.0;
    }
  }

  /// Pivot basic artificials onto structural columns where possible.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(T_(i, j)) > tol_ * 100) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective() const { return -T_(m_, rhs()); }

  Vector solution() const {
    Vector x = Vector::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      const int bi = basis_[static_cast<std::size_t>(i)];
      if (bi < n_) x[bi] = T_(i, rhs());
    }
    return x;
  }

 private:
  int m_, n_;
  double tol_;
  Matrix T_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_equality_lp(const Matrix& A, const Vector& b, const Vector& c,
                           double pivot_tol) {
  if (A.rows() != b.size() || A.cols() != c.size() || A.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "LP dimensions are inconsistent");
  }

  Tableau tab(A, b, pivot_tol);
  tab.set_phase1_objective();
  const LpStatus phase1 = tab.iterate(/*artificials_blocked=*/false);
  if (phase1 == LpStatus::failed) {
    return {LpStatus::failed, 0.0, {}};
  }
  const double feas_tol = 1e-9 * (1.0 + b.cwiseAbs().maxCoeff());
  if (tab.objective() > feas_tol) {
    return {LpStatus::infeasible, 0.0, {}};
  }
  tab.expel_artificials();

  tab.set_phase2_objective(c);
  const LpStatus phase2 = tab.iterate(/*artificials_blocked=*/true);
  if (phase2 != LpStatus::optimal) {
    return {phase2, 0.0, {}};
  }
  LpResult result;
  result.status = LpStatus::optimal;
  result.solution = tab.solution();
  result.value = c.dot(result.solution);
  return result;
}

}  // namespace ssdkit
