#include "admixtope/lp.hpp"

#include <limits>
#include <utility>
#include <vector>

#include "admixtope/error.hpp"

namespace admixtope::lp {

namespace {

constexpr double kEps = 1e-11;

// Dictionary form: row i < m holds basic variable basis[i]; column j <= n holds
// nonbasic variable nonbasic[j] (-1 is the phase-one auxiliary variable).
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basis_(m_),
        nonbasic_(n_ + 1),
        d_(Eigen::MatrixXd::Zero(m_ + 2, n_ + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_(i, j) = A(i, j);
      basis_[i] = n_ + i;
      d_(i, n_) = -1.0;
      d_(i, n_ + 1) = b(i);
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_(m_, j) = -c(j);
    }
    nonbasic_[n_] = -1;
    d_(m_ + 1, n_) = 1.0;
  }

  Solution solve() {
    Solution out;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    if (m_ > 0 && d_(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      if (!run(1) || d_(m_ + 1, n_ + 1) < -1e-9) {
        out.status = Status::Infeasible;
        return out;
      }
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j)
          if (s == -1 || d_(i, j) < d_(i, s) || (d_(i, j) == d_(i, s) && nonbasic_[j] < nonbasic_[s]))
            s = j;
        pivot(i, s);
      }
    }
    if (!run(2)) {
      out.status = Status::Unbounded;
      return out;
    }
    out.status = Status::Optimal;
    out.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < n_) out.x(basis_[i]) = d_(i, n_ + 1);
    out.objective = d_(m_, n_ + 1);
    return out;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double factor = d_(i, s) * inv;
      if (factor == 0.0) continue;
      for (int j = 0; j < n_ + 2; ++j)
        if (j != s) d_(i, j) -= d_(r, j) * factor;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) d_(r, j) *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) d_(i, s) *= -inv;
    d_(r, s) = inv;
    std::swap(basis_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int objective_row = phase == 1 ? m_ + 1 : m_;
    const int max_iterations = 50 * (m_ + n_ + 10);
    for (int iter = 0; iter < max_iterations; ++iter) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (s == -1 || d_(objective_row, j) < d_(objective_row, s) ||
            (d_(objective_row, j) == d_(objective_row, s) && nonbasic_[j] < nonbasic_[s]))
          s = j;
      }
      if (d_(objective_row, s) > -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_(i, s) < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = d_(i, n_ + 1) / d_(i, s);
        const double rhs = d_(r, n_ + 1) / d_(r, s);
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    throw BudgetExceeded("simplex iteration limit reached");
  }

  int m_;
  int n_;
  std::vector<int> basis_;
  std::vector<int> nonbasic_;
  Eigen::MatrixXd d_;
};

}  // namespace

Solution maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  require(A.rows() == b.size() && A.cols() == c.size(), "lp::maximize: inconsistent shapes");
  return Tableau(A, b, c).solve();
}

}  // namespace admixtope::lp
