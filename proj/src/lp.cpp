#include "slopelab/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "slopelab/space.hpp"

namespace slopelab::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double& obj(std::size_t c) { return at(m_, c); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= n_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Bland's rule; columns >= allowed_cols never enter.
  Status iterate(std::size_t allowed_cols, double tol) {
    for (int guard = 0; guard < 100000; ++guard) {
      std::size_t enter = n_;
      for (std::size_t c = 0; c < allowed_cols; ++c) {
        if (obj(c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter == n_) return Status::kOptimal;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, enter);
        if (a <= tol) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best - tol || (std::abs(ratio - best) <= tol && leave < m_ && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == m_) return Status::kUnbounded;
      pivot(leave, enter);
    }
    return Status::kOptimal;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result solve_standard_form(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                           const std::vector<double>& c, double tol) {
  const std::size_t m = b.size();
  const std::size_t n = c.size();
  Tableau tab(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sign * a[r][j];
    tab.at(r, n + r) = 1.0;
    tab.rhs(r) = sign * b[r];
    tab.basis()[r] = n + r;
  }
  // phase 1: minimize the sum of artificials
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab.obj(j) -= tab.at(r, j);
    tab.obj(n + m) -= tab.rhs(r);
  }
  tab.iterate(n + m, tol);
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  Result res;
  if (-tab.obj(n + m) > 1e-9 * scale) {
    res.status = Status::kInfeasible;
    return res;
  }
  // drive artificials out of the basis where possible
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis()[r] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.at(r, j)) > 1e-9) {
        tab.pivot(r, j);
        break;
      }
    }
  }
  // phase 2 objective row
  for (std::size_t j = 0; j <= n + m; ++j) tab.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) tab.obj(j) = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bj = tab.basis()[r];
    const double cb = bj < n ? c[bj] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= n + m; ++j) tab.obj(j) -= cb * tab.at(r, j);
  }
  res.status = tab.iterate(n, tol);
  if (res.status == Status::kUnbounded) return res;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (tab.basis()[r] < n) res.x[tab.basis()[r]] = tab.rhs(r);
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

bool in_convex_hull(const std::vector<std::vector<double>>& points, const std::vector<double>& y, double tol) {
  if (points.empty()) return false;
  const std::size_t dim = y.size();
  const std::size_t k = points.size();
  // Minimize the l1 residual: sum(p+ + p-) s.t. sum l_j p_j + p+ - p- = y, sum l_j = 1.
  std::vector<std::vector<double>> a(dim + 1, std::vector<double>(k + 2 * dim, 0.0));
  std::vector<double> b(dim + 1, 0.0), c(k + 2 * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = points[j][i];
    a[i][k + i] = 1.0;
    a[i][k + dim + i] = -1.0;
    b[i] = y[i];
    c[k + i] = c[k + dim + i] = 1.0;
  }
  for (std::size_t j = 0; j < k; ++j) a[dim][j] = 1.0;
  b[dim] = 1.0;
  const Result r = solve_standard_form(a, b, c);
  return r.status == Status::kOptimal && r.objective <= tol;
}

double min_of_max_affine(const std::vector<std::vector<double>>& g, const std::vector<double>& e) {
  const std::size_t m = g.size();
  if (m == 0) return -kInf;
  const std::size_t n = g[0].size();
  // variables: x+ (n), x- (n), t+, t-, s (m)
  const std::size_t cols = 2 * n + 2 + m;
  std::vector<std::vector<double>> a(m, std::vector<double>(cols, 0.0));
  std::vector<double> b(m), c(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = g[i][j];
      a[i][n + j] = -g[i][j];
    }
    a[i][2 * n] = -1.0;
    a[i][2 * n + 1] = 1.0;
    a[i][2 * n + 2 + i] = 1.0;
    b[i] = -e[i];
  }
  c[2 * n] = 1.0;
  c[2 * n + 1] = -1.0;
  const Result r = solve_standard_form(a, b, c);
  if (r.status == Status::kUnbounded) return -kInf;
  return r.objective;
}

}  // namespace slopelab::lp
