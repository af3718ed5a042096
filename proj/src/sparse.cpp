#include "gpr/sparse.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpr {

void SparseSPD::build_pattern(int n, const std::vector<std::vector<int>>& cols) {
  n_ = n;
  rowPtr_.assign(n + 1, 0);
  std::vector<std::vector<int>> sorted(cols);
  for (int r = 0; r < n; ++r) {
    auto& c = sorted[r];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    rowPtr_[r + 1] = rowPtr_[r] + static_cast<int>(c.size());
  }
  colIdx_.resize(rowPtr_[n]);
  for (int r = 0; r < n; ++r)
    std::copy(sorted[r].begin(), sorted[r].end(), colIdx_.begin() + rowPtr_[r]);
  val_.assign(rowPtr_[n], 0.0);
}

void SparseSPD::add(int row, int col, double v) {
  const auto b = colIdx_.begin() + rowPtr_[row], e = colIdx_.begin() + rowPtr_[row + 1];
  const auto it = std::lower_bound(b, e, col);
  if (it == e || *it != col) throw SolverError("SparseSPD::add outside pattern");
  val_[it - colIdx_.begin()] += v;
}

double SparseSPD::get(int row, int col) const {
  const auto b = colIdx_.begin() + rowPtr_[row], e = colIdx_.begin() + rowPtr_[row + 1];
  const auto it = std::lower_bound(b, e, col);
  if (it == e || *it != col) return 0.0;
  return val_[it - colIdx_.begin()];
}

void SparseSPD::apply_dirichlet(const std::vector<int>& rows, const std::vector<double>& values,
                                std::vector<double>& rhs) {
  std::vector<char> mark(n_, 0);
  std::vector<double> bc(n_, 0.0);
  for (size_t i = 0; i < rows.size(); ++i) {
    mark[rows[i]] = 1;
    bc[rows[i]] = values[i];
  }
  for (int r = 0; r < n_; ++r) {
    for (int k = rowPtr_[r]; k < rowPtr_[r + 1]; ++k) {
      const int c = colIdx_[k];
      if (mark[r]) {
        val_[k] = (c == r) ? 1.0 : 0.0;
      } else if (mark[c]) {
        rhs[r] -= val_[k] * bc[c];
        val_[k] = 0.0;
      }
    }
    if (mark[r]) rhs[r] = bc[r];
  }
}

void SparseSPD::matvec(const std::vector<double>& x, std::vector<double>& y) const {
  y.resize(n_);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int r = 0; r < n_; ++r) {
    double s = 0.0;
    for (int k = rowPtr_[r]; k < rowPtr_[r + 1]; ++k) s += val_[k] * x[colIdx_[k]];
    y[r] = s;
  }
}

double SparseSPD::max_asymmetry() const {
  double m = 0.0;
  for (int r = 0; r < n_; ++r)
    for (int k = rowPtr_[r]; k < rowPtr_[r + 1]; ++k)
      m = std::max(m, std::abs(val_[k] - get(colIdx_[k], r)));
  return m;
}

double SparseSPD::max_abs() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, std::abs(v));
  return m;
}

CgResult cg_solve(const SparseSPD& a, const std::vector<double>& rhs, std::vector<double>& x,
                  double tol, int maxiter, bool jacobi) {
  const int n = a.size();
  x.assign(n, 0.0);
  std::vector<double> r = rhs, z(n), p(n), ap(n);
  std::vector<double> dinv;
  if (jacobi) {
    dinv.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
      const double d = a.get(i, i);
      if (d > 0.0) dinv[i] = 1.0 / d;
    }
  }
  auto dotv = [](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  const double rhsNorm = std::sqrt(dotv(rhs, rhs));
  if (rhsNorm == 0.0) return {0, 0.0};

  auto precond = [&](const std::vector<double>& rr, std::vector<double>& zz) {
    zz.resize(n);
    if (jacobi)
      for (int i = 0; i < n; ++i) zz[i] = dinv[i] * rr[i];
    else
      zz = rr;
  };

  precond(r, z);
  p = z;
  double rz = dotv(r, z);
  CgResult res;
  for (int it = 0; it < maxiter; ++it) {
    a.matvec(p, ap);
    const double pap = dotv(p, ap);
    if (pap <= 0.0) throw SolverError("cg_solve: matrix not positive definite");
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    res.iterations = it + 1;
    res.residual = std::sqrt(dotv(r, r)) / rhsNorm;
    if (res.residual <= tol) return res;
    precond(r, z);
    const double rzNew = dotv(r, z);
    const double beta = rzNew / rz;
    rz = rzNew;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverError("cg_solve: no convergence after " + std::to_string(maxiter) +
                    " iterations, residual " + std::to_string(res.residual));
}

}  // namespace gpr
