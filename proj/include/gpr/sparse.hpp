#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpr {

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// symmetric sparse matrix in CSR form, assembled from a fixed sparsity pattern
class SparseSPD {
 public:
  void build_pattern(int n, const std::vector<std::vector<int>>& cols);
  void zero() { std::fill(val_.begin(), val_.end(), 0.0); }
  void add(int row, int col, double v);
  double get(int row, int col) const;
  int size() const { return n_; }

  // Dirichlet elimination keeping symmetry: moves column terms to rhs,
  // sets unit diagonal row
  void apply_dirichlet(const std::vector<int>& rows, const std::vector<double>& values,
                       std::vector<double>& rhs);

  void matvec(const std::vector<double>& x, std::vector<double>& y) const;
  double max_asymmetry() const;
  double max_abs() const;

  const std::vector<int>& row_ptr() const { return rowPtr_; }
  const std::vector<int>& col_idx() const { return colIdx_; }
  const std::vector<double>& values() const { return val_; }

 private:
  int n_ = 0;
  std::vector<int> rowPtr_, colIdx_;
  std::vector<double> val_;
};

struct CgResult {
  int iterations = 0;
  double residual = 0.0;  // relative to the rhs norm
};

// plain conjugate gradients, optional Jacobi preconditioning; deterministic
// (serial dot products, fixed-order matvec)
CgResult cg_solve(const SparseSPD& a, const std::vector<double>& rhs, std::vector<double>& x,
                  double tol, int maxiter, bool jacobi = false);

}  // namespace gpr
