#pragma once

#include <optional>

#include <Eigen/Dense>

namespace gffpielm {

struct LstsqOptions {
  /// Relative singular-value cutoff; default_rcond() when unset.
  std::optional<double> rcond;
  /// Tikhonov weight lambda (solves min |H b - Y|^2 + lambda |b|^2); 0 disables.
  double ridge = 0.0;
};

struct LstsqSolution {
  Eigen::VectorXd beta;
  double residual_norm = 0.0;
  int effective_rank = 0;
  double sigma_max = 0.0;
  double sigma_min_kept = 0.0;
  double rcond = 0.0;
};

/// max(rows, cols) * machine epsilon * 16.
double default_rcond(Eigen::Index rows, Eigen::Index cols);

/// Minimum-norm least-squares solution through a truncated SVD (LAPACK dgelsd):
/// singular values below rcond * sigma_max are treated as zero.
LstsqSolution solve_least_squares(const Eigen::MatrixXd& H, const Eigen::VectorXd& Y,
                                  const LstsqOptions& options = {});

}  // namespace gffpielm
