#include "gffpielm/lstsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <lapacke.h>

#include "gffpielm/error.hpp"

namespace gffpielm {

double default_rcond(Eigen::Index rows, Eigen::Index cols) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * 16.0;
}

LstsqSolution solve_least_squares(const Eigen::MatrixXd& H, const Eigen::VectorXd& Y,
                                  const LstsqOptions& options) {
  if (H.rows() == 0 || H.cols() == 0) throw Error("lstsq: empty matrix");
  if (Y.size() != H.rows()) throw Error("lstsq: right-hand side length mismatch");
  if (!H.allFinite() || !Y.allFinite()) throw Error("lstsq: non-finite input");
  if (options.ridge < 0.0 || !std::isfinite(options.ridge)) throw Error("lstsq: invalid ridge");

  const double rcond = options.rcond.value_or(default_rcond(H.rows(), H.cols()));
  if (!(rcond >= 0.0 && rcond < 1.0)) throw Error("lstsq: rcond must lie in [0, 1)");

  // Ridge is realized by appending sqrt(lambda) * I below H.
  const Eigen::Index n = H.cols();
  const Eigen::Index extra = options.ridge > 0.0 ? n : 0;
  const Eigen::Index m = H.rows() + extra;

  Eigen::MatrixXd A(m, n);
  A.topRows(H.rows()) = H;
  if (extra > 0) {
    A.bottomRows(extra).setZero();
    A.bottomRows(extra).diagonal().setConstant(std::sqrt(options.ridge));
  }
  Eigen::VectorXd B = Eigen::VectorXd::Zero(std::max(m, n));
  B.head(H.rows()) = Y;

  std::vector<double> s(std::min(m, n));
  lapack_int rank = 0;
  const lapack_int info =
      LAPACKE_dgelsd(LAPACK_COL_MAJOR, static_cast<lapack_int>(m), static_cast<lapack_int>(n), 1,
                     A.data(), static_cast<lapack_int>(m), B.data(),
                     static_cast<lapack_int>(B.size()), s.data(), rcond, &rank);
  if (info != 0)
    throw Error("lstsq: SVD failed to converge (dgelsd info=" + std::to_string(info) + ")");

  LstsqSolution sol;
  sol.beta = B.head(n);
  sol.effective_rank = static_cast<int>(rank);
  sol.sigma_max = s.empty() ? 0.0 : s.front();
  sol.sigma_min_kept = rank > 0 ? s[rank - 1] : 0.0;
  sol.rcond = rcond;
  sol.residual_norm = (H * sol.beta - Y).norm();
  return sol;
}

}  // namespace gffpielm
