#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "pmis/image.hpp"
#include "pmis/patch_embed.hpp"

namespace pmis {

// Diagonal regularization schedule. Each matrix M receives
// eps * trace(M) / dim(M) on its diagonal, eps starting at `start` and
// multiplied by `growth` until a Cholesky factorization succeeds.
struct JitterSchedule {
  double start = 1e-8;
  double growth = 10.0;
  double limit = 1e-2;
};

// A covariance block with the regularization that made it factorizable.
struct RegularizedBlock {
  double jitter = 0.0;   // amount added to every diagonal entry
  double log_det = 0.0;  // log det(matrix + jitter * I)
  bool escalated = false;
};

struct CovarianceDecomposition {
  Eigen::MatrixXd joint;          // 2d x 2d, unregularized
  Eigen::MatrixXd marginal_prev;  // top-left d x d block of joint
  Eigen::MatrixXd marginal_curr;  // bottom-right d x d block of joint
  RegularizedBlock joint_reg;
  RegularizedBlock prev_reg;
  RegularizedBlock curr_reg;

  bool degenerate() const {
    return joint_reg.escalated || prev_reg.escalated || curr_reg.escalated;
  }
};

// (1/N) (X - mean)(X - mean)^T over the columns of `samples`.
Eigen::MatrixXd sample_covariance(const Eigen::Ref<const Eigen::MatrixXd>& samples);

// Finds the smallest scheduled jitter that lets `cov` factorize.
// Throws DegenerateInputError when trace(cov) == 0 and NumericalError when
// the schedule is exhausted or the matrix holds non-finite values.
RegularizedBlock regularize(const Eigen::Ref<const Eigen::MatrixXd>& cov,
                            const JitterSchedule& schedule = {});

CovarianceDecomposition covariance(const PatchMatrix& patches, const JitterSchedule& schedule = {});

// Differential entropy in nats of a d-variate Gaussian with covariance `cov`:
// 0.5 * (d * log(2 pi e) + log det cov). The determinant comes from a
// Cholesky factor; if that fails, from symmetric eigenvalues clamped below
// at `eigen_floor`.
double gaussian_entropy(const Eigen::Ref<const Eigen::MatrixXd>& cov, double eigen_floor = 0.0);

// Same formula from a precomputed log-determinant.
double gaussian_entropy_from_log_det(std::size_t dim, double log_det);

struct PmiValue {
  double value = 0.0;  // nats
  double h_prev = 0.0;
  double h_curr = 0.0;
  double h_joint = 0.0;
  bool degenerate = false;  // jitter had to be escalated past the first step
};

PmiValue pmi(const PatchMatrix& patches, const JitterSchedule& schedule = {});
PmiValue pmi(const Image& prev, const Image& curr, const PatchGrid& grid,
             const JitterSchedule& schedule = {});

}  // namespace pmis
