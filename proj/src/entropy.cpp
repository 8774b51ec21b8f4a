#include "pmis/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "pmis/error.hpp"

namespace pmis {
namespace {

const double kLog2PiE = std::log(2.0 * std::numbers::pi * std::numbers::e);

// log det from a successful Cholesky factor.
double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

Eigen::MatrixXd sample_covariance(const Eigen::Ref<const Eigen::MatrixXd>& samples) {
  const auto n = samples.cols();
  if (n < 2) throw ConfigError("covariance needs at least 2 samples");
  const Eigen::VectorXd mean = samples.rowwise().mean();
  Eigen::MatrixXd centered = samples.colwise() - mean;
  // A constant row must have exactly zero variance; the rounded mean can leave
  // residues of order 1e-17 that would otherwise pass as signal.
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    if (samples.row(i).maxCoeff() == samples.row(i).minCoeff()) centered.row(i).setZero();
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(samples.rows(), samples.rows());
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / static_cast<double>(n));
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return cov;
}

RegularizedBlock regularize(const Eigen::Ref<const Eigen::MatrixXd>& cov,
                            const JitterSchedule& schedule) {
  if (!cov.allFinite()) throw NumericalError("covariance has non-finite entries");
  const double trace = cov.trace();
  if (trace <= 0.0) {
    throw DegenerateInputError("zero-variance input: every patch vector is identical");
  }
  const double unit = trace / static_cast<double>(cov.rows());
  Eigen::MatrixXd work;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (double eps = schedule.start; eps <= schedule.limit * (1.0 + 1e-12); eps *= schedule.growth) {
    const double jitter = eps * unit;
    work = cov;
    work.diagonal().array() += jitter;
    llt.compute(work);
    if (llt.info() == Eigen::Success) {
      const double log_det = log_det_from_llt(llt);
      if (std::isfinite(log_det)) {
        return RegularizedBlock{jitter, log_det, eps > schedule.start * (1.0 + 1e-12)};
      }
    }
  }
  throw NumericalError("covariance is not positive definite even with jitter " +
                       std::to_string(schedule.limit) + " x trace/dim");
}

CovarianceDecomposition covariance(const PatchMatrix& patches, const JitterSchedule& schedule) {
  const auto d = static_cast<Eigen::Index>(patches.grid.dim());
  if (patches.data.rows() != 2 * d) {
    throw ConfigError("patch matrix has " + std::to_string(patches.data.rows()) +
                      " rows, expected " + std::to_string(2 * d));
  }
  CovarianceDecomposition out;
  out.joint = sample_covariance(patches.data);
  out.marginal_prev = out.joint.topLeftCorner(d, d);
  out.marginal_curr = out.joint.bottomRightCorner(d, d);
  // Marginals first: a constant frame shows up as a zero-trace block.
  out.prev_reg = regularize(out.marginal_prev, schedule);
  out.curr_reg = regularize(out.marginal_curr, schedule);
  out.joint_reg = regularize(out.joint, schedule);
  return out;
}

double gaussian_entropy_from_log_det(std::size_t dim, double log_det) {
  return 0.5 * (static_cast<double>(dim) * kLog2PiE + log_det);
}

double gaussian_entropy(const Eigen::Ref<const Eigen::MatrixXd>& cov, double eigen_floor) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw ConfigError("covariance must be a nonempty square matrix");
  }
  if (!cov.allFinite()) throw NumericalError("covariance has non-finite entries");
  const auto dim = static_cast<std::size_t>(cov.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) {
    return gaussian_entropy_from_log_det(dim, log_det_from_llt(llt));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  double log_det = 0.0;
  for (double ev : eig.eigenvalues()) {
    const double v = std::max(ev, eigen_floor);
    if (v <= 0.0) throw NumericalError("covariance is not positive definite");
    log_det += std::log(v);
  }
  return gaussian_entropy_from_log_det(dim, log_det);
}

PmiValue pmi(const PatchMatrix& patches, const JitterSchedule& schedule) {
  const auto dec = covariance(patches, schedule);
  const std::size_t d = patches.grid.dim();
  PmiValue out;
  out.h_prev = gaussian_entropy_from_log_det(d, dec.prev_reg.log_det);
  out.h_curr = gaussian_entropy_from_log_det(d, dec.curr_reg.log_det);
  out.h_joint = gaussian_entropy_from_log_det(2 * d, dec.joint_reg.log_det);
  // The (2 pi e) terms cancel exactly; combine log-determinants directly.
  out.value = 0.5 * (dec.prev_reg.log_det + dec.curr_reg.log_det - dec.joint_reg.log_det);
  out.degenerate = dec.degenerate();
  return out;
}

PmiValue pmi(const Image& prev, const Image& curr, const PatchGrid& grid,
             const JitterSchedule& schedule) {
  return pmi(embed_pair(prev, curr, grid), schedule);
}

}  // namespace pmis
