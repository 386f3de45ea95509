// Exact Gaussian process regression with the squared-exponential kernel
//
//   k(xi, xj) = sigma_f^2 exp(-|xi - xj|^2 / (2 l^2))
//
// trained by maximizing the log marginal likelihood over the log
// hyperparameters (l, sigma_f, sigma_n) with multi-restart L-BFGS. The
// noise enters the Gram matrix as sigma_n^2 I. Training factorizes
// K + sigma_n^2 I once (Cholesky); predictions reuse the factor and the
// precomputed weight vector alpha without refactorizing.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gppopf/optim.hpp"

namespace gppopf {

struct Hyperparameters {
  double l = 1.0;        // isotropic characteristic length
  double sigma_f = 1.0;  // scaling factor
  double sigma_n = 1e-2; // noise standard deviation

  bool valid() const { return l > 0.0 && sigma_f > 0.0 && sigma_n >= 0.0; }
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

struct GpModel {
  Hyperparameters hp;       // in standardized units
  Eigen::MatrixXd x_train;  // N x n, standardized
  Eigen::VectorXd alpha;    // (K + sigma_n^2 I)^-1 y, standardized
  Eigen::MatrixXd chol;     // lower Cholesky factor of K + sigma_n^2 I
  Eigen::VectorXd x_mean, x_std;  // per-dimension input standardization
  double y_mean = 0.0, y_std = 1.0;
  double lml = 0.0;         // achieved log marginal likelihood
  double jitter = 0.0;      // diagonal jitter applied for factorization
  bool constant = false;    // degenerate target: predict y_mean everywhere
  std::string warning;

  Eigen::Index dim() const { return x_mean.size(); }
  Eigen::Index train_size() const { return x_train.rows(); }
};

// SE covariance between two points.
double kernel(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
              const Hyperparameters& hp);

struct LmlResult {
  double value = 0.0;
  Eigen::Vector3d grad_log;  // d value / d (log l, log sigma_f, log sigma_n)
};

// Log marginal likelihood of y under the SE prior, with its analytic
// gradient in log-hyperparameter space. Throws std::runtime_error when the
// Gram matrix stays indefinite after the jitter escalation ladder.
LmlResult log_marginal_likelihood(const Eigen::MatrixXd& x_train,
                                  const Eigen::VectorXd& y_train,
                                  const Hyperparameters& hp);

struct FitOptions {
  int restarts = 5;
  std::uint64_t seed = 0;
  double sigma_n_floor = 1e-6;  // standardized units
  LbfgsOptions lbfgs;
  // log-uniform restart draw boxes (standardized units)
  double l_lo = 0.1, l_hi = 10.0;
  double sf_lo = 0.1, sf_hi = 10.0;
  double sn_lo = 1e-4, sn_hi = 1e-1;
};

// Standardizes inputs per-dimension and the target to zero mean / unit
// variance, optimizes the hyperparameters and stores alpha and the Cholesky
// factor. A zero-variance target yields a constant model with a warning.
GpModel fit(const Eigen::MatrixXd& x_train, const Eigen::VectorXd& y_train,
            const FitOptions& opts = {});

Prediction predict(const GpModel& model, const Eigen::VectorXd& x_star);

// Row-wise predict. Identical code path per row, so results match predict
// bit for bit; the stored factorization is reused, never recomputed.
std::vector<Prediction> predict_batch(const GpModel& model,
                                      const Eigen::MatrixXd& x_stars);

// Lossless JSON round-trip (hex-float encoding). The Cholesky factor is
// recomputed on load from the stored inputs and hyperparameters.
std::string model_to_json(const GpModel& model);
GpModel model_from_json(const std::string& json_text);

}  // namespace gppopf
