#include "overlap/weights.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "overlap/errors.hpp"

namespace overlap {

namespace {

constexpr double kRidge = 1e-8;
constexpr int kMaxIterations = 100;
constexpr double kCoefTolerance = 1e-8;
constexpr double kProbFloor = 1e-10;  // separation watermark on fitted probs
constexpr double kExtremePropensity = 1e-6;

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double SelectionModel::prob(std::span<const double> x) const {
  double z = coef[0];
  for (std::size_t j = 0; j < x.size(); ++j) z += coef[j + 1] * x[j];
  return sigmoid(z);
}

SelectionModel fit_selection(const ExperimentalSample& exp,
                             const TargetPopulation& target,
                             const std::vector<std::string>& covariates) {
  const std::size_t n = exp.size();
  const std::size_t m = target.size();
  if (n == 0 || m == 0)
    throw SchemaMismatch("selection model needs non-empty experimental and target data");
  const std::size_t rows = n + m;
  const std::size_t k = covariates.size() + 1;

  Eigen::MatrixXd X(rows, k);
  Eigen::VectorXd y(rows);
  X.col(0).setOnes();
  for (std::size_t j = 0; j < covariates.size(); ++j) {
    const auto& ce = exp.covariate(covariates[j]);
    const auto& ct = target.covariate(covariates[j]);
    for (std::size_t i = 0; i < n; ++i) X(i, j + 1) = ce[i];
    for (std::size_t i = 0; i < m; ++i) X(n + i, j + 1) = ct[i];
  }
  y.head(n).setOnes();
  y.tail(m).setZero();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd mu(rows), grad(k);
  double prev_grad_norm = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;

  auto update_state = [&](bool& extreme, double& grad_norm) {
    Eigen::VectorXd eta = X * beta;
    extreme = false;
    for (std::size_t i = 0; i < rows; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      mu[ii] = sigmoid(eta[ii]);
      if (mu[ii] < kProbFloor || mu[ii] > 1.0 - kProbFloor) extreme = true;
    }
    grad = X.transpose() * (y - mu);
    grad_norm = grad.lpNorm<Eigen::Infinity>();
  };

  for (iter = 1; iter <= kMaxIterations; ++iter) {
    bool extreme = false;
    double grad_norm = 0.0;
    update_state(extreme, grad_norm);

    // Fitted probabilities pinned at the boundary while the gradient stalls
    // or the coefficients run away: a covariate profile perfectly predicts
    // membership.
    if (extreme) {
      if (iter > 2 && grad_norm > 1e-6 && grad_norm > 0.5 * prev_grad_norm)
        throw SeparationDetected();
      if (beta.lpNorm<Eigen::Infinity>() > 500.0) throw SeparationDetected();
    }
    prev_grad_norm = grad_norm;

    Eigen::VectorXd irls_w = mu.array() * (1.0 - mu.array());
    Eigen::MatrixXd hessian = X.transpose() * irls_w.asDiagonal() * X;
    hessian.diagonal().array() += kRidge;
    Eigen::VectorXd step = hessian.ldlt().solve(grad);
    beta += step;
    if (!beta.allFinite()) throw SeparationDetected();

    if (step.lpNorm<Eigen::Infinity>() < kCoefTolerance) {
      converged = true;
      break;
    }
  }

  bool extreme = false;
  double grad_norm = 0.0;
  update_state(extreme, grad_norm);
  if (extreme && (grad_norm > 1e-3 || beta.lpNorm<Eigen::Infinity>() > 500.0))
    throw SeparationDetected();
  if (!converged) throw NonConvergence(kMaxIterations);

  SelectionModel model;
  model.term_names.reserve(k);
  model.term_names.emplace_back("(intercept)");
  for (const auto& name : covariates) model.term_names.push_back(name);
  model.coef.assign(beta.data(), beta.data() + k);
  model.iterations = iter;
  model.grad_norm = grad_norm;
  return model;
}

WeightVector transport_weights(const SelectionModel& model,
                               const ExperimentalSample& exp) {
  const std::size_t n = exp.size();
  const std::size_t k = exp.covariate_names.size();
  WeightVector out;
  out.values.resize(n);
  std::vector<double> x(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      x[j] = exp.covariate(exp.covariate_names[j])[i];
    }
    const double p = model.prob(x);
    if (p < kExtremePropensity) ++out.extreme_propensity_count;
    const double w = (1.0 - p) / std::max(p, std::numeric_limits<double>::min());
    if (!std::isfinite(w)) throw SeparationDetected();
    out.values[i] = w;
    sum += w;
  }
  if (sum <= 0.0) throw ZeroWeightSum();
  const double scale = static_cast<double>(n) / sum;
  for (double& w : out.values) w *= scale;
  return out;
}

WeightVector normalize_user_weights(const std::vector<double>& raw) {
  WeightVector out;
  out.values = raw;
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0) || !std::isfinite(raw[i]))
      throw NonFiniteValue("weights", i + 1);
    sum += raw[i];
  }
  if (sum <= 0.0) throw ZeroWeightSum();
  const double scale = static_cast<double>(raw.size()) / sum;
  for (double& w : out.values) w *= scale;
  return out;
}

namespace {

double weight_sum(std::span<const double> weights) {
  double s = 0.0;
  for (double w : weights) s += w;
  if (s <= 0.0) throw ZeroWeightSum();
  return s;
}

}  // namespace

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
  const double s = weight_sum(weights);
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
  return acc / s;
}

double weighted_variance(std::span<const double> values,
                         std::span<const double> weights) {
  const double s = weight_sum(weights);
  const double m = weighted_mean(values, weights);
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - m;
    acc += weights[i] * d * d;
  }
  return acc / s;
}

double weighted_covariance(std::span<const double> a, std::span<const double> b,
                           std::span<const double> weights) {
  const double s = weight_sum(weights);
  const double ma = weighted_mean(a, weights);
  const double mb = weighted_mean(b, weights);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += weights[i] * (a[i] - ma) * (b[i] - mb);
  }
  return acc / s;
}

double weighted_correlation(std::span<const double> a, std::span<const double> b,
                            std::span<const double> weights) {
  const double va = weighted_variance(a, weights);
  const double vb = weighted_variance(b, weights);
  if (va == 0.0 || vb == 0.0) throw CorrOfConstant();
  return weighted_covariance(a, b, weights) / std::sqrt(va * vb);
}

Moments weighted_moments(std::span<const double> values,
                         std::span<const double> weights) {
  return Moments{weighted_mean(values, weights), weighted_variance(values, weights)};
}

}  // namespace overlap
