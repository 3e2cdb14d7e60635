#pragma once

#include <span>
#include <string>
#include <vector>

#include "overlap/dataset.hpp"

namespace overlap {

// Logistic model of sample membership fitted on the stacked experimental and
// target rows. Transport weights are the fitted odds of non-membership.
struct SelectionModel {
  std::vector<std::string> term_names;  // "(intercept)" first, then covariates
  std::vector<double> coef;
  int iterations = 0;
  double grad_norm = 0.0;
  bool user_supplied = false;  // weights came from a column, no model fitted

  // P(S=1 | x) for one covariate row (covariates in term order, no intercept).
  double prob(std::span<const double> x) const;
};

struct WeightVector {
  enum class Normalization { kMeanOne, kHajekByArm };

  std::vector<double> values;  // one per experimental unit, > 0, finite
  Normalization normalization = Normalization::kMeanOne;
  // Units whose fitted membership probability fell below 1e-6; a signal of a
  // near-violation in the observed covariates. Reported, not fatal.
  int extreme_propensity_count = 0;

  std::size_t size() const { return values.size(); }
};

// IRLS fit; deterministic given inputs. Ridge 1e-8 on the Hessian, at most
// 100 iterations, converged when max |coef change| < 1e-8.
SelectionModel fit_selection(const ExperimentalSample& exp,
                             const TargetPopulation& target,
                             const std::vector<std::string>& covariates);

// w_i proportional to P(S=0|X_i)/P(S=1|X_i), normalized to mean one over the
// experimental sample.
WeightVector transport_weights(const SelectionModel& model,
                               const ExperimentalSample& exp);

// Mean-one normalization of weights supplied by the user (scale invariant).
WeightVector normalize_user_weights(const std::vector<double>& raw);

double weighted_mean(std::span<const double> values, std::span<const double> weights);
double weighted_variance(std::span<const double> values,
                         std::span<const double> weights);
double weighted_covariance(std::span<const double> a, std::span<const double> b,
                           std::span<const double> weights);
// Throws CorrOfConstant when either vector has zero weighted variance.
double weighted_correlation(std::span<const double> a, std::span<const double> b,
                            std::span<const double> weights);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};
Moments weighted_moments(std::span<const double> values,
                         std::span<const double> weights);

}  // namespace overlap
