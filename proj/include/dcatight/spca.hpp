#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dcatight/dca_engine.hpp"

namespace dcatight {

// F(x) = kappa ||x||_1 + eta ||x||^2 / 2 - x' Sigma x / 2 over the unit ball, split as
// f1 = kappa ||.||_1 + (eta - lambda) ||.||^2/2 + ball indicator, f2 = x' Sigma x / 2 - lambda ||x||^2 / 2.
struct SpcaProblem {
  Eigen::MatrixXd sigma;
  double kappa = 0.02;
  double eta = 0.5;
  double mu2 = 0.0;  // min eigenvalue of sigma
  double L2 = 1.0;   // max eigenvalue of sigma
  double lambda = 0.0;

  Splitting splitting(DecreaseCheck check = DecreaseCheck::Enforce) const;  // shifted by lambda
  SpcaProblem with_shift(double new_lambda) const;
  double objective(const Vector& x) const;
};

Vector spca_conjugate_step(const Vector& y, double kappa, double eta_minus_lambda);

struct EigenExtremes {
  double min = 0.0;
  double max = 0.0;
};

// Power iteration for the top eigenvalue, then on max I - S for the bottom one.
EigenExtremes eigen_extremes(const Eigen::MatrixXd& S, double rel_tol = 1e-10, std::size_t max_iter = 1000000);

// A is 20n x n; each entry is nonzero with probability `density` and then standard normal.
SpcaProblem build_problem(int n, double density, double kappa, double eta, std::uint64_t seed);

DcOracles spca_oracles(const SpcaProblem& prob);
Vector spca_initial_subgradient(const SpcaProblem& prob, const Vector& x0);

struct ExperimentConfig {
  std::vector<double> lambdas;
  std::size_t M = 50;
  std::vector<double> epsilons{1e-2, 1e-4, 1e-6, 1e-8};
  std::size_t max_iter = 5000;
  std::uint64_t seed = 1;
  double stop_residual_sq = 1e-24;
  double support_tol = 1e-8;
  double cluster_tol = 1e-6;
  double min_cluster_fraction = 0.2;
};

struct NEpsilonTable {
  std::vector<double> epsilons;
  std::vector<double> lambdas;
  std::vector<std::vector<double>> counts;  // [lambda][epsilon]
  std::vector<std::size_t> kept_runs;
  std::vector<std::size_t> support_size;
  std::vector<bool> monotone_on_kept;
  std::size_t total_runs = 0;
};

// {0, lambda*, -lambda*/2, -lambda*, lambda*/2, lambda_max} without duplicates.
std::vector<double> default_lambdas(const SpcaProblem& base);

// Starts drawn uniformly from the unit ball.
std::vector<Vector> unit_ball_starts(std::size_t n, std::size_t M, std::uint64_t seed);

NEpsilonTable run_experiment(const SpcaProblem& base, const ExperimentConfig& cfg);
NEpsilonTable run_experiment_serial(const SpcaProblem& base, const ExperimentConfig& cfg);

}  // namespace dcatight
