#include "dcatight/spca.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "dcatight/error.hpp"
#include "dcatight/rates_shift.hpp"

namespace dcatight {

Splitting SpcaProblem::splitting(DecreaseCheck check) const {
  return validate_splitting(eta - lambda, ExtReal::infinity(), mu2 - lambda, L2 - lambda, check);
}

SpcaProblem SpcaProblem::with_shift(double new_lambda) const {
  SpcaProblem p = *this;
  p.lambda = new_lambda;
  return p;
}

double SpcaProblem::objective(const Vector& x) const {
  return kappa * x.lpNorm<1>() + 0.5 * eta * x.squaredNorm() - 0.5 * x.dot(sigma * x);
}

Vector spca_conjugate_step(const Vector& y, double kappa, double eta_minus_lambda) {
  if (eta_minus_lambda < 0.0)
    throw Error(ErrorCode::NegativeCurvature, "eta - lambda = " + format_double(eta_minus_lambda) + " < 0");
  Vector s = y.unaryExpr([kappa](double v) {
    const double m = std::abs(v) - kappa;
    return m > 0.0 ? std::copysign(m, v) : 0.0;
  });
  const double denom = std::max(eta_minus_lambda, s.norm());
  if (denom == 0.0) return Vector::Zero(y.size());
  return s / denom;
}

namespace {

double top_eigen(const Eigen::MatrixXd& S, double rel_tol, std::size_t max_iter) {
  const auto n = S.rows();
  // Deterministic start with no special alignment to coordinate axes.
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  v.normalize();
  double theta = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vector w = S * v;
    theta = v.dot(w);
    const double res = (w - theta * v).norm();
    if (res <= rel_tol * std::max(std::abs(theta), 1e-300)) break;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
  }
  return theta;
}

}  // namespace

EigenExtremes eigen_extremes(const Eigen::MatrixXd& S, double rel_tol, std::size_t max_iter) {
  if (S.rows() != S.cols() || S.rows() == 0) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  EigenExtremes out;
  out.max = top_eigen(S, rel_tol, max_iter);
  const Eigen::MatrixXd shifted = out.max * Eigen::MatrixXd::Identity(S.rows(), S.cols()) - S;
  out.min = out.max - top_eigen(shifted, rel_tol, max_iter);
  return out;
}

SpcaProblem build_problem(int n, double density, double kappa, double eta, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  if (!(density > 0.0 && density <= 1.0)) throw Error(ErrorCode::InvalidArgument, "density must be in (0, 1]");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  if (!(eta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be nonnegative");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution nonzero(density);
  std::normal_distribution<double> entry(0.0, 1.0);
  Eigen::MatrixXd A(20 * n, n);
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, j) = nonzero(rng) ? entry(rng) : 0.0;

  Eigen::MatrixXd S = A.transpose() * A;
  S = 0.5 * (S + S.transpose()).eval();
  const double top = top_eigen(S, 1e-12, 1000000);
  if (!(top > 1e-300)) throw Error(ErrorCode::SingularCase, "A'A has no positive eigenvalue");
  S /= top;

  const EigenExtremes ex = eigen_extremes(S);
  SpcaProblem p;
  p.sigma = std::move(S);
  p.kappa = kappa;
  p.eta = eta;
  p.L2 = 1.0;
  p.mu2 = std::clamp(ex.min, 0.0, 1.0);
  if (!(p.mu2 < p.L2)) throw Error(ErrorCode::SingularCase, "covariance has a single eigenvalue (mu2 = L2)");
  return p;
}

Vector spca_initial_subgradient(const SpcaProblem& prob, const Vector& x0) {
  const Vector sgn = x0.unaryExpr([](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); });
  return prob.kappa * sgn + (prob.eta - prob.lambda) * x0;
}

DcOracles spca_oracles(const SpcaProblem& prob) {
  if (prob.lambda > prob.eta)
    throw Error(ErrorCode::NegativeCurvature, "shift exceeds eta, f1 would lose convexity");
  auto shared = std::make_shared<const SpcaProblem>(prob);
  DcOracles o;
  o.subgrad_f2 = [shared](const Vector& x) -> Vector { return shared->sigma * x - shared->lambda * x; };
  o.conj_step_f1 = [shared](const Vector& g) {
    return spca_conjugate_step(g, shared->kappa, shared->eta - shared->lambda);
  };
  o.eval_f1 = [shared](const Vector& x) {
    return shared->kappa * x.lpNorm<1>() + 0.5 * (shared->eta - shared->lambda) * x.squaredNorm();
  };
  o.eval_f2 = [shared](const Vector& x) {
    return 0.5 * x.dot(shared->sigma * x) - 0.5 * shared->lambda * x.squaredNorm();
  };
  o.subgrad_f1 = [shared](const Vector& x) { return spca_initial_subgradient(*shared, x); };
  return o;
}

std::vector<double> default_lambdas(const SpcaProblem& base) {
  const Splitting s = base.with_shift(0.0).splitting();
  const ShiftResult r = optimize_shift(s);
  const double ls = r.lambda_star;
  std::vector<double> out;
  for (double l : {0.0, ls, -0.5 * ls, -ls, 0.5 * ls, r.lambda_max})
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

std::vector<Vector> unit_ball_starts(std::size_t n, std::size_t M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(M);
  for (std::size_t m = 0; m < M; ++m) {
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
    v.normalize();
    out.push_back(v * std::pow(unif(rng), 1.0 / static_cast<double>(n)));
  }
  return out;
}

namespace {

struct RunSummary {
  Vector x_final;
  std::vector<long> first_hit;  // -1 if never reached
  bool converged = false;
  bool monotone = true;
};

RunSummary one_run(const SpcaProblem& prob, const Vector& x0, const ExperimentConfig& cfg) {
  RunOptions opts;
  opts.stop_tol = cfg.stop_residual_sq;
  const DcaTrajectory t = run_dca(spca_oracles(prob), x0, cfg.max_iter, opts);
  RunSummary s;
  s.x_final = t.points.back();
  s.first_hit.assign(cfg.epsilons.size(), -1);
  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    for (std::size_t k = 0; k < t.residual_sq.size(); ++k) {
      if (t.residual_sq[k] <= cfg.epsilons[e]) {
        s.first_hit[e] = static_cast<long>(k);
        break;
      }
    }
  }
  s.converged = std::all_of(s.first_hit.begin(), s.first_hit.end(), [](long k) { return k >= 0; });
  for (std::size_t k = 1; k < t.objective.size(); ++k)
    if (t.objective[k] > t.objective[k - 1] + 1e-9 * (1.0 + std::abs(t.objective[k - 1]))) s.monotone = false;
  return s;
}

struct Cluster {
  std::vector<bool> support;
  Vector centroid;
  std::vector<std::size_t> members;
};

void summarize_lambda(const std::vector<RunSummary>& runs, const ExperimentConfig& cfg, std::size_t li,
                      NEpsilonTable& table) {
  std::vector<Cluster> clusters;
  for (std::size_t m = 0; m < runs.size(); ++m) {
    const RunSummary& r = runs[m];
    if (!r.converged) continue;
    std::vector<bool> support(static_cast<std::size_t>(r.x_final.size()));
    bool any = false;
    for (Eigen::Index i = 0; i < r.x_final.size(); ++i) {
      support[static_cast<std::size_t>(i)] = std::abs(r.x_final[i]) > cfg.support_tol;
      any = any || support[static_cast<std::size_t>(i)];
    }
    if (!any) continue;  // the trivial solution x = 0 is never a reference
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return c.support == support && (c.centroid - r.x_final).norm() <= cfg.cluster_tol;
    });
    if (it == clusters.end()) {
      clusters.push_back({support, r.x_final, {m}});
    } else {
      const double k = static_cast<double>(it->members.size());
      it->centroid = (it->centroid * k + r.x_final) / (k + 1.0);
      it->members.push_back(m);
    }
  }
  const Cluster* best = nullptr;
  for (const Cluster& c : clusters)
    if (!best || c.members.size() > best->members.size()) best = &c;

  const double need = cfg.min_cluster_fraction * static_cast<double>(runs.size());
  if (!best || static_cast<double>(best->members.size()) < need)
    throw Error(ErrorCode::NoConsensusCluster,
                "no nontrivial solution is shared by 20% of runs at lambda = " + format_double(table.lambdas[li]));

  std::vector<double> sums(cfg.epsilons.size(), 0.0);
  bool monotone = true;
  for (std::size_t m : best->members) {
    for (std::size_t e = 0; e < sums.size(); ++e) sums[e] += static_cast<double>(runs[m].first_hit[e]);
    monotone = monotone && runs[m].monotone;
  }
  const double kept = static_cast<double>(best->members.size());
  for (double& v : sums) v /= kept;
  table.counts[li] = std::move(sums);
  table.kept_runs[li] = best->members.size();
  table.support_size[li] = static_cast<std::size_t>(std::count(best->support.begin(), best->support.end(), true));
  table.monotone_on_kept[li] = monotone;
}

void check_config(const SpcaProblem& base, const ExperimentConfig& cfg) {
  if (cfg.M == 0) throw Error(ErrorCode::InvalidArgument, "need at least one start");
  if (cfg.lambdas.empty() || cfg.epsilons.empty())
    throw Error(ErrorCode::InvalidArgument, "lambdas and epsilons must be nonempty");
  // lambda_max itself is allowed: mu1 + mu2 = 0 still gives a nonincreasing objective.
  for (double l : cfg.lambdas) {
    const Splitting s = base.with_shift(l).splitting(DecreaseCheck::Allow);
    if (s.mu1() + s.mu2() < 0.0)
      throw Error(ErrorCode::NoDecreaseGuarantee, "shift " + format_double(l) + " exceeds (eta + mu2) / 2");
  }
}

NEpsilonTable prepare(const ExperimentConfig& cfg) {
  NEpsilonTable t;
  t.epsilons = cfg.epsilons;
  t.lambdas = cfg.lambdas;
  t.counts.resize(cfg.lambdas.size());
  t.kept_runs.resize(cfg.lambdas.size());
  t.support_size.resize(cfg.lambdas.size());
  t.monotone_on_kept.resize(cfg.lambdas.size());
  t.total_runs = cfg.M;
  return t;
}

}  // namespace

NEpsilonTable run_experiment(const SpcaProblem& base, const ExperimentConfig& cfg) {
  check_config(base, cfg);
  const std::vector<Vector> starts = unit_ball_starts(static_cast<std::size_t>(base.sigma.rows()), cfg.M, cfg.seed);
  const std::size_t L = cfg.lambdas.size();
  std::vector<RunSummary> runs(L * cfg.M);
  const auto jobs = static_cast<std::ptrdiff_t>(runs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < jobs; ++j) {
    const auto u = static_cast<std::size_t>(j);
    runs[u] = one_run(base.with_shift(cfg.lambdas[u / cfg.M]), starts[u % cfg.M], cfg);
  }

  NEpsilonTable table = prepare(cfg);
  for (std::size_t li = 0; li < L; ++li) {
    const std::vector<RunSummary> slice(runs.begin() + static_cast<std::ptrdiff_t>(li * cfg.M),
                                        runs.begin() + static_cast<std::ptrdiff_t>((li + 1) * cfg.M));
    summarize_lambda(slice, cfg, li, table);
  }
  return table;
}

NEpsilonTable run_experiment_serial(const SpcaProblem& base, const ExperimentConfig& cfg) {
  check_config(base, cfg);
  const std::vector<Vector> starts = unit_ball_starts(static_cast<std::size_t>(base.sigma.rows()), cfg.M, cfg.seed);
  NEpsilonTable table = prepare(cfg);
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    std::vector<RunSummary> slice;
    slice.reserve(cfg.M);
    for (const Vector& x0 : starts) slice.push_back(one_run(base.with_shift(cfg.lambdas[li]), x0, cfg));
    summarize_lambda(slice, cfg, li, table);
  }
  return table;
}

}  // namespace dcatight
