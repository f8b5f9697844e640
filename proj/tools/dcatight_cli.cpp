#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dcatight/error.hpp"
#include "dcatight/io.hpp"

using namespace dcatight;

namespace {

struct Output {
  std::string format = "human";
  std::string path;
};

struct Rendered {
  Json json;
  std::string csv;
  std::string human;
};

void add_output_options(CLI::App* sub, Output& out) {
  sub->add_option("--output", out.format, "json, csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  sub->add_option("--out", out.path, "write to this file instead of stdout");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  f << text;
}

void emit(const Output& out, const Rendered& r) {
  if (out.format == "json") write_text(out.path, dump(r.json));
  else if (out.format == "csv") write_text(out.path, r.csv);
  else write_text(out.path, r.human);
}

double parse_real(const std::string& text, const char* name) {
  const ExtReal v = parse_ext_real(text);
  if (v.is_inf()) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
  return v.value();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(parse_real(item, "list entry"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt(double v) { return format_double(v); }

struct SplitArgs {
  std::string mu1, L1, mu2, L2;
};

void add_split_options(CLI::App* sub, SplitArgs& a) {
  sub->add_option("--mu1", a.mu1, "lower curvature of f1")->required();
  sub->add_option("--L1", a.L1, "upper curvature of f1 (number or inf)")->required();
  sub->add_option("--mu2", a.mu2, "lower curvature of f2")->required();
  sub->add_option("--L2", a.L2, "upper curvature of f2 (number or inf)")->required();
}

Splitting make_split(const SplitArgs& a, DecreaseCheck check = DecreaseCheck::Enforce) {
  return validate_splitting(parse_real(a.mu1, "mu1"), parse_ext_real(a.L1), parse_real(a.mu2, "mu2"),
                            parse_ext_real(a.L2), check);
}

std::vector<std::pair<std::string, std::string>> split_rows(const Splitting& s) {
  return {{"mu1", fmt(s.mu1())}, {"L1", format_ext_real(s.L1())}, {"mu2", fmt(s.mu2())}, {"L2", format_ext_real(s.L2())}};
}

Rendered render_classify(const Splitting& s, const RegimeReport& r) {
  Rendered out;
  out.json = classify_document(s, r);
  const std::string e = r.E ? fmt(*r.E) : "not_applicable";
  out.csv = "mu1,L1,mu2,L2,regime,sigma,sigma_plus,p,B,E,description,concave_unbounded\n";
  out.csv += fmt(s.mu1()) + ',' + format_ext_real(s.L1()) + ',' + fmt(s.mu2()) + ',' + format_ext_real(s.L2()) + ',' +
             std::string(to_string(r.regime)) + ',' + fmt(r.sigma) + ',' + fmt(r.sigma_plus) + ',' + fmt(r.p) + ',' +
             fmt(r.B) + ',' + e + ',' + csv_field(r.description) + ',' + (r.concave_unbounded ? "true" : "false") +
             '\n';
  auto rows = split_rows(s);
  rows.insert(rows.end(), {{"regime", std::string(to_string(r.regime))},
                           {"sigma", fmt(r.sigma)},
                           {"sigma_plus", fmt(r.sigma_plus)},
                           {"p", fmt(r.p)},
                           {"B", fmt(r.B)},
                           {"E", e},
                           {"description", r.description}});
  if (r.concave_unbounded) rows.emplace_back("warning", "F is concave and unbounded below");
  out.human = human_table(rows);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight one-step and N-step analysis of the difference-of-convex algorithm"};
  app.require_subcommand(1);

  // classify
  Output classify_out;
  SplitArgs classify_args;
  double classify_tol = 0.0;
  auto* classify_cmd = app.add_subcommand("classify", "regime and one-step decrease coefficients");
  add_split_options(classify_cmd, classify_args);
  classify_cmd->add_option("--tol", classify_tol, "widen regime boundaries by this amount")->capture_default_str();
  add_output_options(classify_cmd, classify_out);

  // rate
  Output rate_out;
  SplitArgs rate_args;
  long rate_N = 1;
  double rate_delta = 1.0;
  std::optional<double> rate_flo;
  auto* rate_cmd = app.add_subcommand("rate", "sublinear rate bound after N iterations");
  add_split_options(rate_cmd, rate_args);
  rate_cmd->add_option("--N", rate_N, "number of iterations")->required();
  rate_cmd->add_option("--delta-f", rate_delta, "F(x0) - F(xN)")->capture_default_str();
  rate_cmd->add_option("--flo-gap", rate_flo, "F(x0) - inf F");
  add_output_options(rate_cmd, rate_out);

  // shift
  Output shift_out;
  SplitArgs shift_args;
  std::optional<double> shift_lo, shift_hi;
  std::size_t shift_grid = 4096;
  double shift_tol = 1e-10;
  std::string shift_profile;
  auto* shift_cmd = app.add_subcommand("shift", "optimal curvature shift");
  add_split_options(shift_cmd, shift_args);
  shift_cmd->add_option("--lambda-lo", shift_lo, "left end of the search range");
  shift_cmd->add_option("--lambda-hi", shift_hi, "cap on the right end of the search range");
  shift_cmd->add_option("--grid", shift_grid, "grid points before refinement")->capture_default_str();
  shift_cmd->add_option("--tol", shift_tol, "refinement tolerance in lambda")->capture_default_str();
  shift_cmd->add_option("--profile", shift_profile, "write the lambda,p,regime curve as CSV to this file");
  add_output_options(shift_cmd, shift_out);

  // contour
  Output contour_out;
  std::string contour_mu1, contour_L1;
  double mu2_lo = 0, mu2_hi = 0, L2_lo = 0, L2_hi = 0, contour_tol = 0;
  std::size_t mu2_n = 0, L2_n = 0;
  auto* contour_cmd = app.add_subcommand("contour", "regime map over a (mu2, L2) grid");
  contour_cmd->add_option("--mu1", contour_mu1)->required();
  contour_cmd->add_option("--L1", contour_L1)->required();
  contour_cmd->add_option("--mu2-lo", mu2_lo)->required();
  contour_cmd->add_option("--mu2-hi", mu2_hi)->required();
  contour_cmd->add_option("--mu2-n", mu2_n)->required();
  contour_cmd->add_option("--L2-lo", L2_lo)->required();
  contour_cmd->add_option("--L2-hi", L2_hi)->required();
  contour_cmd->add_option("--L2-n", L2_n)->required();
  contour_cmd->add_option("--tol", contour_tol)->capture_default_str();
  add_output_options(contour_cmd, contour_out);

  // worstcase
  Output wc_out;
  SplitArgs wc_args;
  std::string wc_regime, wc_dump;
  double wc_delta = 1.0;
  std::size_t wc_N = 1;
  WorstCaseAnchors wc_anchors;
  auto* wc_cmd = app.add_subcommand("worstcase", "exact worst-case instance for p1 or p2 and its DCA run");
  wc_cmd->add_option("--regime", wc_regime)->required()->check(CLI::IsMember({"p1", "p2"}));
  add_split_options(wc_cmd, wc_args);
  wc_cmd->add_option("--delta", wc_delta, "f1(x0) - f2(x0)")->capture_default_str();
  wc_cmd->add_option("--N", wc_N, "iterations")->capture_default_str();
  wc_cmd->add_option("--x0", wc_anchors.x0)->capture_default_str();
  wc_cmd->add_option("--f2-0", wc_anchors.f2_0)->capture_default_str();
  wc_cmd->add_option("--g0", wc_anchors.g0, "g2(x0) for p1, g1(x0) for p2")->capture_default_str();
  wc_cmd->add_option("--dump", wc_dump, "write the piecewise-quadratic functions as JSON to this file");
  add_output_options(wc_cmd, wc_out);

  // pgd-map
  Output map_out;
  double map_L = 1, map_mu = 0, map_mu_h = 0;
  std::string map_L_h = "inf";
  std::optional<double> map_glo, map_ghi;
  std::size_t map_n = 20;
  auto* map_cmd = app.add_subcommand("pgd-map", "DCA curvatures and regimes along a PGD stepsize sweep");
  map_cmd->add_option("--L-phi", map_L)->required();
  map_cmd->add_option("--mu-phi", map_mu)->required();
  map_cmd->add_option("--mu-h", map_mu_h)->capture_default_str();
  map_cmd->add_option("--L-h", map_L_h)->capture_default_str();
  map_cmd->add_option("--gamma-lo", map_glo, "default 2/(L_phi (n+1))");
  map_cmd->add_option("--gamma-hi", map_ghi, "default 2n/(L_phi (n+1))");
  map_cmd->add_option("--n", map_n)->capture_default_str();
  add_output_options(map_cmd, map_out);

  // pgd-sigma
  Output sig_out;
  double sig_L = 1, sig_mu = 0, sig_gamma = 1;
  auto* sig_cmd = app.add_subcommand("pgd-sigma", "closed-form PGD one-step coefficient");
  sig_cmd->add_option("--L-phi", sig_L)->required();
  sig_cmd->add_option("--mu-phi", sig_mu)->required();
  sig_cmd->add_option("--gamma", sig_gamma)->required();
  add_output_options(sig_cmd, sig_out);

  // pgd-run
  Output run_out;
  double run_a = 1, run_c = 0, run_kappa = 0, run_gamma = 1;
  std::string run_x0 = "1";
  std::size_t run_N = 10;
  auto* run_cmd = app.add_subcommand(
      "pgd-run", "PGD on a/2 ||x||^2 + c sum(x) + kappa ||x||_1, checked against its DCA form");
  run_cmd->add_option("--a", run_a)->capture_default_str();
  run_cmd->add_option("--c", run_c)->capture_default_str();
  run_cmd->add_option("--kappa", run_kappa)->capture_default_str();
  run_cmd->add_option("--gamma", run_gamma)->required();
  run_cmd->add_option("--x0", run_x0, "comma-separated starting point")->capture_default_str();
  run_cmd->add_option("--N", run_N)->capture_default_str();
  add_output_options(run_cmd, run_out);

  // spca
  Output spca_out;
  std::string spca_config, spca_lambdas, spca_eps;
  int spca_n = 50;
  double spca_density = 0.1, spca_kappa = 0.02, spca_eta = 0.5;
  std::size_t spca_M = 50, spca_iter = 5000;
  std::optional<std::uint64_t> spca_seed;
  auto* spca_cmd = app.add_subcommand("spca", "sparse PCA curvature-shift experiment");
  spca_cmd->add_option("--config", spca_config, "JSON file with any of the flags below");
  spca_cmd->add_option("--n", spca_n)->capture_default_str();
  spca_cmd->add_option("--density", spca_density)->capture_default_str();
  spca_cmd->add_option("--kappa", spca_kappa)->capture_default_str();
  spca_cmd->add_option("--eta", spca_eta)->capture_default_str();
  spca_cmd->add_option("--M", spca_M, "random starts")->capture_default_str();
  spca_cmd->add_option("--max-iter", spca_iter)->capture_default_str();
  spca_cmd->add_option("--lambdas", spca_lambdas, "comma-separated shifts (default: 0, +-l*, +-l*/2, l_max)");
  spca_cmd->add_option("--epsilons", spca_eps, "comma-separated accuracies (default 1e-2,1e-4,1e-6,1e-8)");
  spca_cmd->add_option("--seed", spca_seed);
  add_output_options(spca_cmd, spca_out);

  // verify
  Output ver_out;
  std::string ver_suite = "all";
  std::size_t ver_samples = 1000;
  std::optional<std::uint64_t> ver_seed;
  auto* ver_cmd = app.add_subcommand("verify", "randomized property suites");
  ver_cmd->add_option("--suite", ver_suite)
      ->check(CLI::IsMember({"bounds", "boundaries", "swap", "pgd-equiv", "all"}))
      ->capture_default_str();
  ver_cmd->add_option("--samples", ver_samples)->capture_default_str();
  ver_cmd->add_option("--seed", ver_seed);
  add_output_options(ver_cmd, ver_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify_cmd->parsed()) {
      const Splitting s = make_split(classify_args, DecreaseCheck::Allow);
      emit(classify_out, render_classify(s, classify(s, classify_tol)));
      return 0;
    }

    if (rate_cmd->parsed()) {
      const Splitting s = make_split(rate_args, DecreaseCheck::Allow);
      const RateBound r = rate_bound(s, rate_N, rate_delta, rate_flo);
      Rendered out;
      out.json = to_json(r);
      const std::string flo = r.bound_flo ? fmt(*r.bound_flo) : "not_applicable";
      out.csv = "p,N,bound_simple,bound_flo\n" + fmt(r.p) + ',' + std::to_string(r.N) + ',' + fmt(r.bound_simple) +
                ',' + flo + '\n';
      auto rows = split_rows(s);
      rows.insert(rows.end(), {{"p", fmt(r.p)},
                               {"N", std::to_string(r.N)},
                               {"bound_simple", fmt(r.bound_simple)},
                               {"bound_flo", flo}});
      out.human = human_table(rows);
      emit(rate_out, out);
      return 0;
    }

    if (shift_cmd->parsed()) {
      const Splitting s = make_split(shift_args, DecreaseCheck::Allow);
      ShiftSearch search;
      search.lambda_lo = shift_lo;
      search.lambda_hi = shift_hi;
      search.grid_points = shift_grid;
      search.refine_tol = shift_tol;
      search.keep_profile = !shift_profile.empty();
      ShiftResult r = optimize_shift(s, search);
      if (!shift_profile.empty()) write_text(shift_profile, profile_csv(r.profile));
      r.profile.clear();
      Rendered out;
      out.json = to_json(r);
      out.csv = "lambda_star,p_star,regime_at_star,lambda_max\n" + fmt(r.lambda_star) + ',' + fmt(r.p_star) + ',' +
                std::string(to_string(r.regime_at_star)) + ',' + fmt(r.lambda_max) + '\n';
      auto rows = split_rows(s);
      rows.insert(rows.end(), {{"lambda_star", fmt(r.lambda_star)},
                               {"p_star", fmt(r.p_star)},
                               {"regime_at_star", std::string(to_string(r.regime_at_star))},
                               {"lambda_max", fmt(r.lambda_max)},
                               {"search", "[" + fmt(r.interval.lo) + ", " + fmt(r.interval.hi) +
                                              (r.interval.hi_included ? "]" : ")")}});
      for (const auto& t : r.transitions)
        rows.emplace_back("transition", std::string(to_string(t.from)) + " -> " + std::string(to_string(t.to)) +
                                            " in [" + fmt(t.lambda_left) + ", " + fmt(t.lambda_right) + "]");
      out.human = human_table(rows);
      emit(shift_out, out);
      return 0;
    }

    if (contour_cmd->parsed()) {
      const auto cells = contour_grid(parse_real(contour_mu1, "mu1"), parse_ext_real(contour_L1),
                                      GridAxis{mu2_lo, mu2_hi, mu2_n}, GridAxis{L2_lo, L2_hi, L2_n}, contour_tol);
      Rendered out;
      out.json = contour_to_json(cells);
      out.csv = contour_csv(cells);
      std::vector<std::vector<std::string>> rows{{"mu2", "L2", "regime", "p", "sigma", "sigma_plus"}};
      for (const auto& c : cells) {
        if (c.regime)
          rows.push_back({fmt(c.mu2), fmt(c.L2), std::string(to_string(*c.regime)), fmt(c.p), fmt(c.sigma),
                          fmt(c.sigma_plus)});
        else
          rows.push_back({fmt(c.mu2), fmt(c.L2), "infeasible", "-", "-", "-"});
      }
      out.human = human_columns(rows);
      emit(contour_out, out);
      return 0;
    }

    if (wc_cmd->parsed()) {
      const Splitting s = make_split(wc_args);
      const WorstCaseInstance inst = wc_regime == "p1" ? instance_p1(s, wc_delta, wc_N, wc_anchors)
                                                       : instance_p2(s, wc_delta, wc_N, wc_anchors);
      const DcaTrajectory t = run_dca(as_oracles(inst), Vector::Constant(1, inst.x_iters[0]), inst.N);
      const double predicted = inst.delta / (inst.p * static_cast<double>(inst.N));
      const double achieved = 0.5 * t.min_residual_sq.back();
      double step_slack = 0.0, iterate_err = 0.0;
      double rmin = kInf, rmax = 0.0;
      for (std::size_t k = 0; k + 1 < t.objective.size(); ++k) {
        const StepCheck c = check_one_step(s, t.objective[k], t.objective[k + 1], t.residual_sq[k],
                                           t.residual_sq[k + 1], default_tolerance(t.objective[k]));
        step_slack = std::max(step_slack, std::abs(c.slack));
      }
      for (std::size_t k = 0; k < t.points.size(); ++k) {
        iterate_err = std::max(iterate_err, std::abs(t.points[k][0] - inst.x_iters[k]));
        rmin = std::min(rmin, std::sqrt(t.residual_sq[k]));
        rmax = std::max(rmax, std::sqrt(t.residual_sq[k]));
      }
      if (!wc_dump.empty()) {
        Json d;
        d["regime"] = wc_regime;
        d["splitting"] = to_json(s);
        d["f1"] = to_json(inst.f1);
        d["f2"] = to_json(inst.f2);
        Json xs = Json::array(), xb = Json::array();
        for (double x : inst.x_iters) xs.push_back(number_to_json(x));
        for (double x : inst.xbar) xb.push_back(number_to_json(x));
        d["x_iters"] = xs;
        d["xbar"] = xb;
        write_text(wc_dump, dump(d));
      }
      Rendered out;
      out.json = Json{{"regime", wc_regime},
                      {"p", number_to_json(inst.p)},
                      {"n", inst.N},
                      {"delta", number_to_json(inst.delta)},
                      {"u", number_to_json(inst.U)},
                      {"predicted_wc", number_to_json(predicted)},
                      {"achieved_wc", number_to_json(achieved)},
                      {"max_step_slack", number_to_json(step_slack)},
                      {"residual_norm_spread", number_to_json(rmax - rmin)},
                      {"max_iterate_error", number_to_json(iterate_err)},
                      {"trajectory", to_json(t)}};
      out.csv = trajectory_csv(t);
      auto rows = split_rows(s);
      rows.insert(rows.end(), {{"regime", wc_regime},
                               {"p", fmt(inst.p)},
                               {"N", std::to_string(inst.N)},
                               {"delta", fmt(inst.delta)},
                               {"predicted_wc", fmt(predicted)},
                               {"achieved_wc", fmt(achieved)},
                               {"max_step_slack", fmt(step_slack)},
                               {"residual_norm_spread", fmt(rmax - rmin)},
                               {"max_iterate_error", fmt(iterate_err)}});
      out.human = human_table(rows);
      emit(wc_out, out);
      return 0;
    }

    if (map_cmd->parsed()) {
      if (map_n == 0) throw Error(ErrorCode::EmptyGrid, "need at least one stepsize");
      const double n1 = static_cast<double>(map_n + 1);
      const double lo = map_glo.value_or(2.0 / (map_L * n1));
      const double hi = map_ghi.value_or(2.0 * static_cast<double>(map_n) / (map_L * n1));
      const GridAxis axis{lo, hi, map_n};
      Json arr = Json::array();
      std::string csv = "gamma,mu2,L2,regime,sigma_plus,table_cell\n";
      std::vector<std::vector<std::string>> rows{{"gamma", "mu2", "L2", "regime", "sigma_plus", "table_cell"}};
      for (std::size_t i = 0; i < axis.n; ++i) {
        const PgdSetting p{map_L, map_mu, map_mu_h, parse_ext_real(map_L_h), axis.at(i)};
        const Splitting s = pgd_to_dca(p);
        const RegimeReport r = classify(s);
        const bool plain = map_mu_h == 0.0 && p.L_h.is_inf();
        const std::string cell = plain ? std::string(to_string(stepsize_cell(p))) : "not_applicable";
        arr.push_back({{"gamma", number_to_json(p.gamma)},
                       {"mu2", number_to_json(s.mu2())},
                       {"l2", number_to_json(s.L2().value())},
                       {"regime", to_string(r.regime)},
                       {"sigma_plus", number_to_json(r.sigma_plus)},
                       {"table_cell", cell}});
        std::vector<std::string> row{fmt(p.gamma), fmt(s.mu2()), format_ext_real(s.L2()),
                                     std::string(to_string(r.regime)), fmt(r.sigma_plus), cell};
        for (std::size_t c = 0; c < row.size(); ++c) csv += (c ? "," : "") + row[c];
        csv += '\n';
        rows.push_back(std::move(row));
      }
      emit(map_out, Rendered{arr, csv, human_columns(rows)});
      return 0;
    }

    if (sig_cmd->parsed()) {
      const PgdSigma r = pgd_sigma_plus(sig_L, sig_mu, sig_gamma);
      const PgdSetting p{sig_L, sig_mu, 0.0, ExtReal::infinity(), sig_gamma};
      const RegimeReport c = classify(pgd_to_dca(p));
      Rendered out;
      out.json = to_json(r);
      out.json["classifier_sigma_plus"] = number_to_json(c.sigma_plus);
      out.json["classifier_regime"] = to_string(c.regime);
      out.csv = "sigma_plus,branch,B,classifier_sigma_plus,classifier_regime\n" + fmt(r.sigma_plus) + ',' +
                std::string(to_string(r.branch)) + ',' + fmt(r.B) + ',' + fmt(c.sigma_plus) + ',' +
                std::string(to_string(c.regime)) + '\n';
      out.human = human_table({{"sigma_plus", fmt(r.sigma_plus)},
                               {"branch", std::string(to_string(r.branch))},
                               {"B", fmt(r.B)},
                               {"classifier_sigma_plus", fmt(c.sigma_plus)},
                               {"classifier_regime", std::string(to_string(c.regime))}});
      emit(sig_out, out);
      return 0;
    }

    if (run_cmd->parsed()) {
      const std::vector<double> start = parse_list(run_x0);
      if (start.empty()) throw Error(ErrorCode::InvalidArgument, "x0 must have at least one entry");
      const Vector x0 = Eigen::Map<const Vector>(start.data(), static_cast<Eigen::Index>(start.size()));
      const double a = run_a, c = run_c, kappa = run_kappa;
      PgdProblem prob;
      prob.phi = [a, c](const Vector& x) { return 0.5 * a * x.squaredNorm() + c * x.sum(); };
      prob.phi_grad = [a, c](const Vector& x) -> Vector { return a * x + Vector::Constant(x.size(), c); };
      prob.h = [kappa](const Vector& x) { return kappa * x.lpNorm<1>(); };
      prob.prox_h = [kappa](const Vector& v, double t) { return soft_threshold(v, kappa * t); };
      prob.h_subgrad = [kappa](const Vector& x) -> Vector {
        return x.unaryExpr([kappa](double v) { return kappa * static_cast<double>((v > 0.0) - (v < 0.0)); });
      };
      const DcaTrajectory t = run_pgd(prob, x0, run_gamma, run_N);
      const DcaTrajectory d = run_dca(pgd_as_dca(prob, run_gamma), x0, run_N);
      double diff = 0.0;
      for (std::size_t k = 0; k < t.points.size(); ++k)
        diff = std::max(diff, (t.points[k] - d.points[k]).lpNorm<Eigen::Infinity>());
      Rendered out;
      out.json = Json{{"gamma", number_to_json(run_gamma)},
                      {"max_dca_iterate_diff", number_to_json(diff)},
                      {"trajectory", to_json(t)}};
      out.csv = trajectory_csv(t);
      std::vector<std::vector<std::string>> rows{{"k", "F", "residual_sq", "min_residual_sq"}};
      for (std::size_t k = 0; k < t.points.size(); ++k)
        rows.push_back({std::to_string(k), fmt(t.objective[k]), fmt(t.residual_sq[k]), fmt(t.min_residual_sq[k])});
      out.human = human_columns(rows) + "max |x_pgd - x_dca| = " + fmt(diff) + '\n';
      emit(run_out, out);
      return 0;
    }

    if (spca_cmd->parsed()) {
      if (spca_out.format == "json" && !spca_seed)
        throw Error(ErrorCode::InvalidArgument, "--seed is required with --output json");
      ExperimentConfig cfg;
      std::vector<double> lambdas = parse_list(spca_lambdas);
      if (!spca_eps.empty()) cfg.epsilons = parse_list(spca_eps);
      std::uint64_t seed = spca_seed.value_or(1);
      if (!spca_config.empty()) {
        std::ifstream f(spca_config);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read config '" + spca_config + "'");
        const Json j = Json::parse(f);
        // Flags given on the command line win over the file.
        auto take = [&](const char* key, const char* flag, auto& var) {
          if (j.contains(key) && spca_cmd->count(flag) == 0) var = j.at(key).get<std::remove_reference_t<decltype(var)>>();
        };
        take("n", "--n", spca_n);
        take("density", "--density", spca_density);
        take("kappa", "--kappa", spca_kappa);
        take("eta", "--eta", spca_eta);
        take("m", "--M", spca_M);
        take("max_iter", "--max-iter", spca_iter);
        if (j.contains("seed") && !spca_seed) seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("lambdas") && lambdas.empty())
          for (const auto& v : j.at("lambdas")) lambdas.push_back(number_from_json(v));
        if (j.contains("epsilons") && spca_eps.empty()) {
          cfg.epsilons.clear();
          for (const auto& v : j.at("epsilons")) cfg.epsilons.push_back(number_from_json(v));
        }
      }
      const SpcaProblem prob = build_problem(spca_n, spca_density, spca_kappa, spca_eta, seed);
      const ShiftResult best = optimize_shift(prob.splitting());
      cfg.lambdas = lambdas.empty() ? default_lambdas(prob) : lambdas;
      cfg.M = spca_M;
      cfg.max_iter = spca_iter;
      cfg.seed = seed + 1;
      const NEpsilonTable t = run_experiment(prob, cfg);

      Rendered out;
      out.json = Json{{"n", spca_n},
                      {"density", number_to_json(spca_density)},
                      {"kappa", number_to_json(spca_kappa)},
                      {"eta", number_to_json(spca_eta)},
                      {"seed", seed},
                      {"m", spca_M},
                      {"max_iter", spca_iter},
                      {"mu2", number_to_json(prob.mu2)},
                      {"l2", number_to_json(prob.L2)},
                      {"lambda_star", number_to_json(best.lambda_star)},
                      {"p_star", number_to_json(best.p_star)},
                      {"lambda_max", number_to_json(best.lambda_max)},
                      {"table", to_json(t)}};
      out.csv = table_csv(t);
      std::vector<std::vector<std::string>> rows;
      std::vector<std::string> head{"lambda"};
      for (double e : t.epsilons) head.push_back("eps=" + fmt(e));
      head.push_back("kept");
      rows.push_back(head);
      for (std::size_t i = 0; i < t.lambdas.size(); ++i) {
        std::vector<std::string> row{fmt(t.lambdas[i])};
        for (double v : t.counts[i]) row.push_back(fmt(v));
        row.push_back(std::to_string(t.kept_runs[i]) + "/" + std::to_string(t.total_runs));
        rows.push_back(row);
      }
      out.human = human_table({{"mu2", fmt(prob.mu2)},
                               {"lambda_star", fmt(best.lambda_star)},
                               {"lambda_max", fmt(best.lambda_max)}}) +
                  human_columns(rows);
      emit(spca_out, out);
      return 0;
    }

    if (ver_cmd->parsed()) {
      if (ver_out.format == "json" && !ver_seed)
        throw Error(ErrorCode::InvalidArgument, "--seed is required with --output json");
      const auto results = run_verify(ver_suite, ver_samples, ver_seed.value_or(1));
      bool ok = true;
      Json arr = Json::array();
      std::string csv = "suite,metric,worst,threshold,passed\n";
      std::vector<std::vector<std::string>> rows{{"suite", "metric", "worst", "threshold", "result"}};
      for (const auto& r : results) {
        ok = ok && r.passed();
        arr.push_back(to_json(r));
        for (const auto& m : r.metrics) {
          csv += r.suite + ',' + m.name + ',' + fmt(m.worst) + ',' + fmt(m.threshold) + ',' +
                 (m.passed() ? "true" : "false") + '\n';
          rows.push_back({r.suite, m.name, fmt(m.worst), fmt(m.threshold), m.passed() ? "pass" : "FAIL"});
        }
        if (!r.complete) rows.push_back({r.suite, "sample_count", std::to_string(r.samples), "", "FAIL"});
      }
      emit(ver_out, Rendered{Json{{"passed", ok}, {"suites", arr}}, csv, human_columns(rows)});
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
