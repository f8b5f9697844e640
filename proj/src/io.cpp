#include "dcatight/io.hpp"

#include <cmath>
#include <sstream>

#include "dcatight/error.hpp"

namespace dcatight {

Json number_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_null()) return std::nan("");
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -kInf;
    return parse_ext_real(s).value();
  }
  if (!j.is_number()) throw Error(ErrorCode::InvalidArgument, "expected a number or \"inf\"");
  return j.get<double>();
}

Json to_json(const Splitting& s) {
  return Json{{"mu1", number_to_json(s.mu1())},
              {"l1", number_to_json(s.L1().value())},
              {"mu2", number_to_json(s.mu2())},
              {"l2", number_to_json(s.L2().value())}};
}

Splitting splitting_from_json(const Json& j) {
  return validate_splitting(number_from_json(j.at("mu1")), number_from_json(j.at("l1")),
                            number_from_json(j.at("mu2")), number_from_json(j.at("l2")), DecreaseCheck::Allow);
}

Json to_json(const RegimeReport& r) {
  Json j;
  j["regime"] = to_string(r.regime);
  j["sigma"] = number_to_json(r.sigma);
  j["sigma_plus"] = number_to_json(r.sigma_plus);
  j["p"] = number_to_json(r.p);
  j["b"] = number_to_json(r.B);
  j["e"] = r.E ? number_to_json(*r.E) : Json("not_applicable");
  j["description"] = r.description;
  j["concave_unbounded"] = r.concave_unbounded;
  return j;
}

RegimeReport regime_report_from_json(const Json& j) {
  RegimeReport r;
  const auto name = j.at("regime").get<std::string>();
  const auto regime = regime_from_string(name);
  if (!regime) throw Error(ErrorCode::InvalidArgument, "unknown regime '" + name + "'");
  r.regime = *regime;
  r.sigma = number_from_json(j.at("sigma"));
  r.sigma_plus = number_from_json(j.at("sigma_plus"));
  r.p = number_from_json(j.at("p"));
  r.B = number_from_json(j.at("b"));
  const Json& e = j.at("e");
  if (!(e.is_string() && e.get<std::string>() == "not_applicable")) r.E = number_from_json(e);
  r.description = j.at("description").get<std::string>();
  r.concave_unbounded = j.at("concave_unbounded").get<bool>();
  return r;
}

Json to_json(const RateBound& r) {
  Json j;
  j["p"] = number_to_json(r.p);
  j["n"] = r.N;
  j["bound_simple"] = number_to_json(r.bound_simple);
  j["bound_flo"] = r.bound_flo ? number_to_json(*r.bound_flo) : Json("not_applicable");
  return j;
}

Json to_json(const ShiftResult& r) {
  Json j;
  j["lambda_star"] = number_to_json(r.lambda_star);
  j["p_star"] = number_to_json(r.p_star);
  j["regime_at_star"] = to_string(r.regime_at_star);
  j["lambda_max"] = number_to_json(r.lambda_max);
  j["lambda_lo"] = number_to_json(r.interval.lo);
  j["lambda_hi"] = number_to_json(r.interval.hi);
  j["lambda_hi_included"] = r.interval.hi_included;
  Json tr = Json::array();
  for (const auto& t : r.transitions)
    tr.push_back({{"lambda_left", number_to_json(t.lambda_left)},
                  {"lambda_right", number_to_json(t.lambda_right)},
                  {"from", to_string(t.from)},
                  {"to", to_string(t.to)}});
  j["transitions"] = tr;
  if (!r.profile.empty()) {
    Json prof = Json::array();
    for (const auto& p : r.profile)
      prof.push_back({{"lambda", number_to_json(p.lambda)},
                      {"p", number_to_json(p.p)},
                      {"regime", p.p > -kInf ? Json(to_string(p.regime)) : Json("infeasible")}});
    j["profile"] = prof;
  }
  return j;
}

Json to_json(const PiecewiseQuadratic1D& f) {
  Json j;
  Json b = Json::array();
  for (double x : f.breakpoints()) b.push_back(number_to_json(x));
  j["breakpoints"] = b;
  Json pieces = Json::array();
  for (const auto& p : f.pieces())
    pieces.push_back({{"c2", number_to_json(p.c2)},
                      {"c1", number_to_json(p.c1)},
                      {"c0", number_to_json(p.c0)},
                      {"x_ref", number_to_json(p.x_ref)}});
  j["pieces"] = pieces;
  return j;
}

namespace {

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_to_json(v[i]));
  return a;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

}  // namespace

Json to_json(const DcaTrajectory& t) {
  Json j;
  Json pts = Json::array();
  for (const auto& p : t.points) pts.push_back(vec_json(p));
  j["points"] = pts;
  Json obj = Json::array(), res = Json::array(), mins = Json::array(), steps = Json::array();
  for (double v : t.objective) obj.push_back(number_to_json(v));
  for (double v : t.residual_sq) res.push_back(number_to_json(v));
  for (double v : t.min_residual_sq) mins.push_back(number_to_json(v));
  for (double v : t.step_norms) steps.push_back(number_to_json(v));
  j["objective"] = obj;
  j["residual_sq"] = res;
  j["min_residual_sq"] = mins;
  j["step_norms"] = steps;
  return j;
}

Json to_json(const NEpsilonTable& t) {
  Json j;
  Json eps = Json::array();
  for (double e : t.epsilons) eps.push_back(number_to_json(e));
  j["epsilons"] = eps;
  j["total_runs"] = t.total_runs;
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.lambdas.size(); ++i) {
    Json counts = Json::array();
    for (double c : t.counts[i]) counts.push_back(number_to_json(c));
    rows.push_back({{"lambda", number_to_json(t.lambdas[i])},
                    {"n_eps", counts},
                    {"kept_runs", t.kept_runs[i]},
                    {"support_size", t.support_size[i]},
                    {"monotone_on_kept", static_cast<bool>(t.monotone_on_kept[i])}});
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  j["samples"] = r.samples;
  j["complete"] = r.complete;
  Json ms = Json::array();
  for (const auto& m : r.metrics)
    ms.push_back({{"name", m.name},
                  {"worst", number_to_json(m.worst)},
                  {"threshold", number_to_json(m.threshold)},
                  {"passed", m.passed()}});
  j["metrics"] = ms;
  return j;
}

Json to_json(const PgdSigma& s) {
  return Json{{"sigma_plus", number_to_json(s.sigma_plus)}, {"branch", to_string(s.branch)}, {"b", number_to_json(s.B)}};
}

Json contour_to_json(const std::vector<ContourCell>& cells) {
  Json a = Json::array();
  for (const auto& c : cells) {
    Json j;
    j["mu2"] = number_to_json(c.mu2);
    j["l2"] = number_to_json(c.L2);
    j["regime"] = c.regime ? Json(to_string(*c.regime)) : Json("infeasible");
    j["p"] = c.regime ? number_to_json(c.p) : Json(nullptr);
    j["sigma"] = c.regime ? number_to_json(c.sigma) : Json(nullptr);
    j["sigma_plus"] = c.regime ? number_to_json(c.sigma_plus) : Json(nullptr);
    a.push_back(j);
  }
  return a;
}

std::string contour_csv(const std::vector<ContourCell>& cells) {
  std::string out = "mu2,L2,regime,p,sigma,sigma_plus\n";
  for (const auto& c : cells) {
    if (c.regime)
      out += csv_line({format_double(c.mu2), format_double(c.L2), std::string(to_string(*c.regime)),
                       format_double(c.p), format_double(c.sigma), format_double(c.sigma_plus)});
    else
      out += csv_line({format_double(c.mu2), format_double(c.L2), "infeasible", "", "", ""});
  }
  return out;
}

std::string profile_csv(const std::vector<ProfilePoint>& profile) {
  std::string out = "lambda,p,regime\n";
  for (const auto& p : profile) {
    if (p.p > -kInf)
      out += csv_line({format_double(p.lambda), format_double(p.p), std::string(to_string(p.regime))});
    else
      out += csv_line({format_double(p.lambda), "", "infeasible"});
  }
  return out;
}

std::string trajectory_csv(const DcaTrajectory& t) {
  const Eigen::Index dim = t.points.empty() ? 0 : t.points.front().size();
  std::vector<std::string> head{"k"};
  if (dim == 1) {
    head.push_back("x");
  } else {
    for (Eigen::Index i = 0; i < dim; ++i) head.push_back("x" + std::to_string(i));
  }
  head.push_back("F");
  head.push_back("residual_sq");
  std::string out = csv_line(head);
  for (std::size_t k = 0; k < t.points.size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (Eigen::Index i = 0; i < dim; ++i) row.push_back(format_double(t.points[k][i]));
    row.push_back(format_double(t.objective[k]));
    row.push_back(format_double(t.residual_sq[k]));
    out += csv_line(row);
  }
  return out;
}

std::string table_csv(const NEpsilonTable& t) {
  std::vector<std::string> head{"lambda"};
  for (double e : t.epsilons) head.push_back("eps_" + format_double(e));
  head.push_back("kept_runs");
  std::string out = csv_line(head);
  for (std::size_t i = 0; i < t.lambdas.size(); ++i) {
    std::vector<std::string> row{format_double(t.lambdas[i])};
    for (double c : t.counts[i]) row.push_back(format_double(c));
    row.push_back(std::to_string(t.kept_runs[i]));
    out += csv_line(row);
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string human_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) {
    os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return os.str();
}

}  // namespace dcatight

namespace dcatight {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string human_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (r.size() > width.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += line + '\n';
  }
  return out;
}

Json classify_document(const Splitting& s, const RegimeReport& r) {
  Json j;
  j["input"] = to_json(s);
  const Json report = to_json(r);
  for (const auto& [k, v] : report.items()) j[k] = v;
  return j;
}

std::pair<Splitting, RegimeReport> parse_classify_document(const Json& j) {
  return {splitting_from_json(j.at("input")), regime_report_from_json(j)};
}

}  // namespace dcatight
