#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "dcatight/dca_engine.hpp"
#include "dcatight/pgd_bridge.hpp"
#include "dcatight/rates_shift.hpp"
#include "dcatight/regimes.hpp"
#include "dcatight/spca.hpp"
#include "dcatight/verify.hpp"
#include "dcatight/worstcase.hpp"

namespace dcatight {

using Json = nlohmann::ordered_json;

// Finite values stay numbers; +inf becomes the string "inf" and NaN becomes null.
Json number_to_json(double v);
double number_from_json(const Json& j);

Json to_json(const Splitting& s);
Splitting splitting_from_json(const Json& j);

Json to_json(const RegimeReport& r);
RegimeReport regime_report_from_json(const Json& j);

Json to_json(const RateBound& r);
Json to_json(const ShiftResult& r);
Json to_json(const PiecewiseQuadratic1D& f);
Json to_json(const DcaTrajectory& t);
Json to_json(const NEpsilonTable& t);
Json to_json(const SuiteResult& r);
Json to_json(const PgdSigma& s);
Json contour_to_json(const std::vector<ContourCell>& cells);

std::string contour_csv(const std::vector<ContourCell>& cells);
std::string profile_csv(const std::vector<ProfilePoint>& profile);
std::string trajectory_csv(const DcaTrajectory& t);
std::string table_csv(const NEpsilonTable& t);

// Pretty JSON with a trailing newline.
std::string dump(const Json& j);

// Two-column fixed-width key/value table.
std::string human_table(const std::vector<std::pair<std::string, std::string>>& rows);

}  // namespace dcatight

namespace dcatight {

// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

// Column-aligned table; the first row is the header.
std::string human_columns(const std::vector<std::vector<std::string>>& rows);

// classify output: the input splitting plus the report, and its inverse.
Json classify_document(const Splitting& s, const RegimeReport& r);
std::pair<Splitting, RegimeReport> parse_classify_document(const Json& j);

}  // namespace dcatight
