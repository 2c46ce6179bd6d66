#ifndef CESARO_REPORT_HPP
#define CESARO_REPORT_HPP

#include <json.hpp>
#include <string>
#include <string_view>

#include "cesaro/config.hpp"
#include "cesaro/criteria.hpp"
#include "cesaro/spectral.hpp"

namespace cesaro {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "cesaro-report/1";
inline constexpr std::string_view kVersion = "0.1.0";

/// Finite doubles stay numbers; inf and nan become strings.
Json number(double v);

Json to_json(const Verdict& v);
Json to_json(const S0Interval& s);
Json to_json(const SpaceProfile& p);
Json to_json(const SpectrumReport& r);
Json to_json(const DiscReport& r);
Json to_json(const EnvelopeFit& f);
Json to_json(const AnalysisConfig& c);

/// Two-space indented JSON with every double printed at 17 significant digits.
std::string emit_json(const Json& j);

/// Flattened `path,value` rows, numbers formatted as in emit_json.
std::string emit_csv(const Json& j);

}  // namespace cesaro

#endif  // CESARO_REPORT_HPP
