#pragma once

// JSON views of the diagnostic reports. Non-finite numbers become the strings
// "inf", "-inf" and "nan" so reports stay valid JSON.

#include <json.hpp>

#include "wco/dynamics.hpp"
#include "wco/pdekernel.hpp"
#include "wco/semigroup.hpp"
#include "wco/smoothcalc.hpp"

namespace wco {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json json_number(double v);
Json json_complex(Complex v);
Json json_point(const Point& p);
Json json_multi_index(const MultiIndex& a);

Json report_json(const EscapeEvidence& e);
Json report_json(const OrbitReport& r);
Json report_json(const GrowthReport& r);
Json report_json(const PowerBoundedReport& r);
Json report_json(const ErgodicReport& r);
Json report_json(const DensenessReport& r);
Json report_json(const ExpansionTable& t);
Json report_json(const CrBound& b);
Json report_json(const InvarianceVerdict& v);
Json report_json(const ClosureReport& r);
Json report_json(const TailBudget& b);
Json report_json(const SemigroupLawReport& r);
Json report_json(const GeneratorReport& r);

}  // namespace wco
