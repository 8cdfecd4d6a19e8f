#include "drg/json_io.hpp"

namespace drg {

Json region_to_json(const PositivityRegion& r) {
  Json intervals = Json::array();
  for (const auto& iv : r.intervals) intervals.push_back({iv.lo, iv.hi});
  return {{"intervals", intervals}, {"points", r.isolated_points}, {"tolerance", r.endpoint_tolerance}};
}

PositivityRegion region_from_json(const Json& j) {
  try {
    PositivityRegion r;
    for (const auto& iv : j.at("intervals")) {
      if (iv.size() != 2) throw BadParam("region interval must have two entries");
      r.intervals.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
    }
    r.isolated_points = j.at("points").get<std::vector<double>>();
    r.endpoint_tolerance = j.at("tolerance").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw BadParam(std::string("malformed region JSON: ") + e.what());
  }
}

Json certificate_to_json(const Certificate& c) {
  Json j{{"verdict", to_string(c.verdict)}, {"method", c.method}, {"tolerance", c.tolerance}};
  if (c.psd()) {
    j["dual_measure"] = c.dual_measure;
    if (c.truncation_level) j["truncation_level"] = *c.truncation_level;
    return j;
  }
  Json w{{"value", c.witness_value}};
  if (c.witness_dual_index) w["dual_index"] = *c.witness_dual_index;
  if (!c.witness_indices.empty()) w["indices"] = c.witness_indices;
  if (!c.witness_vector.empty()) w["vector"] = c.witness_vector;
  j["witness"] = w;
  if (c.truncation_level) j["truncation_level"] = *c.truncation_level;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict != "PSD" && verdict != "NotPSD") throw BadParam("unknown verdict '" + verdict + "'");
    c.verdict = verdict == "PSD" ? Verdict::PSD : Verdict::NotPSD;
    c.method = j.at("method").get<std::string>();
    c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("dual_measure")) c.dual_measure = j["dual_measure"].get<std::vector<double>>();
    if (j.contains("truncation_level")) c.truncation_level = j["truncation_level"].get<std::size_t>();
    if (j.contains("witness")) {
      const auto& w = j["witness"];
      c.witness_value = w.at("value").get<double>();
      if (w.contains("dual_index")) c.witness_dual_index = w["dual_index"].get<std::size_t>();
      if (w.contains("indices")) c.witness_indices = w["indices"].get<std::vector<std::size_t>>();
      if (w.contains("vector")) c.witness_vector = w["vector"].get<std::vector<double>>();
    }
    return c;
  } catch (const Json::exception& e) {
    throw BadParam(std::string("malformed certificate JSON: ") + e.what());
  }
}

Json rational_to_json(const Rational& r) { return {{"exact", to_string(r)}, {"value", to_double(r)}}; }

Json coefficients_to_json(const RecurrenceCoeffs& c) {
  return {{"a", rational_to_json(c.a)}, {"b", rational_to_json(c.b)}, {"c", rational_to_json(c.c)}};
}

}  // namespace drg
