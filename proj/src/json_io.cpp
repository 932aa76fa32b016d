#include "json.hpp"
#include "kr/diagram.hpp"

namespace kr {

namespace {

std::vector<std::pair<int, int>> signed_labels(const nlohmann::json& arr,
                                               const char* where) {
  std::vector<std::pair<int, int>> out;
  if (!arr.is_array())
    throw std::invalid_argument(std::string("arcs json: ") + where +
                                " must be an array");
  for (auto& v : arr) {
    if (!v.is_number_integer())
      throw std::invalid_argument(std::string("arcs json: ") + where +
                                  " entries must be signed integers");
    int n = v.get<int>();
    if (n == 0)
      throw std::invalid_argument(std::string("arcs json: ") + where +
                                  " entries must be nonzero");
    out.push_back({n > 0 ? 1 : -1, std::abs(n)});
  }
  return out;
}

ArcEnd arc_end(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw std::invalid_argument(
        "arcs json: arc endpoints are [place, index] pairs");
  return ArcEnd{v[0].get<int>(), v[1].get<int>()};
}

}  // namespace

PlanarArcDiagram parse_arcs(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("arcs json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("holes") || !j.contains("outer") ||
      !j.contains("arcs"))
    throw std::invalid_argument(
        "arcs json: expected an object with holes, outer, arcs");

  PlanarArcDiagram eta;
  if (!j["holes"].is_array())
    throw std::invalid_argument("arcs json: holes must be an array");
  for (auto& h : j["holes"]) eta.holes.push_back(signed_labels(h, "hole"));
  eta.outer = signed_labels(j["outer"], "outer");
  if (!j["arcs"].is_array())
    throw std::invalid_argument("arcs json: arcs must be an array");
  for (auto& a : j["arcs"]) {
    if (!a.is_array() || a.size() != 2)
      throw std::invalid_argument("arcs json: each arc is [tail, head]");
    eta.arcs.push_back({arc_end(a[0]), arc_end(a[1])});
  }
  eta.validate();
  return eta;
}

}  // namespace kr
