#pragma once

#include <string>

#include <json.hpp>

#include "subsetspace/path.hpp"

/// JSON wire formats: FSet objects {"n", "p", "points"} and QuasiPath
/// exports {"legs": [{"t0","t1","pairs","start","end"}]}.
namespace subsetspace {

inline nlohmann::json p_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

inline double p_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("p_from_json: expected number or \"inf\"");
  }
  return j.get<double>();
}

inline nlohmann::json fset_to_json(const FSet& x) {
  nlohmann::json j;
  j["n"] = x.ambient_n();
  j["p"] = p_to_json(x.spec().p);
  j["points"] = nlohmann::json::array();
  for (const Point& q : x.points()) j["points"].push_back(q);
  return j;
}

inline FSet fset_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const double p = p_from_json(j.at("p"));
  std::vector<Point> pts;
  for (const auto& row : j.at("points")) {
    pts.push_back(row.get<Point>());
  }
  if (pts.empty()) {
    throw std::invalid_argument("fset_from_json: empty point list");
  }
  return FSet(std::move(pts), n, NormSpec(p, static_cast<int>(pts[0].size())));
}

inline nlohmann::json path_to_json(const QuasiPath& gamma) {
  nlohmann::json j;
  j["ambient_n"] = gamma.ambient_n();
  j["legs"] = nlohmann::json::array();
  for (const PathLeg& leg : gamma.legs()) {
    nlohmann::json l;
    l["t0"] = leg.t0;
    l["t1"] = leg.t1;
    l["pairs"] = nlohmann::json::array();
    for (auto [a, b] : leg.pairs) l["pairs"].push_back({a, b});
    l["start"] = fset_to_json(leg.start);
    l["end"] = fset_to_json(leg.end);
    j["legs"].push_back(std::move(l));
  }
  return j;
}

inline QuasiPath path_from_json(const nlohmann::json& j) {
  std::vector<PathLeg> legs;
  for (const auto& l : j.at("legs")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& pr : l.at("pairs")) {
      pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
    }
    legs.push_back(PathLeg{fset_from_json(l.at("start")), fset_from_json(l.at("end")),
                           std::move(pairs), l.at("t0").get<double>(),
                           l.at("t1").get<double>()});
  }
  return QuasiPath(std::move(legs), j.at("ambient_n").get<int>());
}

}  // namespace subsetspace
