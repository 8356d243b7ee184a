#pragma once

// Versioned JSON form of a grid domain and a function sampled on it.
//
//   {
//     "format": "starcalc-grid",
//     "version": 1,
//     "pair": {"alpha": "identity", "beta": "exp"},
//     "points": [{"preimage": [re, im], "image": [a, b]}, ...],
//     "values": [{"preimage": [re, im], "image": [a, b]}, ...],
//     "sup_norm": {"preimage": r, "image": s}
//   }
//
// Points are read back from their preimages and values from their images.

#include <string>

#include <nlohmann/json.hpp>

#include "starcalc/error.hpp"
#include "starcalc/grid.hpp"

namespace starcalc {

inline constexpr const char* kGridFormatName = "starcalc-grid";
inline constexpr int kGridFormatVersion = 1;

namespace detail {
inline nlohmann::ordered_json point_json(const StarComplex& z) {
  const auto p = z.preimage();
  return {{"preimage", {p.real(), p.imag()}}, {"image", {z.a().image(), z.b().image()}}};
}

inline std::pair<double, double> read_pair(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 || !j[key][0].is_number() || !j[key][1].is_number())
    throw Error(Errc::format, std::string("grid document: expected a numeric pair under '") + key + "'");
  return {j[key][0].get<double>(), j[key][1].get<double>()};
}
}  // namespace detail

inline nlohmann::ordered_json grid_to_json(const GridFunction& f) {
  const auto& dom = *f.domain();
  nlohmann::ordered_json j;
  j["format"] = kGridFormatName;
  j["version"] = kGridFormatVersion;
  j["pair"] = {{"alpha", dom.pair().alpha.id()}, {"beta", dom.pair().beta.id()}};
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : dom.points()) j["points"].push_back(detail::point_json(p));
  j["values"] = nlohmann::ordered_json::array();
  for (const auto& v : f.values()) j["values"].push_back(detail::point_json(v));
  const StarReal n = sup_norm(f);
  j["sup_norm"] = {{"preimage", n.preimage()}, {"image", n.image()}};
  return j;
}

inline GridFunction grid_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != kGridFormatName)
    throw Error(Errc::format, std::string("not a ") + kGridFormatName + " document");
  if (j.value("version", 0) != kGridFormatVersion)
    throw Error(Errc::format, "unsupported grid document version " + j.value("version", nlohmann::json(nullptr)).dump());
  if (!j.contains("pair") || !j["pair"].is_object())
    throw Error(Errc::format, "grid document: missing 'pair'");
  const GeneratorPair pair =
      pair_from_names(j["pair"].value("alpha", std::string{}), j["pair"].value("beta", std::string{}));
  if (!j.contains("points") || !j["points"].is_array() || !j.contains("values") || !j["values"].is_array())
    throw Error(Errc::format, "grid document: 'points' and 'values' must be arrays");
  std::vector<StarComplex> points;
  for (const auto& p : j["points"]) {
    const auto [re, im] = detail::read_pair(p, "preimage");
    points.push_back(StarComplex::from_preimages(pair, re, im));
  }
  std::vector<StarComplex> values;
  for (const auto& v : j["values"]) {
    const auto [a, b] = detail::read_pair(v, "image");
    values.push_back(StarComplex::from_images(pair, a, b));
  }
  return GridFunction(GridDomain::create(pair, std::move(points)), std::move(values));
}

}  // namespace starcalc
