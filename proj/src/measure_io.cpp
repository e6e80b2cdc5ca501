#include "freeconv/measure_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace freeconv {

namespace {

using nlohmann::json;

Domain parse_domain(const std::string& s) {
  if (s == "real") return Domain::real;
  if (s == "halfline") return Domain::halfline;
  if (s == "circle") return Domain::circle;
  throw Error(ErrorCode::InvalidSpecFile, "unknown domain \"" + s + "\"");
}

NamedFamily parse_family(const std::string& name,
                         const std::vector<double>& p) {
  auto need = [&](size_t n) {
    if (p.size() != n)
      throw Error(ErrorCode::InvalidSpecFile,
                  name + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (name == "semicircle") { need(2); return Semicircle{p[0], p[1]}; }
  if (name == "arcsine") { need(2); return Arcsine{p[0], p[1]}; }
  if (name == "uniform_interval") { need(2); return UniformInterval{p[0], p[1]}; }
  if (name == "haar_circle") { need(0); return HaarCircle{}; }
  if (name == "point") { need(1); return PointMass{p[0]}; }
  throw Error(ErrorCode::InvalidSpecFile, "unknown family \"" + name + "\"");
}

}  // namespace

Measure parse_measure_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpecFile, e.what());
  }
  try {
    if (!doc.contains("domain"))
      throw Error(ErrorCode::InvalidSpecFile, "missing \"domain\"");
    const Domain domain = parse_domain(doc.at("domain").get<std::string>());

    std::vector<Atom> atoms;
    if (doc.contains("atoms")) {
      for (const auto& a : doc.at("atoms"))
        atoms.push_back({a.at("pos").get<double>(), a.at("mass").get<double>()});
    }

    const bool has_named = doc.contains("named");
    const bool has_grid = doc.contains("grid");
    if (has_named && has_grid)
      throw Error(ErrorCode::InvalidSpecFile,
                  "\"named\" and \"grid\" cannot be combined");
    if (!has_named && !has_grid) {
      if (atoms.empty())
        throw Error(ErrorCode::InvalidSpecFile, "empty measure spec");
      return make_atomic(atoms, domain);
    }

    std::vector<QuadNode> nodes;
    if (has_named) {
      const auto& named = doc.at("named");
      std::vector<double> params;
      if (named.contains("params"))
        params = named.at("params").get<std::vector<double>>();
      const NamedFamily family =
          parse_family(named.at("family").get<std::string>(), params);
      const int n = named.value("nodes", 512);
      const double weight = named.value("weight", 1.0);
      if (!(weight > 0.0) || weight > 1.0)
        throw Error(ErrorCode::InvalidSpecFile, "named weight must be in (0,1]");
      Measure base = make_named(family, domain, n);
      for (const auto& a : base.atoms())
        atoms.push_back({a.position, weight * a.mass});
      for (const auto& q : base.continuous())
        nodes.push_back({q.position, weight * q.weight});
    } else {
      const auto& grid = doc.at("grid");
      const auto xs = grid.at("nodes").get<std::vector<double>>();
      const auto ws = grid.at("weights").get<std::vector<double>>();
      if (xs.size() != ws.size())
        throw Error(ErrorCode::InvalidSpecFile, "nodes/weights length mismatch");
      for (size_t i = 0; i < xs.size(); ++i) nodes.push_back({xs[i], ws[i]});
    }
    return Measure(domain, std::move(atoms), std::move(nodes));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpecFile, e.what());
  }
}

Measure load_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::InvalidSpecFile, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_measure_json(ss.str());
}

std::string measure_to_json(const Measure& mu) {
  json doc;
  doc["domain"] = domain_name(mu.domain());
  if (!mu.atoms().empty()) {
    json arr = json::array();
    for (const auto& a : mu.atoms())
      arr.push_back({{"pos", a.position}, {"mass", a.mass}});
    doc["atoms"] = arr;
  }
  if (!mu.continuous().empty()) {
    json nodes = json::array(), weights = json::array();
    for (const auto& n : mu.continuous()) {
      nodes.push_back(n.position);
      weights.push_back(n.weight);
    }
    doc["grid"] = {{"nodes", nodes}, {"weights", weights}};
  }
  return doc.dump(2);
}

}  // namespace freeconv
