#include "run_config.hpp"

#include <fstream>
#include <set>

namespace dtnembed::cli {

using nlohmann::json;

namespace {

// Rejects keys outside `allowed` so that typos do not silently fall back to defaults.
void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

Method parse_method(const std::string& s) {
  if (s == "dtn") return Method::DtN;
  if (s == "ntd") return Method::NtD;
  throw ConfigError("method must be 'dtn' or 'ntd', got '" + s + "'");
}

Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw ConfigError("parity must be 'even' or 'odd', got '" + s + "'");
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig c;
  check_keys(doc,
             {"geometry", "basis", "method", "steklov_truncation", "quadrature", "kappa0", "tol", "max_iter", "grid",
              "sweep", "field", "oracle", "output"},
             "config");
  if (doc.contains("geometry")) {
    const auto& g = doc["geometry"];
    check_keys(g, {"a", "b"}, "geometry");
    read(g, "a", c.a, "geometry");
    read(g, "b", c.b, "geometry");
  }
  if (doc.contains("basis")) {
    const auto& g = doc["basis"];
    check_keys(g, {"parity", "alpha", "beta", "n_max", "m_max"}, "basis");
    std::string parity = std::string(to_string(c.basis.parity));
    read(g, "parity", parity, "basis");
    c.basis.parity = parse_parity(parity);
    read(g, "alpha", c.basis.alpha, "basis");
    read(g, "beta", c.basis.beta, "basis");
    read(g, "n_max", c.basis.n_max, "basis");
    read(g, "m_max", c.basis.m_max, "basis");
  }
  std::string method = std::string(to_string(c.method));
  read(doc, "method", method, "config");
  c.method = parse_method(method);
  read(doc, "steklov_truncation", c.steklov_truncation, "config");
  if (doc.contains("quadrature")) {
    const auto& g = doc["quadrature"];
    check_keys(g, {"n_r", "n_phi", "n_s"}, "quadrature");
    read(g, "n_r", c.quadrature.n_r, "quadrature");
    read(g, "n_phi", c.quadrature.n_phi, "quadrature");
    read(g, "n_s", c.quadrature.n_s, "quadrature");
  }
  read(doc, "kappa0", c.kappa0, "config");
  read(doc, "tol", c.tol, "config");
  read(doc, "max_iter", c.max_iter, "config");
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    check_keys(g, {"nx", "ny"}, "grid");
    read(g, "nx", c.grid.nx, "grid");
    read(g, "ny", c.grid.ny, "grid");
  }
  if (doc.contains("sweep")) {
    const auto& g = doc["sweep"];
    check_keys(g, {"sizes", "methods"}, "sweep");
    read(g, "sizes", c.sweep_sizes, "sweep");
    if (g.contains("methods")) {
      std::vector<std::string> names;
      read(g, "methods", names, "sweep");
      c.sweep_methods.clear();
      for (const auto& n : names) c.sweep_methods.push_back(parse_method(n));
    }
  }
  if (doc.contains("field")) {
    const auto& g = doc["field"];
    check_keys(g, {"mode"}, "field");
    read(g, "mode", c.field_mode, "field");
  }
  if (doc.contains("oracle")) {
    const auto& g = doc["oracle"];
    check_keys(g, {"domain", "width", "height", "h", "richardson", "num_modes"}, "oracle");
    std::string domain = c.oracle.domain == OracleDomain::Composite ? "composite" : "rectangle";
    read(g, "domain", domain, "oracle");
    if (domain == "composite") {
      c.oracle.domain = OracleDomain::Composite;
    } else if (domain == "rectangle") {
      c.oracle.domain = OracleDomain::Rectangle;
    } else {
      throw ConfigError("oracle.domain must be 'composite' or 'rectangle'");
    }
    read(g, "width", c.oracle.width, "oracle");
    read(g, "height", c.oracle.height, "oracle");
    read(g, "h", c.oracle.h, "oracle");
    read(g, "richardson", c.oracle.richardson, "oracle");
    read(g, "num_modes", c.oracle.num_modes, "oracle");
  }
  if (doc.contains("output")) {
    const auto& g = doc["output"];
    check_keys(g, {"directory"}, "output");
    read(g, "directory", c.output_dir, "output");
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json methods = json::array();
  for (Method m : c.sweep_methods) methods.push_back(std::string(to_string(m)));
  return json{
      {"geometry", {{"a", c.a}, {"b", c.b}}},
      {"basis",
       {{"parity", std::string(to_string(c.basis.parity))},
        {"alpha", c.basis.alpha},
        {"beta", c.basis.beta},
        {"n_max", c.basis.n_max},
        {"m_max", c.basis.m_max}}},
      {"method", std::string(to_string(c.method))},
      {"steklov_truncation", c.steklov_truncation},
      {"quadrature", {{"n_r", c.quadrature.n_r}, {"n_phi", c.quadrature.n_phi}, {"n_s", c.quadrature.n_s}}},
      {"kappa0", c.kappa0},
      {"tol", c.tol},
      {"max_iter", c.max_iter},
      {"grid", {{"nx", c.grid.nx}, {"ny", c.grid.ny}}},
      {"sweep", {{"sizes", c.sweep_sizes}, {"methods", methods}}},
      {"field", {{"mode", c.field_mode}}},
      {"oracle",
       {{"domain", c.oracle.domain == OracleDomain::Composite ? "composite" : "rectangle"},
        {"width", c.oracle.width},
        {"height", c.oracle.height},
        {"h", c.oracle.h},
        {"richardson", c.oracle.richardson},
        {"num_modes", c.oracle.num_modes}}},
      {"output", {{"directory", c.output_dir}}},
  };
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(c.a, "geometry.a");
  positive(c.b, "geometry.b");
  positive(c.basis.alpha, "basis.alpha");
  positive(c.basis.beta, "basis.beta");
  positive(c.basis.n_max, "basis.n_max");
  positive(c.basis.m_max, "basis.m_max");
  positive(c.steklov_truncation, "steklov_truncation");
  positive(c.quadrature.n_r, "quadrature.n_r");
  positive(c.quadrature.n_phi, "quadrature.n_phi");
  positive(c.quadrature.n_s, "quadrature.n_s");
  if (c.quadrature.n_s % 2 != 0) throw ConfigError("quadrature.n_s must be even (the interface rule splits at x = 0)");
  positive(c.kappa0, "kappa0");
  positive(c.tol, "tol");
  positive(c.max_iter, "max_iter");
  if (c.grid.nx < 2 || c.grid.ny < 2) throw ConfigError("grid.nx and grid.ny must be at least 2");
  if (c.sweep_sizes.empty()) throw ConfigError("sweep.sizes must not be empty");
  for (const auto& s : c.sweep_sizes) {
    if (s[0] < 1 || s[1] < 1) throw ConfigError("sweep sizes must be positive");
  }
  if (c.sweep_methods.empty()) throw ConfigError("sweep.methods must not be empty");
  positive(c.oracle.width, "oracle.width");
  positive(c.oracle.height, "oracle.height");
  positive(c.oracle.h, "oracle.h");
  positive(c.oracle.num_modes, "oracle.num_modes");
  if (c.field_mode != "even,1" && c.field_mode != "even,2" && c.field_mode != "odd,1" && c.field_mode != "odd,2") {
    throw ConfigError("field.mode must be one of even,1 even,2 odd,1 odd,2");
  }
  if (c.output_dir.empty()) throw ConfigError("output.directory must not be empty");
}

}  // namespace dtnembed::cli
