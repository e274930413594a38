#include "canonsys/measure_json.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "canonsys/errors.hpp"

namespace canonsys {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) { fail(ErrorKind::InvalidArgument, "measure JSON: " + what); }

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) schema_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) schema_error("unknown key \"" + key + "\" in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where, std::optional<double> fallback = {}) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    schema_error(where + " is missing \"" + key + "\"");
  }
  if (!it->is_number()) schema_error(where + "." + key + " must be a number");
  return it->get<double>();
}

const json& array(const json& obj, const char* key, const std::string& where, bool required) {
  static const json empty = json::array();
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) schema_error(where + " is missing \"" + key + "\"");
    return empty;
  }
  if (!it->is_array()) schema_error(where + "." + key + " must be an array");
  return *it;
}

std::vector<LineAtom> line_atoms(const json& obj) {
  std::vector<LineAtom> atoms;
  const json& arr = array(obj, "atoms", "measure", false);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "]";
    only_keys(arr[i], {"lambda", "beta"}, where);
    atoms.push_back({number(arr[i], "lambda", where), number(arr[i], "beta", where)});
  }
  return atoms;
}

RPoly coefficients(const json& obj, const char* key) {
  RPoly out;
  const json& arr = array(obj, key, "measure", true);
  for (const auto& c : arr) {
    if (!c.is_number()) schema_error(std::string(key) + " entries must be numbers");
    out.push_back(c.get<double>());
  }
  if (out.empty()) schema_error(std::string(key) + " must not be empty");
  return out;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i + 1 < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json line_atoms_json(const std::vector<LineAtom>& atoms) {
  json arr = json::array();
  for (const auto& a : atoms) arr.push_back({{"lambda", a.lambda}, {"beta", a.beta}});
  return arr;
}

}  // namespace

SpectralMeasure parse_measure_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << col;
    fail(ErrorKind::InvalidArgument, os.str());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  const auto type_it = doc.find("type");
  if (type_it == doc.end() || !type_it->is_string()) schema_error("\"type\" must be a string");
  const std::string type = type_it->get<std::string>();

  if (type == "periodic") {
    only_keys(doc, {"type", "density", "atoms", "moments_only"}, "measure");
    bool moments_only = false;
    if (const auto it = doc.find("moments_only"); it != doc.end()) {
      if (!it->is_boolean()) schema_error("moments_only must be a boolean");
      moments_only = it->get<bool>();
    }
    std::vector<TrigCoefficient> density;
    const json& arr = array(doc, "density", "measure", false);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "density[" + std::to_string(i) + "]";
      only_keys(arr[i], {"k", "re", "im"}, where);
      const auto k_it = arr[i].find("k");
      if (k_it == arr[i].end() || !k_it->is_number_integer()) schema_error(where + ".k must be an integer");
      const auto k = k_it->get<long long>();
      if (k < 0 || k > 1000000) schema_error(where + ".k must lie in [0, 1e6]");
      density.push_back({static_cast<int>(k), cplx(number(arr[i], "re", where), number(arr[i], "im", where, 0.0))});
    }
    std::vector<PeriodicAtom> atoms;
    const json& atom_arr = array(doc, "atoms", "measure", false);
    for (std::size_t i = 0; i < atom_arr.size(); ++i) {
      const std::string where = "atoms[" + std::to_string(i) + "]";
      only_keys(atom_arr[i], {"x", "mass"}, where);
      atoms.push_back({number(atom_arr[i], "x", where), number(atom_arr[i], "mass", where)});
    }
    if (moments_only) {
      if (!atoms.empty()) schema_error("moments_only measures cannot list atoms");
      std::sort(density.begin(), density.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
      std::vector<cplx> g;
      for (std::size_t i = 0; i < density.size(); ++i) {
        if (density[i].k != static_cast<int>(i)) schema_error("moments_only density must list k = 0, 1, ..., K");
        g.push_back(density[i].value);
      }
      return SpectralMeasure::periodic_from_moments(MomentSequence(std::move(g)));
    }
    return SpectralMeasure::periodic(std::move(density), std::move(atoms));
  }
  if (type == "line") {
    only_keys(doc, {"type", "lebesgue", "atoms"}, "measure");
    return SpectralMeasure::line(number(doc, "lebesgue", "measure", 0.0), line_atoms(doc));
  }
  if (type == "rational") {
    only_keys(doc, {"type", "numerator", "denominator", "atoms"}, "measure");
    return SpectralMeasure::rational(coefficients(doc, "numerator"), coefficients(doc, "denominator"), line_atoms(doc));
  }
  schema_error("unknown measure type \"" + type + "\"");
}

std::string measure_to_json(const SpectralMeasure& measure) {
  json doc;
  if (measure.is_periodic()) {
    const auto& p = measure.as_periodic();
    doc["type"] = "periodic";
    json density = json::array();
    for (const auto& c : p.density) density.push_back({{"k", c.k}, {"re", c.value.real()}, {"im", c.value.imag()}});
    doc["density"] = density;
    json atoms = json::array();
    for (const auto& a : p.atoms) atoms.push_back({{"x", a.x}, {"mass", a.mass}});
    doc["atoms"] = atoms;
    if (p.moment_defined) doc["moments_only"] = true;
  } else if (measure.is_line()) {
    const auto& l = measure.as_line();
    doc["type"] = "line";
    doc["lebesgue"] = l.lebesgue;
    doc["atoms"] = line_atoms_json(l.atoms);
  } else {
    const auto& r = measure.as_rational();
    doc["type"] = "rational";
    doc["numerator"] = r.numerator;
    doc["denominator"] = r.denominator;
    doc["atoms"] = line_atoms_json(r.atoms);
  }
  return doc.dump(2) + "\n";
}

}  // namespace canonsys
