#pragma once

// Run configuration read from an INI file:
//
//   [grid]
//   lower = -8
//   upper = 8
//   points = 1024
//
//   [tolerance]
//   threshold = 1e-8
//
// Every key has a default; unknown keys are errors.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lindep/coefficients.hpp"
#include "lindep/dependency.hpp"
#include "lindep/numerics.hpp"

namespace lindep {

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double grid_lower = -8.0;
  double grid_upper = 8.0;
  std::size_t grid_points = 1024;

  double identity_tolerance = 1e-8;
  double exact_tolerance = 1e-12;
  ProbeOptions probe{};
  AdmissibilityOptions admissibility{};
  CalderonOptions calderon{};
  OrthogonalityOptions orthogonality{};

  std::uint64_t seed = 20240611;
  std::string text_output;
  std::string jsonl_output;

  Grid grid() const { return Grid(grid_lower, grid_upper, grid_points); }

  /// Sets `section.key` from text.
  void set(const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw config_error("unknown configuration key '" + key + "'");
    try {
      it->second(*this, value);
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
      throw config_error("bad value '" + value + "' for '" + key + "'");
    }
  }

  /// `section.key=value`.
  void apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw config_error("override needs 'section.key=value': '" + assignment + "'");
    set(assignment.substr(0, eq), assignment.substr(eq + 1));
  }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw config_error(std::string(name) + " must be positive");
    };
    positive(identity_tolerance, "tolerance.identity");
    positive(exact_tolerance, "tolerance.exact");
    positive(probe.threshold, "tolerance.threshold");
    positive(probe.floor, "tolerance.floor");
    positive(admissibility.tail_tolerance, "tolerance.tail");
    if (probe.floor > probe.threshold) throw config_error("tolerance.floor must not exceed tolerance.threshold");
    if (!(grid_lower < grid_upper) || grid_points == 0) throw config_error("grid box is empty");
    if (!(calderon.a_min > 0.0 && calderon.a_min < calderon.a_max)) throw config_error("haar a-range is invalid");
    if (!(calderon.b_bound > 0.0)) throw config_error("haar.b_bound must be positive");
    if (!(admissibility.xi_min > 0.0 && admissibility.xi_min < admissibility.xi_max))
      throw config_error("admissibility xi-range is invalid");
    if (!(orthogonality.bound > 0.0)) throw config_error("orthogonality.bound must be positive");
  }

  static RunConfig from_stream(std::istream& in) {
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw config_error(std::string("config: ") + e.what());
    }
    RunConfig cfg;
    for (const auto& [section, body] : tree) {
      if (body.empty()) throw config_error("config: key '" + section + "' outside a section");
      for (const auto& [key, value] : body) cfg.set(section + "." + key, value.data());
    }
    cfg.validate();
    return cfg;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config '" + path + "'");
    return from_stream(in);
  }

  /// The explicit path if given, else $LINDEP_CONFIG, else the defaults.
  static RunConfig resolve(const std::optional<std::string>& path) {
    if (path && !path->empty()) return load(*path);
    if (const char* env = std::getenv("LINDEP_CONFIG"); env && *env) return load(env);
    return {};
  }

 private:
  using Setter = std::function<void(RunConfig&, const std::string&)>;

  static double real(const std::string& v) {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  }
  static std::size_t count(const std::string& v) {
    const double x = real(v);
    if (!(x >= 1.0) || x != static_cast<double>(static_cast<std::size_t>(x)))
      throw std::invalid_argument("not a positive integer");
    return static_cast<std::size_t>(x);
  }

  static const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"grid.lower", [](RunConfig& c, const std::string& v) { c.grid_lower = real(v); }},
        {"grid.upper", [](RunConfig& c, const std::string& v) { c.grid_upper = real(v); }},
        {"grid.points", [](RunConfig& c, const std::string& v) { c.grid_points = count(v); }},
        {"tolerance.identity", [](RunConfig& c, const std::string& v) { c.identity_tolerance = real(v); }},
        {"tolerance.exact", [](RunConfig& c, const std::string& v) { c.exact_tolerance = real(v); }},
        {"tolerance.threshold", [](RunConfig& c, const std::string& v) { c.probe.threshold = real(v); }},
        {"tolerance.floor", [](RunConfig& c, const std::string& v) { c.probe.floor = real(v); }},
        {"tolerance.tail", [](RunConfig& c, const std::string& v) { c.admissibility.tail_tolerance = real(v); }},
        {"admissibility.xi_min", [](RunConfig& c, const std::string& v) { c.admissibility.xi_min = real(v); }},
        {"admissibility.xi_max", [](RunConfig& c, const std::string& v) { c.admissibility.xi_max = real(v); }},
        {"admissibility.panels", [](RunConfig& c, const std::string& v) { c.admissibility.panels = count(v); }},
        {"haar.a_min", [](RunConfig& c, const std::string& v) { c.calderon.a_min = real(v); }},
        {"haar.a_max", [](RunConfig& c, const std::string& v) { c.calderon.a_max = real(v); }},
        {"haar.a_panels", [](RunConfig& c, const std::string& v) { c.calderon.a_panels = count(v); }},
        {"haar.a_nodes", [](RunConfig& c, const std::string& v) { c.calderon.a_nodes = count(v); }},
        {"haar.b_bound", [](RunConfig& c, const std::string& v) { c.calderon.b_bound = real(v); }},
        {"haar.b_panels", [](RunConfig& c, const std::string& v) { c.calderon.b_panels = count(v); }},
        {"haar.b_nodes", [](RunConfig& c, const std::string& v) { c.calderon.b_nodes = count(v); }},
        {"orthogonality.bound", [](RunConfig& c, const std::string& v) { c.orthogonality.bound = real(v); }},
        {"orthogonality.panels", [](RunConfig& c, const std::string& v) { c.orthogonality.panels = count(v); }},
        {"orthogonality.nodes", [](RunConfig& c, const std::string& v) { c.orthogonality.nodes = count(v); }},
        {"run.seed", [](RunConfig& c, const std::string& v) { c.seed = std::stoull(v); }},
        {"output.text", [](RunConfig& c, const std::string& v) { c.text_output = v; }},
        {"output.jsonl", [](RunConfig& c, const std::string& v) { c.jsonl_output = v; }},
    };
    return table;
  }
};

}  // namespace lindep
