// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace laughlin {

namespace {

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw ConfigError("invalid value '" + text + "' for " + key);
  }
  return value;
}

template <>
std::string parse_value<std::string>(const std::string&, const std::string& text) {
  return boost::algorithm::trim_copy(text);
}

template <>
bool parse_value<bool>(const std::string& key, const std::string& text) {
  const auto t = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("invalid boolean '" + text + "' for " + key);
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(" "), boost::algorithm::token_compress_on);
  std::vector<T> out;
  for (auto& p : parts) {
    boost::algorithm::trim(p);
    if (!p.empty()) out.push_back(parse_value<T>(key, p));
  }
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

// Shortest text that parses back to the same double.
std::string format(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}
std::string format(const std::string& s) { return s; }
std::string format(bool b) { return b ? "true" : "false"; }
template <typename T>
std::string format(T x) requires std::is_integral_v<T> { return std::to_string(x); }

template <typename T>
std::string format_list(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ' ';
    out += format(xs[i]);
  }
  return out;
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

template <typename T>
Field scalar(const char* section, const char* key, T& ref) {
  const std::string name = std::string(section) + "." + key;
  return {section, key, [&ref, name](const std::string& v) { ref = parse_value<T>(name, v); },
          [&ref] { return format(ref); }};
}

template <typename T>
Field list(const char* section, const char* key, std::vector<T>& ref) {
  const std::string name = std::string(section) + "." + key;
  return {section, key, [&ref, name](const std::string& v) { ref = parse_list<T>(name, v); },
          [&ref] { return format_list(ref); }};
}

// Lists in INI values are space separated; commas are reserved for family
// whitelists such as "families:10,20,30".
std::vector<Field> fields(RunConfig& c) {
  return {
      scalar("system", "n_electrons", c.system.n_electrons),
      scalar("system", "circumference", c.system.circumference),
      scalar("system", "n_orbitals", c.system.n_orbitals),
      scalar("system", "com", c.system.com),
      scalar("system", "scan_com", c.system.scan_com),
      scalar("hamiltonian", "truncation", c.truncation),
      scalar("eigen", "count", c.eigen_count),
      scalar("eigen", "dense_limit", c.eigen.dense_limit),
      scalar("eigen", "seed", c.eigen.seed),
      scalar("eigen", "max_krylov", c.eigen.max_krylov),
      scalar("eigen", "max_restarts", c.eigen.max_restarts),
      scalar("eigen", "residual_tol", c.eigen.residual_tol),
      scalar("eigen", "degeneracy_tol", c.eigen.degeneracy_tol),
      scalar("ansatz", "name", c.ansatz.name),
      scalar("ansatz", "params", c.ansatz.params),
      scalar("ansatz", "params_file", c.ansatz.params_file),
      scalar("optimizer", "hop_attempts", c.optimizer.hop_attempts),
      scalar("optimizer", "local_iter_cap", c.optimizer.local_iter_cap),
      scalar("optimizer", "restarts", c.optimizer.restarts),
      scalar("optimizer", "tol", c.optimizer.tol),
      scalar("optimizer", "seed", c.optimizer.seed),
      scalar("optimizer", "hop_step", c.optimizer.hop_step),
      scalar("optimizer", "temperature", c.optimizer.temperature),
      scalar("optimizer", "fd_step", c.optimizer.fd_step),
      scalar("sampling", "shots", c.sampling.shots),
      scalar("sampling", "readout_flip", c.sampling.readout_flip),
      scalar("sampling", "depolarizing", c.sampling.depolarizing),
      scalar("sampling", "layers", c.sampling.layers),
      scalar("sampling", "seed", c.sampling.seed),
      scalar("sampling", "resamples", c.sampling.resamples),
      scalar("sampling", "level", c.sampling.level),
      scalar("sampling", "source", c.sampling.source),
      scalar("sampling", "window_lo", c.sampling.window_lo),
      scalar("sampling", "window_hi", c.sampling.window_hi),
      scalar("entropy", "n_electrons", c.entropy.n_electrons),
      scalar("entropy", "cut", c.entropy.cut),
      list("entropy", "circumferences", c.entropy.circumferences),
      list("entropy", "truncations", c.entropy.truncations),
      list("sweep", "circumferences", c.sweep.circumferences),
      list("sweep", "truncations", c.sweep.truncations),
      list("circuit", "n_electrons", c.circuit.n_electrons),
      scalar("circuit", "ladder", c.circuit.ladder),
      scalar("circuit", "star_target", c.circuit.star_target),
      scalar("circuit", "cross_check", c.circuit.cross_check),
      scalar("circuit", "write_gates", c.circuit.write_gates),
      list("krylov", "truncations", c.krylov.truncations),
      scalar("run", "out", c.out),
      scalar("run", "threads", c.threads),
      scalar("run", "seed", c.seed),
  };
}

Field& find_field(std::vector<Field>& fs, const std::string& section, const std::string& key) {
  for (auto& f : fs) {
    if (f.section == section && f.key == key) return f;
  }
  throw ConfigError("unknown config key " + section + "." + key);
}

}  // namespace

SystemGeometry SystemConfig::geometry() const {
  try {
    if (n_orbitals > 0 && n_orbitals != 3 * n_electrons - 2) {
      return SystemGeometry::nonstandard(n_electrons, n_orbitals, circumference);
    }
    return SystemGeometry::laughlin(n_electrons, circumference);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig RunConfig::parse(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig c;
  auto fs = fields(c);
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config key '" + section + "' must live in a section");
    for (const auto& [key, value] : body) {
      find_field(fs, section, key).set(value.get_value<std::string>());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse(in);
}

void RunConfig::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
  }
  auto fs = fields(*this);
  find_field(fs, assignment.substr(0, dot), assignment.substr(dot + 1, eq - dot - 1))
      .set(assignment.substr(eq + 1));
}

void RunConfig::apply_seed(std::uint64_t s) {
  seed = s;
  optimizer.seed = s;
  sampling.seed = s;
}

void RunConfig::validate() const {
  const auto g = system.geometry();
  if (system.com >= g.n_orbitals) throw ConfigError("system.com must be below n_orbitals");
  if (eigen_count < 1) throw ConfigError("eigen.count must be positive");
  if (threads < 1) throw ConfigError("run.threads must be positive");
  try {
    (void)parse_truncation(truncation);
    for (const auto& t : entropy.truncations) (void)parse_truncation(t);
    for (const auto& t : sweep.truncations) (void)parse_truncation(t);
    for (const auto& t : krylov.truncations) (void)parse_truncation(t);
    (void)parse_ladder(circuit.ladder);
    (void)AnsatzSpec::preset(ansatz.name, g);
    optimizer.validate();
    NoiseModel{sampling.readout_flip, sampling.depolarizing, sampling.layers}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (ansatz.params != "published" && ansatz.params != "zeros" && ansatz.params != "file") {
    throw ConfigError("ansatz.params must be published, zeros or file");
  }
  if (ansatz.params == "file" && ansatz.params_file.empty()) {
    throw ConfigError("ansatz.params = file needs ansatz.params_file");
  }
  if (sampling.source != "ed" && sampling.source != "ansatz") {
    throw ConfigError("sampling.source must be ed or ansatz");
  }
  if (sampling.shots == 0) throw ConfigError("sampling.shots must be positive");
  for (double l : entropy.circumferences) {
    if (!(l > 0.0)) throw ConfigError("circumferences must be positive");
  }
  for (double l : sweep.circumferences) {
    if (!(l > 0.0)) throw ConfigError("circumferences must be positive");
  }
}

void RunConfig::write(std::ostream& out) const {
  auto fs = fields(const_cast<RunConfig&>(*this));
  std::string section;
  for (const auto& f : fs) {
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << f.get() << '\n';
  }
}

Truncation parse_truncation(const std::string& text) {
  if (text == "full") return Truncation::full();
  if (text == "eff") return Truncation::effective();
  if (text == "tt") return Truncation::thin_torus();
  if (text.rfind("range:", 0) == 0) {
    return Truncation::max_range(parse_value<int>("truncation", text.substr(6)));
  }
  if (text.rfind("families:", 0) == 0) {
    std::vector<std::string> parts;
    const std::string body = text.substr(9);
    boost::algorithm::split(parts, body, boost::algorithm::is_any_of(","));
    std::vector<TermFamily> fams;
    for (const auto& p : parts) fams.push_back(parse_family(boost::algorithm::trim_copy(p)));
    return Truncation::families(std::move(fams));
  }
  throw std::invalid_argument("unknown truncation '" + text +
                              "' (expected full, eff, tt, range:r or families:...)");
}

LadderStyle parse_ladder(const std::string& text) {
  if (text == "star") return LadderStyle::star;
  if (text == "chain") return LadderStyle::chain;
  throw std::invalid_argument("unknown ladder '" + text + "' (expected star or chain)");
}

}  // namespace laughlin
