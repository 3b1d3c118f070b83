#include "qdm/config_file.hpp"

#include "qdm/basis.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace qdm {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(trim(part));
  return out;
}

double to_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(where + ": '" + text + "' is not a number");
  return v;
}

long to_integer(const std::string& text, const std::string& where) {
  long v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(where + ": '" + text + "' is not an integer");
  return v;
}

bool to_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "off" || text == "no" || text == "0") return false;
  throw ConfigError(where + ": '" + text + "' is not a boolean");
}

Complex to_complex(const std::string& text, const std::string& where) {
  const auto parts = split_commas(text);
  if (parts.size() == 1) return {to_double(parts[0], where), 0.0};
  if (parts.size() == 2) return {to_double(parts[0], where), to_double(parts[1], where)};
  throw ConfigError(where + ": expected 're' or 're, im'");
}

std::vector<double> to_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  for (const auto& part : split_commas(text)) out.push_back(to_double(part, where));
  return out;
}

// "dot3" -> 2
std::size_t numbered_key(const std::string& key, const std::string& prefix, const std::string& section) {
  if (key.rfind(prefix, 0) != 0) throw ConfigError("[" + section + "]: unexpected key '" + key + "'");
  const long n = to_integer(key.substr(prefix.size()), "[" + section + "] " + key);
  if (n < 1) throw ConfigError("[" + section + "] " + key + ": numbering starts at 1");
  return static_cast<std::size_t>(n - 1);
}

template <typename T>
void place(std::vector<std::optional<T>>& slots, std::size_t index, T value, const std::string& what) {
  if (slots.size() <= index) slots.resize(index + 1);
  if (slots[index]) throw ConfigError(what + " defined twice");
  slots[index] = std::move(value);
}

template <typename T>
std::vector<T> compact(std::vector<std::optional<T>>& slots, const std::string& what) {
  std::vector<T> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ConfigError(what + std::to_string(i + 1) + " is missing");
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

void parse_system(const pt::ptree& section, SystemConfig& cfg) {
  for (const auto& [key, node] : section) {
    const std::string value = trim(node.data());
    const std::string where = "[system] " + key;
    if (key == "units") {
      if (value == "angular" || value == "rad/s") cfg.units = FrequencyUnits::angular;
      else if (value == "hz" || value == "Hz") cfg.units = FrequencyUnits::hertz;
      else throw ConfigError(where + ": expected 'angular' or 'hz'");
    } else if (key == "rwa") {
      cfg.rwa = to_bool(value, where);
    } else if (key == "excitation_cap") {
      cfg.excitation_cap = static_cast<int>(to_integer(value, where));
    } else if (key == "excitation_shell") {
      cfg.excitation_shell = static_cast<int>(to_integer(value, where));
    } else {
      throw ConfigError("[system]: unknown key '" + key + "'");
    }
  }
}

void parse_couplings(const pt::ptree& section, SystemConfig& cfg) {
  static const std::regex pattern(R"((gamma|g|eta)((?:\[\s*\d+\s*\])+))");
  static const std::regex index(R"(\[\s*(\d+)\s*\])");
  for (const auto& [key, node] : section) {
    const std::string where = "[couplings] " + key;
    std::smatch m;
    if (!std::regex_match(key, m, pattern)) throw ConfigError(where + ": expected gamma[n][i][j], g[n][i][j][nu] or eta[n][i][j]");
    std::vector<int> idx;
    const std::string indices = m[2].str();
    for (std::sregex_iterator it(indices.begin(), indices.end(), index), end; it != end; ++it)
      idx.push_back(static_cast<int>(to_integer((*it)[1].str(), where)) - 1);
    const std::string name = m[1].str();
    const std::size_t expected = name == "g" ? 4 : 3;
    if (idx.size() != expected) throw ConfigError(where + ": wrong number of indices");
    if (std::any_of(idx.begin(), idx.end(), [](int v) { return v < 0; })) throw ConfigError(where + ": indices are 1-based");
    const Complex value = to_complex(trim(node.data()), where);
    bool inserted = false;
    if (name == "gamma") inserted = cfg.couplings.gamma.emplace(TransitionKey{idx[0], idx[1], idx[2]}, value).second;
    else if (name == "eta") inserted = cfg.couplings.eta.emplace(TransitionKey{idx[0], idx[1], idx[2]}, value).second;
    else inserted = cfg.couplings.g.emplace(FieldKey{idx[0], idx[1], idx[2], idx[3]}, value).second;
    if (!inserted) throw ConfigError(where + " defined twice");
  }
}

void parse_initial(const pt::ptree& section, SystemConfig& cfg) {
  for (const auto& [key, node] : section) {
    BasisLabel label;
    try {
      label = parse_label(key);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("[initial] " + key + ": " + e.what());
    }
    cfg.initial_state.push_back({label.levels, label.photons, to_complex(trim(node.data()), "[initial] " + key)});
  }
}

void parse_simulation(const pt::ptree& section, SimulationSettings& sim) {
  for (const auto& [key, node] : section) {
    const std::string value = trim(node.data());
    const std::string where = "[simulation] " + key;
    if (key == "solver") {
      if (value != "analytic" && value != "euler" && value != "rk4") throw ConfigError(where + ": expected analytic, euler or rk4");
      sim.solver = value;
    } else if (key == "dt") {
      sim.dt = to_double(value, where);
    } else if (key == "t_end") {
      sim.t_end = to_double(value, where);
    } else if (key == "output_stride") {
      const long stride = to_integer(value, where);
      if (stride < 1) throw ConfigError(where + ": must be at least 1");
      sim.output_stride = static_cast<std::size_t>(stride);
    } else {
      throw ConfigError("[simulation]: unknown key '" + key + "'");
    }
  }
}

}  // namespace

ConfigFile parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  ConfigFile out;
  out.text = text;
  std::vector<std::optional<DotSpec>> dots;
  std::vector<std::optional<ModeSpec>> modes;

  for (const auto& [name, section] : tree) {
    if (!section.data().empty()) throw ConfigError("key '" + name + "' outside of any section");
    if (name == "system") {
      parse_system(section, out.system);
    } else if (name == "dots") {
      for (const auto& [key, node] : section)
        place(dots, numbered_key(key, "dot", name), DotSpec{to_list(trim(node.data()), "[dots] " + key)}, key);
    } else if (name == "modes") {
      for (const auto& [key, node] : section)
        place(modes, numbered_key(key, "mode", name), ModeSpec{to_double(trim(node.data()), "[modes] " + key)}, key);
    } else if (name == "couplings") {
      parse_couplings(section, out.system);
    } else if (name == "initial") {
      parse_initial(section, out.system);
    } else if (name == "simulation") {
      parse_simulation(section, out.simulation);
    } else if (name == "concurrence") {
      for (const auto& [key, node] : section) {
        if (key != "n_max") throw ConfigError("[concurrence]: unknown key '" + key + "'");
        out.simulation.concurrence_n_max = static_cast<int>(to_integer(trim(node.data()), "[concurrence] n_max"));
      }
    } else if (name == "spectrum") {
      for (const auto& [key, node] : section) {
        const std::string value = trim(node.data());
        if (key == "label") {
          out.simulation.spectrum_label = value;
        } else if (key == "quantity") {
          if (value != "abs" && value != "re" && value != "im" && value != "complex")
            throw ConfigError("[spectrum] quantity: expected abs, re, im or complex");
          out.simulation.spectrum_quantity = value;
        } else {
          throw ConfigError("[spectrum]: unknown key '" + key + "'");
        }
      }
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
  }
  out.system.dots = compact(dots, "dot");
  out.system.modes = compact(modes, "mode");
  return out;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace qdm
