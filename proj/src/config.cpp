#include "hypoflow/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hypoflow {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void ExperimentConfig::set(const std::string& section, const std::string& key,
                           const std::string& value) {
  std::string full = section + "." + key;
  if (values_.find(full) == values_.end()) order_.emplace_back(full, value);
  else {
    for (auto& [k, v] : order_)
      if (k == full) v = value;
  }
  values_[full] = value;
}

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
  return values_.count(section + "." + key) > 0;
}

std::string ExperimentConfig::get(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  auto it = values_.find(section + "." + key);
  return it == values_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& section, const std::string& key,
                                    double fallback) const {
  auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    throw ConfigError("config key " + section + "." + key + " is not a number: " +
                      it->second);
  }
}

long ExperimentConfig::get_long(const std::string& section, const std::string& key,
                                long fallback) const {
  auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (...) {
    throw ConfigError("config key " + section + "." + key + " is not an integer: " +
                      it->second);
  }
}

std::vector<double> ExperimentConfig::get_list(const std::string& section,
                                               const std::string& key,
                                               const std::vector<double>& fallback) const {
  auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  return parse_list(it->second);
}

std::vector<double> ExperimentConfig::parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError("bad numeric list element: " + tok);
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  return order_;
}

void ExperimentConfig::validate(
    const std::map<std::string, std::set<std::string>>& allowed) const {
  for (const auto& [full, value] : order_) {
    (void)value;
    size_t dot = full.find('.');
    std::string section = full.substr(0, dot);
    std::string key = full.substr(dot + 1);
    auto sec = allowed.find(section);
    if (sec == allowed.end()) throw ConfigError("unknown config section: [" + section + "]");
    if (sec->second.find(key) == sec->second.end())
      throw ConfigError("unknown config key: " + full);
  }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  ExperimentConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": key outside any section");
    cfg.set(section, key, value);
  }
  return cfg;
}

}  // namespace hypoflow
