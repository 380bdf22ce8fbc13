#ifndef HYPOFLOW_CONFIG_HPP
#define HYPOFLOW_CONFIG_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypoflow {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain-text experiment configuration:
//   [section]
//   key = value        # trailing comments allowed
// CLI flags override file keys; the fully resolved set is echoed into
// every report.
class ExperimentConfig {
 public:
  void set(const std::string& section, const std::string& key, const std::string& value);
  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback = "") const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_long(const std::string& section, const std::string& key, long fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;

  // insertion order, as "section.key" -> value
  std::vector<std::pair<std::string, std::string>> entries() const;

  // throws ConfigError listing any key outside the allowed set
  void validate(const std::map<std::string, std::set<std::string>>& allowed) const;

  static ExperimentConfig from_file(const std::string& path);
  static std::vector<double> parse_list(const std::string& text);

 private:
  std::vector<std::pair<std::string, std::string>> order_;  // "section.key"
  std::map<std::string, std::string> values_;
};

}  // namespace hypoflow

#endif
