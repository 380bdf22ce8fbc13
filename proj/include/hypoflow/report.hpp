#ifndef HYPOFLOW_REPORT_HPP
#define HYPOFLOW_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace hypoflow {

struct CheckRecord {
  std::string name;
  std::string inputs_digest;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Machine-readable suite outcome. Serialized output is a pure function of
// the configuration and seed; the wall time is reported on the console only.
struct Report {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<CheckRecord> checks;
  double wall_ms = 0.0;

  int total() const { return static_cast<int>(checks.size()); }
  int passed() const;
  int failed() const { return total() - passed(); }
  bool all_pass() const { return failed() == 0; }

  // measured <= threshold
  void check_le(const std::string& name, const std::string& inputs, double measured,
                double threshold);
  // boolean check, encoded as measured in {0,1} against threshold 1
  void check_true(const std::string& name, const std::string& inputs, bool ok);
};

// FNV-1a hash of the check's input description, printed as 16 hex digits
std::string digest(const std::string& inputs);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

// write via a temp file in the same directory, then rename
void atomic_write(const std::string& path, const std::string& content);

}  // namespace hypoflow

#endif
