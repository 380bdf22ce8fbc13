#include "hypoflow/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hypoflow {

int Report::passed() const {
  int p = 0;
  for (const auto& c : checks) p += c.pass ? 1 : 0;
  return p;
}

void Report::check_le(const std::string& name, const std::string& inputs,
                      double measured, double threshold) {
  checks.push_back({name, digest(inputs), measured, threshold, measured <= threshold});
}

void Report::check_true(const std::string& name, const std::string& inputs, bool ok) {
  checks.push_back({name, digest(inputs), ok ? 1.0 : 0.0, 1.0, ok});
}

std::string digest(const std::string& inputs) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : inputs) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.config_echo) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["inputs_digest"] = c.inputs_digest;
    jc["measured"] = c.measured;
    jc["threshold"] = c.threshold;
    jc["pass"] = c.pass;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["summary"] = {{"total", report.total()},
                  {"passed", report.passed()},
                  {"failed", report.failed()}};
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "# suite," << report.suite << "\n";
  for (const auto& [k, v] : report.config_echo) out << "# config," << k << "," << v << "\n";
  out << "name,inputs_digest,measured,threshold,pass\n";
  for (const auto& c : report.checks)
    out << c.name << "," << c.inputs_digest << "," << fmt17(c.measured) << ","
        << fmt17(c.threshold) << "," << (c.pass ? "1" : "0") << "\n";
  out << "# summary,total=" << report.total() << ",passed=" << report.passed()
      << ",failed=" << report.failed() << "\n";
  return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

}  // namespace hypoflow
