#ifndef HYPOFLOW_VERIFY_HPP
#define HYPOFLOW_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hypoflow/models.hpp"
#include "hypoflow/report.hpp"

namespace hypoflow::verify {

// Named check suites over one model; each appends records to the report.
// Suites not applicable to the model append a single trivially-passing
// marker so that empty runs are visible in the output.
void groups_suite(Report& report, const OperatorModel& model, std::uint64_t seed,
                  int tuples = 1000);
void fields_suite(Report& report, const OperatorModel& model, std::uint64_t seed);
void flows_suite(Report& report, const OperatorModel& model, std::uint64_t seed,
                 int cases = 100);
void loops_suite(Report& report, const OperatorModel& model, std::uint64_t seed,
                 int cases = 50);
void kernel_suite(Report& report, const OperatorModel& model, std::uint64_t seed);
void separation_suite(Report& report, const OperatorModel& model, std::uint64_t seed);
void reach_suite(Report& report, const OperatorModel& model, std::uint64_t seed,
                 int n_paths = 2000);
void martin_suite(Report& report, const OperatorModel& model, std::uint64_t seed);
void solver_suite(Report& report, const OperatorModel& model, std::uint64_t seed);

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
void run_suite(Report& report, const std::string& name, const OperatorModel& model,
               std::uint64_t seed);

}  // namespace hypoflow::verify

#endif
