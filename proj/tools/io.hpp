#ifndef MORREY_TOOLS_IO_HPP
#define MORREY_TOOLS_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include <morrey/experiments.hpp>
#include <morrey/norms.hpp>
#include <morrey/radial.hpp>

namespace morrey::io
{

using json = nlohmann::ordered_json;

// Finite doubles as numbers; +-inf as the strings "inf"/"-inf"; NaN as null.
json number(double v);
// Shortest text that round-trips a double.
std::string format_double(double v);

// Accepts an array of {lo, hi|null, coeff, exponent} or an object
// {segments: [...], faithful_radius: number|null}.
RadialProfile profile_from_json(const json &j);
// Array form, or the object form when the profile is truncated.
json profile_to_json(const RadialProfile &profile);

json verdict_to_json(const NormVerdict &verdict);
json audit_to_json(const AuditResult &audit);
json report_to_json(const ExperimentReport &report);

// Writes <id>_checks.csv, <id>_parameters.csv and <id>_<table>.csv.
std::vector<std::filesystem::path> write_report_csv(const std::filesystem::path &dir, const ExperimentReport &report);
std::string checks_csv(const ExperimentReport &report);

} // namespace morrey::io

#endif
