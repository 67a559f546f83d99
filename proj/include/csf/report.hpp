#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace csf {

/// One line of the machine-readable report.
struct ReportRow {
  std::string command;
  std::string family;
  std::string metric;  // axiom id or metric name
  std::string status;
  std::string witness;  // JSON
  std::string lhs;
  std::string rhs;
  std::string gap;
  std::uint64_t seed = 0;
};

std::string csv_header();
std::string csv_field(const std::string& value);
std::string to_csv(const ReportRow& row);
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace csf
