#include "csf/report.hpp"

namespace csf {

std::string csv_header() { return "command,family,axiom_or_metric,status,witness,lhs,rhs,gap,seed"; }

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const ReportRow& row) {
  std::string line;
  for (const std::string* field :
       {&row.command, &row.family, &row.metric, &row.status, &row.witness, &row.lhs, &row.rhs, &row.gap}) {
    line += csv_field(*field);
    line += ',';
  }
  line += std::to_string(row.seed);
  return line;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& row : rows) out << to_csv(row) << '\n';
}

}  // namespace csf
