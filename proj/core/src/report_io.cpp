#include "bohr/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>

namespace bohr {

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [name, value] : report.constants_used) constants[name] = json_number(value);
  return {{"formula_id", report.formula_id},
          {"role", std::string(to_string(report.role))},
          {"value", json_number(report.value)},
          {"params", report.params},
          {"constants_used", constants},
          {"default_constants", report.default_constants},
          {"certified", report.certified},
          {"note", report.note}};
}

nlohmann::json to_json(const BoundPair& pair) {
  return {{"lower", to_json(pair.lower)}, {"upper", to_json(pair.upper)}};
}

nlohmann::json to_json(const PsiPair& pair) {
  return {{"psi1", to_json(pair.psi1)}, {"psi2", to_json(pair.psi2)}};
}

nlohmann::json to_json(const RadiusEstimate& e) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& fm : e.per_function)
    per.push_back({{"id", fm.id},
                   {"critical_r", json_number(fm.critical_r)},
                   {"margin_at_r", json_number(fm.margin_at_r)},
                   {"sup_norm", json_number(fm.sup_norm)},
                   {"sup_certified", fm.sup_certified}});
  nlohmann::json j{{"lower_bracket", json_number(e.lower_bracket)},
                   {"upper_bracket", json_number(e.upper_bracket)},
                   {"family_id", e.family_id},
                   {"params",
                    {{"space", e.space},
                     {"p", json_number(e.p)},
                     {"lambda", json_number(e.lambda)},
                     {"U", e.u},
                     {"tol", json_number(e.tol)}}},
                   {"per_function_margins", per},
                   {"certified", e.certified},
                   {"violation_found", e.violation_found},
                   {"note", e.note}};
  j["homogeneous_degree"] = e.homogeneous_degree ? nlohmann::json(*e.homogeneous_degree)
                                                 : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const CheckReport& r) {
  return {{"name", r.name},
          {"pass", r.pass},
          {"worst_margin", json_number(r.worst_margin)},
          {"uncertainty", json_number(r.uncertainty)},
          {"witnesses", r.witnesses},
          {"details", r.details}};
}

nlohmann::json to_json(const CounterexampleResult& c) {
  nlohmann::json witness = nlohmann::json::array();
  for (const auto& z : c.witness) witness.push_back({z.real(), z.imag()});
  return {{"k", c.k ? nlohmann::json(*c.k) : nlohmann::json(nullptr)},
          {"witness", witness},
          {"witness_modulus", c.witness_modulus},
          {"lhs", json_number(c.lhs)},
          {"rhs", json_number(c.rhs)},
          {"margin", json_number(c.margin)}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,formula_id,role,value,certified\n";
  for (const auto& row : rows)
    out << row.n << ',' << row.report.formula_id << ',' << to_string(row.report.role) << ','
        << format_double(row.report.value) << ',' << (row.report.certified ? "true" : "false")
        << '\n';
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "formula_id,role,value,certified\n";
  for (const auto& r : reports)
    out << r.formula_id << ',' << to_string(r.role) << ',' << format_double(r.value) << ','
        << (r.certified ? "true" : "false") << '\n';
}

void write_check_table(std::ostream& out, const std::vector<CheckReport>& reports) {
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %-5s %14s %14s\n", "name", "pass", "worst_margin",
                "uncertainty");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-24s %-5s %14.6g %14.6g\n", r.name.c_str(),
                  r.pass ? "yes" : "no", r.worst_margin, r.uncertainty);
    out << line;
  }
}

void write_bounds_table(std::ostream& out, const std::vector<BoundReport>& reports) {
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-6s %22s %-9s\n", "formula_id", "role", "value",
                "certified");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-12s %-6s %22.15g %-9s\n", r.formula_id.c_str(),
                  std::string(to_string(r.role)).c_str(), r.value, r.certified ? "yes" : "no");
    out << line;
  }
}

}  // namespace bohr
