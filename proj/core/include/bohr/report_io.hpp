#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohr/bounds.hpp"
#include "bohr/checks.hpp"
#include "bohr/estimator.hpp"

namespace bohr {

// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
nlohmann::json json_number(double v);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const BoundPair& pair);
nlohmann::json to_json(const PsiPair& pair);
nlohmann::json to_json(const RadiusEstimate& estimate);
nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const CounterexampleResult& result);

// Pretty JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

struct SweepRow {
  std::size_t n;
  BoundReport report;
};

// Columns n,formula_id,role,value,certified; values printed with %.17g.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// One row per report: formula_id,role,value,certified.
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports);

// Plain-text table with columns name, pass, worst_margin, uncertainty.
void write_check_table(std::ostream& out, const std::vector<CheckReport>& reports);
void write_bounds_table(std::ostream& out, const std::vector<BoundReport>& reports);

// Shortest round-trip decimal form of v (inf written as "inf").
std::string format_double(double v);

}  // namespace bohr
