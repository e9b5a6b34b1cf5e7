#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "momentous/config.hpp"

namespace momentous {

/// Closed interval used as a pass band.
struct Band {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct ReportRow {
  std::string quantity;
  std::optional<double> reference;
  std::optional<double> computed;
  std::optional<double> reference_classical;
  std::optional<double> computed_classical;
  std::optional<Band> band;  // rows without a band are informational
  std::string note;

  std::optional<double> relative_deviation() const;
  std::optional<bool> pass() const;
};

struct Report {
  std::string name;
  std::vector<ReportRow> rows;
  nlohmann::json details;

  const ReportRow& row(const std::string& quantity) const;
  bool all_pass() const;  // over banded rows
};

enum class ReportKind { table1, table2, makarov_metrics };

std::string to_string(ReportKind kind);
ReportKind report_kind_from_string(const std::string& name);

/// Settings each report needs on top of the defaults; user config wins.
nlohmann::json report_preset(ReportKind kind);

Report table1_report(const RunConfig& config);
Report table2_report(const RunConfig& config);
Report makarov_report(const RunConfig& config);
Report make_report(ReportKind kind, const RunConfig& config);

std::string format_report(const Report& report);
nlohmann::json report_json(const Report& report, const RunConfig& config);

}  // namespace momentous
