#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "panelbreak/csv.hpp"

namespace panelbreak {

// Maps required/optional panel concepts onto header names of the input
// table. Empty string means the concept is absent from this dataset.
struct ColumnMapping {
  std::string unit;         // county FIPS-like key
  std::string period;       // integer year
  std::string scale;        // establishment count S
  std::string inspections;  // trial count
  std::string successes;    // OAI count
  std::string group;        // optional sector key
  std::string facilities;   // optional unique-facility count
  std::string density;      // optional density proxy D
  std::vector<std::string> controls;                          // numeric controls
  std::vector<std::pair<std::string, std::string>> fe;        // (factor, column)
};

struct PanelRow {
  std::string unit_id;
  int period = 0;
  std::string group_id;          // empty when dataset has no group column
  double scale = 0.0;            // S, integer-valued count stored exactly
  long long inspections = 0;
  long long successes = 0;
  long long facilities = -1;     // -1 = absent
  double density = std::numeric_limits<double>::quiet_NaN();  // NaN = absent
  std::vector<double> controls;       // aligned with PanelDataset::control_names, NaN = missing
  std::vector<std::string> fe_labels; // aligned with PanelDataset::fe_names
};

struct Provenance {
  std::string source;
  std::string options;
};

struct PanelDataset {
  std::vector<PanelRow> rows;  // sorted by (unit_id, period, group_id)
  std::vector<std::string> control_names;
  std::vector<std::string> fe_names;
  bool has_group = false;
  bool has_density = false;
  bool has_facilities = false;
  Provenance provenance;

  // Named numeric view used by summarize() and variable lookups. Recognizes
  // the stored fields, control names, and the derived outcomes
  // (oai_rate, effort, oai_per_est, ln_scale). Throws UnknownVariable.
  std::vector<double> variable(const std::string& name) const;

  int control_index(const std::string& name) const;  // -1 when absent
  int fe_index(const std::string& name) const;       // -1 when absent
};

struct SampleFilter {
  int year_min = std::numeric_limits<int>::min();
  int year_max = std::numeric_limits<int>::max();
  long long min_scale = 1;
  long long min_inspections = 1;
  bool require_controls = true;
};

struct FilterReport {
  // (reason, rows dropped), fixed reason order; rows are counted once under
  // the first reason that rejects them.
  std::vector<std::pair<std::string, long long>> dropped;
  long long retained = 0;
};

struct VariableSummary {
  std::string name;
  long long n = 0;
  double mean = 0, sd = 0, p25 = 0, p50 = 0, p75 = 0, min = 0, max = 0;
};

struct SummaryStats {
  std::vector<VariableSummary> variables;
};

PanelDataset ingest_panel(std::istream& source, const ColumnMapping& mapping,
                          const std::string& source_name);
PanelDataset ingest_panel_file(const std::string& path, const ColumnMapping& mapping);

PanelDataset apply_sample_filters(const PanelDataset& ds, const SampleFilter& f,
                                  FilterReport* report = nullptr);

SummaryStats summarize(const PanelDataset& ds, const std::vector<std::string>& vars);

// Re-emits the validated panel with canonical column names; re-ingesting the
// emitted table under canonical_mapping() round-trips the rows.
void emit_panel(const PanelDataset& ds, std::ostream& out);
ColumnMapping canonical_mapping(const PanelDataset& ds);

}  // namespace panelbreak
