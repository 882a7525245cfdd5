#include "panelbreak/panel.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "panelbreak/errors.hpp"
#include "panelbreak/util.hpp"

namespace panelbreak {

namespace {

bool is_missing_token(const std::string& s) {
  return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == ".";
}

double parse_real(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse_error, where + ": non-numeric value '" + s + "'");
  }
}

long long parse_count(const std::string& s, const std::string& where) {
  const double v = parse_real(s, where);
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 1e-9 || r < 0)
    throw Error(ErrorKind::parse_error, where + ": expected a nonnegative count, got '" + s + "'");
  return static_cast<long long>(r);
}

int require_column(const CsvTable& t, const std::string& name, const std::string& source) {
  const int idx = t.column(name);
  if (idx < 0)
    throw Error(ErrorKind::missing_column, source + ": column '" + name + "' not found in header");
  return idx;
}

}  // namespace

int PanelDataset::control_index(const std::string& name) const {
  for (std::size_t i = 0; i < control_names.size(); ++i)
    if (control_names[i] == name) return static_cast<int>(i);
  return -1;
}

int PanelDataset::fe_index(const std::string& name) const {
  for (std::size_t i = 0; i < fe_names.size(); ++i)
    if (fe_names[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> PanelDataset::variable(const std::string& name) const {
  std::vector<double> out;
  out.reserve(rows.size());
  const int ci = control_index(name);
  if (ci >= 0) {
    for (const auto& r : rows) out.push_back(r.controls[static_cast<std::size_t>(ci)]);
    return out;
  }
  for (const auto& r : rows) {
    if (name == "scale") out.push_back(r.scale);
    else if (name == "inspections") out.push_back(static_cast<double>(r.inspections));
    else if (name == "successes") out.push_back(static_cast<double>(r.successes));
    else if (name == "facilities") out.push_back(static_cast<double>(r.facilities));
    else if (name == "density") out.push_back(r.density);
    else if (name == "period") out.push_back(static_cast<double>(r.period));
    else if (name == "ln_scale") out.push_back(std::log(r.scale));
    else if (name == "oai_rate")
      out.push_back(r.inspections > 0
                        ? static_cast<double>(r.successes) / static_cast<double>(r.inspections)
                        : std::numeric_limits<double>::quiet_NaN());
    else if (name == "effort")
      out.push_back(r.inspections > 0 && r.scale > 0
                        ? std::log(static_cast<double>(r.inspections)) - std::log(r.scale)
                        : std::numeric_limits<double>::quiet_NaN());
    else if (name == "oai_per_est")
      out.push_back(r.scale > 0 ? static_cast<double>(r.successes) / r.scale
                                : std::numeric_limits<double>::quiet_NaN());
    else
      throw Error(ErrorKind::unknown_variable, "unknown variable '" + name + "'");
  }
  return out;
}

PanelDataset ingest_panel(std::istream& source, const ColumnMapping& mapping,
                          const std::string& source_name) {
  const CsvTable t = read_csv(source, source_name);

  const int c_unit = require_column(t, mapping.unit, source_name);
  const int c_period = require_column(t, mapping.period, source_name);
  const int c_scale = require_column(t, mapping.scale, source_name);
  const int c_insp = require_column(t, mapping.inspections, source_name);
  const int c_succ = require_column(t, mapping.successes, source_name);
  const int c_group = mapping.group.empty() ? -1 : require_column(t, mapping.group, source_name);
  const int c_fac = mapping.facilities.empty() ? -1 : require_column(t, mapping.facilities, source_name);
  const int c_dens = mapping.density.empty() ? -1 : require_column(t, mapping.density, source_name);

  std::vector<int> c_controls;
  for (const auto& name : mapping.controls)
    c_controls.push_back(require_column(t, name, source_name));
  std::vector<int> c_fe;
  for (const auto& [factor, col] : mapping.fe)
    c_fe.push_back(require_column(t, col, source_name));

  PanelDataset ds;
  ds.control_names = mapping.controls;
  for (const auto& [factor, col] : mapping.fe) ds.fe_names.push_back(factor);
  ds.has_group = c_group >= 0;
  ds.has_density = c_dens >= 0;
  ds.has_facilities = c_fac >= 0;
  ds.provenance.source = source_name;

  ds.rows.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& rec = t.rows[i];
    const std::string where = source_name + " row " + std::to_string(i + 1);
    PanelRow row;
    row.unit_id = rec[static_cast<std::size_t>(c_unit)];
    if (row.unit_id.empty())
      throw Error(ErrorKind::parse_error, where + ": empty unit id");
    row.period = static_cast<int>(parse_count(rec[static_cast<std::size_t>(c_period)], where + " (period)"));
    row.scale = static_cast<double>(parse_count(rec[static_cast<std::size_t>(c_scale)], where + " (scale)"));
    row.inspections = parse_count(rec[static_cast<std::size_t>(c_insp)], where + " (inspections)");
    row.successes = parse_count(rec[static_cast<std::size_t>(c_succ)], where + " (successes)");
    if (row.successes > row.inspections)
      throw Error(ErrorKind::parse_error,
                  where + ": successes (" + std::to_string(row.successes) +
                      ") exceed inspections (" + std::to_string(row.inspections) +
                      "); the invariant successes <= inspections must hold");
    if (c_group >= 0) row.group_id = rec[static_cast<std::size_t>(c_group)];
    if (c_fac >= 0) {
      const auto& f = rec[static_cast<std::size_t>(c_fac)];
      row.facilities = is_missing_token(f) ? -1 : parse_count(f, where + " (facilities)");
    }
    if (c_dens >= 0) {
      const auto& d = rec[static_cast<std::size_t>(c_dens)];
      row.density = is_missing_token(d) ? std::numeric_limits<double>::quiet_NaN()
                                        : parse_real(d, where + " (density)");
    }
    row.controls.reserve(c_controls.size());
    for (std::size_t k = 0; k < c_controls.size(); ++k) {
      const auto& v = rec[static_cast<std::size_t>(c_controls[k])];
      row.controls.push_back(is_missing_token(v)
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : parse_real(v, where + " (" + mapping.controls[k] + ")"));
    }
    row.fe_labels.reserve(c_fe.size());
    for (int idx : c_fe) row.fe_labels.push_back(rec[static_cast<std::size_t>(idx)]);
    ds.rows.push_back(std::move(row));
  }

  std::stable_sort(ds.rows.begin(), ds.rows.end(), [](const PanelRow& a, const PanelRow& b) {
    return std::tie(a.unit_id, a.period, a.group_id) < std::tie(b.unit_id, b.period, b.group_id);
  });

  for (std::size_t i = 1; i < ds.rows.size(); ++i) {
    const auto& a = ds.rows[i - 1];
    const auto& b = ds.rows[i];
    if (a.unit_id == b.unit_id && a.period == b.period && a.group_id == b.group_id)
      throw Error(ErrorKind::duplicate_key,
                  source_name + ": duplicate key (unit=" + a.unit_id + ", period=" +
                      std::to_string(a.period) + ", group=" + a.group_id + ")");
  }
  return ds;
}

PanelDataset ingest_panel_file(const std::string& path, const ColumnMapping& mapping) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::parse_error, "cannot open input file: " + path);
  return ingest_panel(in, mapping, path);
}

PanelDataset apply_sample_filters(const PanelDataset& ds, const SampleFilter& f,
                                  FilterReport* report) {
  if (f.year_min > f.year_max)
    throw Error(ErrorKind::invalid_config, "sample filter: year_min > year_max");
  if (f.min_scale < 0 || f.min_inspections < 0)
    throw Error(ErrorKind::invalid_config, "sample filter: thresholds must be >= 0");

  const long long min_scale = std::max<long long>(1, f.min_scale);
  const long long min_insp = std::max<long long>(1, f.min_inspections);

  long long drop_period = 0, drop_scale = 0, drop_insp = 0, drop_controls = 0;
  PanelDataset out = ds;
  out.rows.clear();
  for (const auto& r : ds.rows) {
    if (r.period < f.year_min || r.period > f.year_max) { ++drop_period; continue; }
    if (static_cast<long long>(r.scale) < min_scale) { ++drop_scale; continue; }
    if (r.inspections < min_insp) { ++drop_insp; continue; }
    if (f.require_controls) {
      bool missing = false;
      for (double c : r.controls)
        if (std::isnan(c)) { missing = true; break; }
      if (missing) { ++drop_controls; continue; }
    }
    out.rows.push_back(r);
  }
  if (report) {
    report->dropped = {{"outside_period_window", drop_period},
                       {"below_min_scale", drop_scale},
                       {"below_min_inspections", drop_insp},
                       {"missing_controls", drop_controls}};
    report->retained = static_cast<long long>(out.rows.size());
  }
  if (out.rows.empty())
    throw Error(ErrorKind::empty_sample, "no rows survive the sample filters");
  return out;
}

SummaryStats summarize(const PanelDataset& ds, const std::vector<std::string>& vars) {
  SummaryStats stats;
  for (const auto& name : vars) {
    std::vector<double> v = ds.variable(name);
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
    VariableSummary s;
    s.name = name;
    s.n = static_cast<long long>(v.size());
    if (!v.empty()) {
      std::sort(v.begin(), v.end());
      s.mean = mean_of(v);
      s.sd = sd_of(v);
      s.p25 = nearest_rank_percentile(v, 25);
      s.p50 = nearest_rank_percentile(v, 50);
      s.p75 = nearest_rank_percentile(v, 75);
      s.min = v.front();
      s.max = v.back();
    }
    stats.variables.push_back(std::move(s));
  }
  return stats;
}

void emit_panel(const PanelDataset& ds, std::ostream& out) {
  std::vector<std::string> header = {"unit", "period"};
  if (ds.has_group) header.push_back("group");
  header.insert(header.end(), {"scale", "inspections", "successes"});
  if (ds.has_facilities) header.push_back("facilities");
  if (ds.has_density) header.push_back("density");
  for (const auto& c : ds.control_names) header.push_back(c);
  for (const auto& f : ds.fe_names) header.push_back("fe_" + f);
  write_csv_row(out, header);

  for (const auto& r : ds.rows) {
    std::vector<std::string> rec = {r.unit_id, std::to_string(r.period)};
    if (ds.has_group) rec.push_back(r.group_id);
    rec.push_back(std::to_string(static_cast<long long>(r.scale)));
    rec.push_back(std::to_string(r.inspections));
    rec.push_back(std::to_string(r.successes));
    if (ds.has_facilities)
      rec.push_back(r.facilities < 0 ? "" : std::to_string(r.facilities));
    if (ds.has_density)
      rec.push_back(std::isnan(r.density) ? "" : format_real(r.density, 17));
    for (double c : r.controls)
      rec.push_back(std::isnan(c) ? "" : format_real(c, 17));
    for (const auto& l : r.fe_labels) rec.push_back(l);
    write_csv_row(out, rec);
  }
}

ColumnMapping canonical_mapping(const PanelDataset& ds) {
  ColumnMapping m;
  m.unit = "unit";
  m.period = "period";
  m.scale = "scale";
  m.inspections = "inspections";
  m.successes = "successes";
  if (ds.has_group) m.group = "group";
  if (ds.has_facilities) m.facilities = "facilities";
  if (ds.has_density) m.density = "density";
  m.controls = ds.control_names;
  for (const auto& f : ds.fe_names) m.fe.emplace_back(f, "fe_" + f);
  return m;
}

}  // namespace panelbreak
