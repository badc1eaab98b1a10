#include "zenga/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace zenga {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

EmitFormat emit_format_from_string(const std::string& s) {
  if (s == "json") return EmitFormat::json;
  if (s == "csv" || s == "csv_long") return EmitFormat::csv_long;
  throw ValidationError("unknown output format: " + s);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == delim) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t data_row,
                  const std::string& col) {
  const std::string cell = trim(raw);
  if (cell.empty()) {
    std::ostringstream msg;
    msg << "row " << data_row << ": missing value in column '" << col << "'";
    throw ValidationError(msg.str());
  }
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    std::ostringstream msg;
    msg << "row " << data_row << ": cannot parse '" << cell << "' in column '"
        << col << "'";
    throw ValidationError(msg.str());
  }
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "row " << data_row << ": non-finite value in column '" << col << "'";
    throw ValidationError(msg.str());
  }
  if (!(v > 0.0)) {
    std::ostringstream msg;
    msg << "row " << data_row << ": non-positive value " << cell
        << " in column '" << col << "'";
    throw ValidationError(msg.str());
  }
  return v;
}

}  // namespace

BivariateSample load_dataset(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw ValidationError("cannot open dataset: " + spec.path.string());

  std::string line;
  std::size_t col1 = 0, col2 = 1;
  if (spec.has_header) {
    if (!std::getline(in, line))
      throw ValidationError("dataset is empty: " + spec.path.string());
    const std::vector<std::string> header = split_line(line, spec.delimiter);
    bool found1 = false, found2 = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string name = trim(header[i]);
      if (name == spec.x1_col) {
        col1 = i;
        found1 = true;
      }
      if (name == spec.x2_col) {
        col2 = i;
        found2 = true;
      }
    }
    if (!found1)
      throw ValidationError("column '" + spec.x1_col + "' not found in header");
    if (!found2)
      throw ValidationError("column '" + spec.x2_col + "' not found in header");
  }

  std::vector<double> a, b;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++data_row;
    const std::vector<std::string> cells = split_line(line, spec.delimiter);
    if (cells.size() <= std::max(col1, col2)) {
      std::ostringstream msg;
      msg << "row " << data_row << ": expected at least "
          << std::max(col1, col2) + 1 << " columns, got " << cells.size();
      throw ValidationError(msg.str());
    }
    a.push_back(parse_cell(cells[col1], data_row, spec.x1_col));
    b.push_back(parse_cell(cells[col2], data_row, spec.x2_col));
  }
  if (a.empty()) throw ValidationError("dataset has no data rows: " + spec.path.string());
  return BivariateSample(std::move(a), std::move(b));
}

RescaleResult rescale_unit(const BivariateSample& sample) {
  double m1 = 0.0, m2 = 0.0;
  for (double v : sample.x1) m1 = std::max(m1, v);
  for (double v : sample.x2) m2 = std::max(m2, v);
  std::vector<double> a(sample.size()), b(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    a[i] = sample.x1[i] / m1;
    b[i] = sample.x2[i] / m2;
  }
  return RescaleResult{BivariateSample(std::move(a), std::move(b)), m1, m2};
}

namespace {

json matrix_to_json(const GridMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double v = m.at(i, j);
      if (std::isnan(v))
        row.push_back(nullptr);
      else
        row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GridMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ValidationError("surface JSON: values must be a non-empty array");
  const std::size_t r = rows.size();
  const std::size_t c = rows[0].size();
  GridMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw ValidationError("surface JSON: ragged value rows");
    for (std::size_t j = 0; j < c; ++j) {
      const json& cell = rows[i][j];
      m.at(i, j) = cell.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                  : cell.get<double>();
    }
  }
  return m;
}

bool is_vector_grid(const SurfaceGrid& g) {
  return g.measures.size() == 2 && g.measures[0] == MeasureTag::I12 &&
         g.measures[1] == MeasureTag::I21;
}

}  // namespace

std::string surface_to_json(const SurfaceGrid& grid) {
  json j;
  j["provenance"] = to_string(grid.provenance);
  j["model"] = grid.model_label;
  if (grid.sample_size) j["sample_n"] = *grid.sample_size;
  j["u1"] = grid.u1_levels;
  j["u2"] = grid.u2_levels;
  if (is_vector_grid(grid)) {
    j["measure"] = "vbzc";
    j["values12"] = matrix_to_json(grid.values[0]);
    j["values21"] = matrix_to_json(grid.values[1]);
  } else if (grid.measures.size() == 1) {
    j["measure"] = to_string(grid.measures[0]);
    j["values"] = matrix_to_json(grid.values[0]);
  } else {
    throw ValidationError("surface_to_json: unsupported measure combination");
  }
  return j.dump(2) + "\n";
}

std::string surface_to_csv_long(const SurfaceGrid& grid) {
  std::ostringstream out;
  const bool vec = is_vector_grid(grid);
  if (vec)
    out << "u1,u2,value12,value21\n";
  else
    out << "u1,u2,value\n";
  auto cell = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
  for (std::size_t i = 0; i < grid.u1_levels.size(); ++i)
    for (std::size_t j = 0; j < grid.u2_levels.size(); ++j) {
      out << format_double(grid.u1_levels[i]) << ','
          << format_double(grid.u2_levels[j]) << ',';
      if (vec)
        out << cell(grid.values[0].at(i, j)) << ',' << cell(grid.values[1].at(i, j));
      else
        out << cell(grid.values[0].at(i, j));
      out << '\n';
    }
  return out.str();
}

void emit_surface(const SurfaceGrid& grid, EmitFormat format,
                  const std::filesystem::path& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + out_path.string());
  out << (format == EmitFormat::json ? surface_to_json(grid)
                                     : surface_to_csv_long(grid));
  if (!out) throw Error("failed writing output file: " + out_path.string());
}

SurfaceGrid load_surface_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open surface file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("surface JSON parse error: " + std::string(e.what()));
  }
  SurfaceGrid grid;
  grid.provenance = provenance_from_string(j.at("provenance").get<std::string>());
  grid.model_label = j.value("model", std::string());
  if (j.contains("sample_n")) grid.sample_size = j["sample_n"].get<std::size_t>();
  grid.u1_levels = j.at("u1").get<std::vector<double>>();
  grid.u2_levels = j.at("u2").get<std::vector<double>>();
  const std::string measure = j.at("measure").get<std::string>();
  if (measure == "vbzc") {
    grid.measures = {MeasureTag::I12, MeasureTag::I21};
    grid.values.push_back(matrix_from_json(j.at("values12")));
    grid.values.push_back(matrix_from_json(j.at("values21")));
  } else {
    grid.measures = {measure_tag_from_string(measure)};
    grid.values.push_back(matrix_from_json(j.at("values")));
  }
  grid.validate();
  return grid;
}

McConfig load_mc_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config JSON parse error: " + std::string(e.what()));
  }
  McConfig cfg;
  if (j.contains("dgp")) {
    const json& d = j["dgp"];
    cfg.dgp.mu1 = d.value("mu1", cfg.dgp.mu1);
    cfg.dgp.mu2 = d.value("mu2", cfg.dgp.mu2);
    cfg.dgp.sigma1 = d.value("sigma1", cfg.dgp.sigma1);
    cfg.dgp.sigma2 = d.value("sigma2", cfg.dgp.sigma2);
    cfg.dgp.rho = d.value("rho", cfg.dgp.rho);
  }
  if (j.contains("points")) {
    cfg.points.clear();
    for (const json& p : j["points"]) {
      if (!p.is_array() || p.size() != 2)
        throw ValidationError("config: each point must be [u1, u2]");
      cfg.points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }
  if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<std::size_t>>();
  if (j.contains("replications")) cfg.replications = j["replications"].get<std::size_t>();
  if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("oracle_n")) cfg.oracle_n = j["oracle_n"].get<std::size_t>();
  if (j.contains("oracle_seed")) cfg.oracle_seed = j["oracle_seed"].get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

}  // namespace zenga
