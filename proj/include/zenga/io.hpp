#ifndef ZENGA_IO_HPP
#define ZENGA_IO_HPP

#include <filesystem>
#include <string>

#include "zenga/models.hpp"
#include "zenga/simulation.hpp"
#include "zenga/surfaces.hpp"

namespace zenga {

struct DatasetSpec {
  std::filesystem::path path;
  std::string x1_col = "x1";
  std::string x2_col = "x2";
  char delimiter = ',';
  bool has_header = true;
};

// CSV ingestion with row-numbered diagnostics; rejects non-positive, missing
// and non-finite entries.
BivariateSample load_dataset(const DatasetSpec& spec);

struct RescaleResult {
  BivariateSample sample;
  double scale1;  // column maxima the data was divided by
  double scale2;
};

// Divide each coordinate by its column maximum, mapping into (0, 1].
RescaleResult rescale_unit(const BivariateSample& sample);

enum class EmitFormat { json, csv_long };
EmitFormat emit_format_from_string(const std::string& s);

// Serialisation is byte-stable for a fixed grid: doubles are printed with
// shortest round-trip formatting and JSON keys are emitted in sorted order.
// Missing cells become JSON nulls / empty CSV fields.
std::string surface_to_json(const SurfaceGrid& grid);
std::string surface_to_csv_long(const SurfaceGrid& grid);

void emit_surface(const SurfaceGrid& grid, EmitFormat format,
                  const std::filesystem::path& out_path);

// Inverse of surface_to_json.
SurfaceGrid load_surface_json(const std::filesystem::path& path);

// Monte Carlo configuration file (JSON object mirroring McConfig fields).
McConfig load_mc_config(const std::filesystem::path& path);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace zenga

#endif  // ZENGA_IO_HPP
