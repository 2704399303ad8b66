#pragma once

#include <string>
#include <vector>

#include "capflow/field.hpp"
#include "capflow/geometry.hpp"
#include "capflow/grid.hpp"
#include "capflow/stepper.hpp"

namespace capflow {

/// Numbers are serialized with 17 significant digits, so a write/read
/// round trip reproduces every double bit-exactly.
std::string format_double(double x);

void write_grid_fn_csv(const GridFn& u, const std::string& path,
                       const std::string& value_header = "value");

/// Reads a two-column CSV ("xi,value" or "xi,f") written by this artifact.
/// The grid is reconstructed from the node column; the mode is supplied by
/// the caller.
GridFn read_grid_fn_csv(const std::string& path, GridMode mode);

void write_geometry_csv(const GridFn& f, const std::string& path);

void write_diagnostics_csv(const std::vector<Diagnostics>& series, const std::string& path);

struct FieldSliceRow {
  double x1, x2, v1, v2, q;
};
void write_field_slice_csv(const std::vector<FieldSliceRow>& rows, const std::string& path);

}  // namespace capflow
