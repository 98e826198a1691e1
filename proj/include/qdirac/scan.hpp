#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdirac/potential.hpp"
#include "qdirac/stepsolve.hpp"

namespace qdirac::scan {

enum class Quantity { tunneling_range, v_plus_sq, v_minus_sq, zone };

const char* quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);

/// Grid over (V0/m, |W0|/m). Cells are independent; the parallel and serial
/// kernels produce bit-identical results, ordered x-major.
struct ScanSpec {
  double x_min = 0.0, x_max = 2.0;
  int nx = 201;
  double y_min = 0.0, y_max = 2.0;
  int ny = 201;
  Quantity quantity = Quantity::v_plus_sq;
  double energy = 2.0;  // units of m
  double w0_arg = 0.0;  // radians
  double boundary_tol = 1e-9;

  void validate() const;
};

/// Sentinel for cells where the requested quantity is undefined
/// (evanescent cells of v_minus_sq); the zone column disambiguates.
inline constexpr double kUndefinedCell = -1.0;

struct Cell {
  double v0 = 0.0;
  double w0 = 0.0;
  double value = 0.0;
  Zone zone = Zone::diffusion;

  bool operator==(const Cell&) const = default;
};

std::vector<Cell> run(const ScanSpec& spec);         // OpenMP kernel
std::vector<Cell> run_serial(const ScanSpec& spec);  // reference kernel

/// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

/// Header row v0_over_m,w0_over_m,value,zone then one row per cell.
void write_csv(std::ostream& os, const std::vector<Cell>& cells);

nlohmann::json to_json(const ScanSpec& spec, const std::vector<Cell>& cells);

}  // namespace qdirac::scan
