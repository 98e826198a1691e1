#include "qdirac/scan.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "qdirac/errors.hpp"
#include "qdirac/version.hpp"

namespace qdirac::scan {

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::tunneling_range: return "tunneling_range";
    case Quantity::v_plus_sq: return "v_plus_sq";
    case Quantity::v_minus_sq: return "v_minus_sq";
    case Quantity::zone: return "zone";
  }
  return "?";
}

Quantity quantity_from_name(const std::string& name) {
  if (name == "tunneling_range") return Quantity::tunneling_range;
  if (name == "v_plus_sq") return Quantity::v_plus_sq;
  if (name == "v_minus_sq") return Quantity::v_minus_sq;
  if (name == "zone") return Quantity::zone;
  throw std::invalid_argument("unknown scan quantity: " + name);
}

void ScanSpec::validate() const {
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("scan: grid counts must be at least 2");
  if (!(x_max > x_min) || !(y_max > y_min))
    throw std::invalid_argument("scan: ranges must be non-degenerate");
  if (x_min < 0.0 || y_min < 0.0)
    throw std::invalid_argument("scan: V0 and |W0| ranges must be non-negative");
  if (!(energy > 1.0))
    throw std::invalid_argument("scan: energy must exceed the mass");
}

namespace {

Cell eval_cell(const ScanSpec& spec, double v0, double w0) {
  Cell cell;
  cell.v0 = v0;
  cell.w0 = w0;

  const Kinematics k(spec.energy, 1.0);
  const StepPotential pot{v0, std::polar(w0, spec.w0_arg)};
  cell.zone = classify_zone(k, pot, spec.boundary_tol).zone;

  switch (spec.quantity) {
    case Quantity::tunneling_range:
      cell.value = tunneling_range(pot, 1.0);
      break;
    case Quantity::v_plus_sq: {
      const double v = velocity(k, pot, Branch::plus);
      cell.value = v * v;
      break;
    }
    case Quantity::v_minus_sq: {
      if (momenta(k, pot).Q_minus_sq <= 0.0) {
        cell.value = kUndefinedCell;
      } else {
        const double v = velocity(k, pot, Branch::minus);
        cell.value = v * v;
      }
      break;
    }
    case Quantity::zone:
      cell.value = zone_code(cell.zone);
      break;
  }
  return cell;
}

Cell eval_cell_guarded(const ScanSpec& spec, double v0, double w0) {
  try {
    return eval_cell(spec, v0, w0);
  } catch (const DegeneracyError&) {
    Cell cell;
    cell.v0 = v0;
    cell.w0 = w0;
    cell.value = kUndefinedCell;
    cell.zone = classify_zone(Kinematics(spec.energy, 1.0),
                              StepPotential{v0, std::polar(w0, spec.w0_arg)},
                              spec.boundary_tol)
                    .zone;
    return cell;
  }
}

}  // namespace

std::vector<Cell> run(const ScanSpec& spec) {
  spec.validate();
  const double dx = (spec.x_max - spec.x_min) / (spec.nx - 1);
  const double dy = (spec.y_max - spec.y_min) / (spec.ny - 1);
  std::vector<Cell> cells(static_cast<std::size_t>(spec.nx) * spec.ny);

#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.ny; ++j) {
      const double v0 = spec.x_min + i * dx;
      const double w0 = spec.y_min + j * dy;
      cells[static_cast<std::size_t>(i) * spec.ny + j] =
          eval_cell_guarded(spec, v0, w0);
    }
  }
  return cells;
}

std::vector<Cell> run_serial(const ScanSpec& spec) {
  spec.validate();
  const double dx = (spec.x_max - spec.x_min) / (spec.nx - 1);
  const double dy = (spec.y_max - spec.y_min) / (spec.ny - 1);
  std::vector<Cell> cells(static_cast<std::size_t>(spec.nx) * spec.ny);

  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.ny; ++j) {
      const double v0 = spec.x_min + i * dx;
      const double w0 = spec.y_min + j * dy;
      cells[static_cast<std::size_t>(i) * spec.ny + j] =
          eval_cell_guarded(spec, v0, w0);
    }
  }
  return cells;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // fold the signed zero
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<Cell>& cells) {
  os << "v0_over_m,w0_over_m,value,zone\n";
  for (const Cell& c : cells) {
    os << format_double(c.v0) << ',' << format_double(c.w0) << ','
       << format_double(c.value) << ',' << zone_letter(c.zone) << '\n';
  }
}

nlohmann::json to_json(const ScanSpec& spec, const std::vector<Cell>& cells) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Cell& c : cells) {
    rows.push_back({{"v0", c.v0},
                    {"w0", c.w0},
                    {"value", c.value},
                    {"zone", zone_letter(c.zone)}});
  }
  return {
      {"metadata",
       {{"version", kVersion},
        {"quantity", quantity_name(spec.quantity)},
        {"energy_over_m", spec.energy},
        {"w0_arg", spec.w0_arg},
        {"grid", {{"nx", spec.nx}, {"ny", spec.ny}}},
        {"xrange", {{"min", spec.x_min}, {"max", spec.x_max}}},
        {"yrange", {{"min", spec.y_min}, {"max", spec.y_max}}}}},
      {"rows", rows},
  };
}

}  // namespace qdirac::scan
