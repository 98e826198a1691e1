#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qdirac/errors.hpp"
#include "qdirac/oracle.hpp"
#include "qdirac/scan.hpp"
#include "qdirac/stepsolve.hpp"
#include "qdirac/version.hpp"

namespace {

using namespace qdirac;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerify = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return scan::format_double(v); }

std::string fmt(Complex c) {
  return "(" + fmt(c.real()) + ", " + fmt(c.imag()) + ")";
}

nlohmann::json cjson(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

void parse_grid(const std::string& text, int& nx, int& ny) {
  const auto pos = text.find('x');
  if (pos == std::string::npos)
    throw std::invalid_argument("--grid expects NXxNY, e.g. 201x201");
  try {
    nx = std::stoi(text.substr(0, pos));
    ny = std::stoi(text.substr(pos + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid expects NXxNY, e.g. 201x201");
  }
}

void parse_range(const std::string& text, double& lo, double& hi) {
  const auto pos = text.find(':');
  if (pos == std::string::npos)
    throw std::invalid_argument("range flags expect a:b, e.g. 0:2");
  try {
    lo = std::stod(text.substr(0, pos));
    hi = std::stod(text.substr(pos + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("range flags expect a:b, e.g. 0:2");
  }
}

/// All numeric flags share the unit system fixed by --mass; internally
/// everything is rescaled to units of m.
struct PointArgs {
  double energy = 2.0;
  double v0 = 0.0;
  double w0_abs = 0.0;
  double w0_arg = 0.0;
  double mass = 1.0;
  double tol = 1e-9;
  std::string format = "text";
};

void add_common_flags(CLI::App* cmd, PointArgs& a, bool need_energy) {
  auto* e = cmd->add_option("--energy", a.energy, "incoming energy E");
  if (need_energy) e->required();
  cmd->add_option("--v0", a.v0, "complex potential V0");
  cmd->add_option("--w0-abs", a.w0_abs, "pure quaternionic potential |W0|");
  cmd->add_option("--w0-arg", a.w0_arg, "phase of W0 in radians");
  cmd->add_option("--mass", a.mass, "particle mass m (sets the unit)");
}

int run_point(const PointArgs& a) {
  if (!(a.mass > 0.0)) throw std::domain_error("--mass must be positive");
  const Kinematics k(a.energy / a.mass, 1.0);
  const StepPotential pot{a.v0 / a.mass, std::polar(a.w0_abs / a.mass, a.w0_arg)};

  const Momenta mo = momenta(k, pot);
  const ZoneClassification zc = classify_zone(k, pot, a.tol);

  auto velocity_or = [&](Branch b) -> std::pair<bool, double> {
    try {
      return {true, velocity(k, pot, b)};
    } catch (const std::domain_error&) {
      return {false, 0.0};
    }
  };
  const auto [vm_ok, vm] = velocity_or(Branch::minus);
  const auto [vp_ok, vp] = velocity_or(Branch::plus);
  const SpinorCoefficients c = coefficients(k, pot);

  if (a.format == "json") {
    nlohmann::json j{
        {"version", kVersion},
        {"inputs",
         {{"E_over_m", k.E},
          {"V0_over_m", pot.V0},
          {"W0_abs_over_m", pot.w0_abs()},
          {"W0_arg", a.w0_arg}}},
        {"zone", zone_letter(zc.zone)},
        {"boundaries", {{"lower_over_m", zc.lower}, {"upper_over_m", zc.upper}}},
        {"delta", mo.delta},
        {"q_minus_sq", mo.q_minus_sq},
        {"q_plus_sq", mo.q_plus_sq},
        {"Q_minus_sq", mo.Q_minus_sq},
        {"Q_plus_sq", mo.Q_plus_sq},
        {"Q_minus", cjson(mo.Q_minus)},
        {"Q_plus", cjson(mo.Q_plus)},
        {"coefficients",
         {{"A_minus", cjson(c.A_minus)},
          {"A_plus", cjson(c.A_plus)},
          {"M_minus", cjson(c.M_minus)},
          {"M_plus", cjson(c.M_plus)},
          {"N_minus", cjson(c.N_minus)},
          {"N_plus", cjson(c.N_plus)}}},
    };
    j["v_minus"] = vm_ok ? nlohmann::json(vm) : nlohmann::json(nullptr);
    j["v_plus"] = vp_ok ? nlohmann::json(vp) : nlohmann::json(nullptr);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "point: E = " << fmt(k.E) << " m, V0 = " << fmt(pot.V0)
            << " m, |W0| = " << fmt(pot.w0_abs()) << " m, arg W0 = "
            << fmt(a.w0_arg) << "\n";
  std::cout << "zone: " << zone_letter(zc.zone) << "   boundaries: lower = "
            << fmt(zc.lower) << " m, upper = " << fmt(zc.upper) << " m\n";
  std::cout << "delta      = " << fmt(mo.delta) << "\n";
  std::cout << "q_minus_sq = " << fmt(mo.q_minus_sq)
            << "   q_plus_sq = " << fmt(mo.q_plus_sq) << "\n";
  std::cout << "Q_minus_sq = " << fmt(mo.Q_minus_sq)
            << "   Q_plus_sq = " << fmt(mo.Q_plus_sq) << "\n";
  std::cout << "Q_minus    = " << fmt(mo.Q_minus)
            << "   Q_plus = " << fmt(mo.Q_plus) << "\n";
  std::cout << "v_minus    = "
            << (vm_ok ? fmt(vm) : std::string("undefined (no oscillating solution)"))
            << "\n";
  std::cout << "v_plus     = "
            << (vp_ok ? fmt(vp) : std::string("undefined (no oscillating solution)"))
            << "\n";
  std::cout << "A_minus = " << fmt(c.A_minus) << "   A_plus = " << fmt(c.A_plus)
            << "\n";
  std::cout << "M_minus = " << fmt(c.M_minus) << "   M_plus = " << fmt(c.M_plus)
            << "\n";
  std::cout << "N_minus = " << fmt(c.N_minus) << "   N_plus = " << fmt(c.N_plus)
            << "\n";
  return kExitOk;
}

int run_spinor(const PointArgs& a, const std::string& branch,
               const std::string& spin, double z) {
  if (!(a.mass > 0.0)) throw std::domain_error("--mass must be positive");
  const Kinematics k(a.energy / a.mass, 1.0);
  const StepPotential pot{a.v0 / a.mass, std::polar(a.w0_abs / a.mass, a.w0_arg)};
  const Branch br = branch == "plus" ? Branch::plus : Branch::minus;
  const Spin sp = spin == "down" ? Spin::down : Spin::up;

  const Momenta mo = momenta(k, pot);
  const Complex q = br == Branch::plus ? mo.Q_plus : mo.Q_minus;
  const QSpinor psi = br == Branch::plus ? psi_plus(z, sp, k, pot)
                                         : psi_minus(z, sp, k, pot);
  const double res = oracle::residual_norm(psi, q, k, pot);

  std::cout << "spinor: branch = " << branch << ", spin = " << spin
            << ", z = " << fmt(z) << " (1/m), Q = " << fmt(q) << " m\n";
  for (int i = 0; i < 4; ++i) {
    std::cout << "component " << i << ": u = " << fmt(psi.u(i))
              << "   w = " << fmt(psi.w(i)) << "\n";
  }
  std::cout << "residual = " << fmt(res) << "\n";
  return kExitOk;
}

int run_tunneling(double v0, double w0_abs, bool w0_given, double mass) {
  if (!(mass > 0.0)) throw std::domain_error("--mass must be positive");
  const double v = v0 / mass;
  double w = w0_abs / mass;
  if (!w0_given) {
    // point on the circle |W0|^2 + (V0 - m)^2 = m^2
    if (v < 0.0 || v > 2.0)
      throw std::domain_error("--v0 must lie in [0, 2m] when --w0-abs is omitted");
    w = std::sqrt(v * (2.0 - v));
    std::cout << "w0_over_m = " << fmt(w) << " (circle point)\n";
  }
  const StepPotential pot{v, {w, 0.0}};
  const double range = tunneling_range(pot, 1.0);
  const double upper = std::hypot(w, v + 1.0);
  const double lower = std::max(1.0, std::hypot(w, v - 1.0));
  std::cout << "lower_over_m = " << fmt(lower) << "\n";
  std::cout << "upper_over_m = " << fmt(upper) << "\n";
  std::cout << "delta_E_over_m = " << fmt(range) << "\n";
  return kExitOk;
}

int run_scan(const scan::ScanSpec& spec, const std::string& format,
             const std::string& output) {
  const std::vector<scan::Cell> cells = scan::run(spec);

  std::ostringstream body;
  if (format == "json") {
    body << scan::to_json(spec, cells).dump(2) << "\n";
  } else {
    scan::write_csv(body, cells);
  }

  if (output == "-") {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + output);
  out << body.str();
  out.flush();
  if (!out) throw IoError("failed writing output file: " + output);
  return kExitOk;
}

int run_verify(std::uint64_t seed, int n_points, const std::string& output,
               const std::string& fault_name) {
  oracle::SuiteOptions opts;
  opts.seed = seed;
  opts.n_points = n_points;
  if (fault_name == "delta-sign")
    opts.fault = oracle::FaultInjection::flip_delta_sign;
  else if (!fault_name.empty())
    throw std::invalid_argument("unknown fault: " + fault_name);

  const oracle::SuiteResult result = oracle::run_suite(opts);
  const std::string text = to_json(result).dump(2) + "\n";

  if (output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + output);
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing output file: " + output);
  }

  if (!result.all_pass()) {
    for (const auto* r : result.failures()) {
      std::cerr << "FAIL " << r->check << ": analytic = " << fmt(r->analytic)
                << ", oracle = " << fmt(r->oracle)
                << ", rel_error = " << fmt(r->rel_error)
                << ", tolerance = " << fmt(r->tolerance) << "\n";
    }
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"step-potential solutions of the quaternionic Dirac equation"};
  app.set_version_flag("--version", qdirac::kVersion);
  app.require_subcommand(1);

  PointArgs point_args;
  auto* point_cmd = app.add_subcommand("point", "evaluate one kinematic point");
  add_common_flags(point_cmd, point_args, true);
  point_cmd->add_option("--tol", point_args.tol, "zone boundary tolerance");
  point_cmd->add_option("--format", point_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  PointArgs spinor_args;
  std::string spinor_branch;
  std::string spinor_spin = "up";
  double spinor_z = 0.0;
  auto* spinor_cmd = app.add_subcommand("spinor", "explicit spinor components");
  add_common_flags(spinor_cmd, spinor_args, true);
  spinor_cmd->add_option("--branch", spinor_branch, "momentum branch")
      ->required()
      ->check(CLI::IsMember({"plus", "minus"}));
  spinor_cmd->add_option("--spin", spinor_spin, "spin choice")
      ->check(CLI::IsMember({"up", "down"}));
  spinor_cmd->add_option("--z", spinor_z, "position z > 0 (units 1/m)");

  double tun_v0 = 0.0, tun_w0 = 0.0, tun_mass = 1.0;
  auto* tun_cmd = app.add_subcommand("tunneling", "evanescent energy window");
  tun_cmd->add_option("--v0", tun_v0, "complex potential V0")->required();
  auto* tun_w0_opt = tun_cmd->add_option("--w0-abs", tun_w0,
                                         "pure quaternionic potential |W0|; "
                                         "circle point when omitted");
  tun_cmd->add_option("--mass", tun_mass, "particle mass m");

  scan::ScanSpec spec;
  std::string scan_quantity;
  std::string scan_grid = "201x201";
  std::string scan_xrange = "0:2";
  std::string scan_yrange = "0:2";
  std::string scan_format = "csv";
  std::string scan_output = "-";
  double scan_mass = 1.0;
  auto* scan_cmd = app.add_subcommand("scan", "grid scan over (V0, |W0|)");
  scan_cmd->add_option("--quantity", scan_quantity, "cell quantity")
      ->required()
      ->check(CLI::IsMember(
          {"tunneling_range", "v_plus_sq", "v_minus_sq", "zone"}));
  scan_cmd->add_option("--grid", scan_grid, "NXxNY (default 201x201)");
  scan_cmd->add_option("--xrange", scan_xrange, "V0 range a:b");
  scan_cmd->add_option("--yrange", scan_yrange, "|W0| range a:b");
  scan_cmd->add_option("--energy", spec.energy, "incoming energy (default 2)");
  scan_cmd->add_option("--w0-arg", spec.w0_arg, "phase of W0 in radians");
  scan_cmd->add_option("--mass", scan_mass, "particle mass m");
  scan_cmd->add_option("--tol", spec.boundary_tol, "zone boundary tolerance");
  scan_cmd->add_option("--format", scan_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--output", scan_output, "output path, - for stdout");

  std::uint64_t verify_seed = 1;
  int verify_n = 1000;
  std::string verify_output = "-";
  std::string verify_fault;
  auto* verify_cmd = app.add_subcommand("verify", "run the oracle suite");
  verify_cmd->add_option("--seed", verify_seed, "random seed");
  verify_cmd->add_option("--n-points", verify_n, "number of random points");
  verify_cmd->add_option("--output", verify_output, "report path, - for stdout");
  verify_cmd->add_option("--inject-fault", verify_fault, "test-only fault hook")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (point_cmd->parsed()) return run_point(point_args);
    if (spinor_cmd->parsed())
      return run_spinor(spinor_args, spinor_branch, spinor_spin, spinor_z);
    if (tun_cmd->parsed())
      return run_tunneling(tun_v0, tun_w0, tun_w0_opt->count() > 0, tun_mass);
    if (scan_cmd->parsed()) {
      if (!(scan_mass > 0.0)) throw std::domain_error("--mass must be positive");
      parse_grid(scan_grid, spec.nx, spec.ny);
      parse_range(scan_xrange, spec.x_min, spec.x_max);
      parse_range(scan_yrange, spec.y_min, spec.y_max);
      spec.energy /= scan_mass;
      spec.x_min /= scan_mass;
      spec.x_max /= scan_mass;
      spec.y_min /= scan_mass;
      spec.y_max /= scan_mass;
      spec.validate();
      return run_scan(spec, scan_format, scan_output);
    }
    if (verify_cmd->parsed())
      return run_verify(verify_seed, verify_n, verify_output, verify_fault);
  } catch (const qdirac::DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
