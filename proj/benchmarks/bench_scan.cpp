// Times the OpenMP grid kernel against the serial reference on identical
// scans and checks that both produce bit-identical cells.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdirac/scan.hpp"

using qdirac::scan::Cell;
using qdirac::scan::Quantity;
using qdirac::scan::ScanSpec;

namespace {

template <typename F>
double best_of(F&& f, int repeats, std::vector<Cell>& out) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    out = f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 601;
  int repeats = 3;
  if (argc > 1) n = std::atoi(argv[1]);
  if (argc > 2) repeats = std::atoi(argv[2]);
  if (n < 2 || repeats < 1) {
    std::fprintf(stderr, "usage: %s [grid_side] [repeats]\n", argv[0]);
    return 1;
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("grid: %dx%d, best of %d runs\n", n, n, repeats);
  std::printf("%-16s %12s %12s %9s\n", "quantity", "serial[ms]", "openmp[ms]",
              "speedup");

  int mismatches = 0;
  for (const Quantity q : {Quantity::tunneling_range, Quantity::v_plus_sq,
                           Quantity::v_minus_sq, Quantity::zone}) {
    ScanSpec spec;
    spec.nx = spec.ny = n;
    spec.quantity = q;

    std::vector<Cell> serial_cells, parallel_cells;
    const double t_serial =
        best_of([&] { return qdirac::scan::run_serial(spec); }, repeats,
                serial_cells);
    const double t_parallel =
        best_of([&] { return qdirac::scan::run(spec); }, repeats, parallel_cells);

    const bool same = serial_cells == parallel_cells;
    mismatches += !same;
    std::printf("%-16s %12.2f %12.2f %8.2fx%s\n",
                qdirac::scan::quantity_name(q), t_serial, t_parallel,
                t_serial / t_parallel, same ? "" : "  MISMATCH");
  }

  return mismatches == 0 ? 0 : 1;
}
