// Timing comparison of the OpenMP window-scan kernels against their serial
// reference implementations. Also cross-checks that both produce identical
// reports before timing them.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "rbwv/cybe.hpp"
#include "rbwv/products.hpp"
#include "rbwv/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rbwv;

namespace {

double time_of(const std::function<void()>& fn, int repeats) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i)
    fn();
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  return elapsed.count() / repeats;
}

void row(const std::string& name, double serial, double parallel) {
  std::printf("%-36s %10.4fs %10.4fs %8.2fx\n", name.c_str(), serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp: parallel kernels fall back to serial\n");
#endif
  std::printf("%-36s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    OperatorParams p;
    p.k = 1;
    p.beta = rat(1);
    p.vartheta = rat(2);
    auto op = make_operator(Family::V0_III, p);
    auto a = verify_rb_serial(op, rat(0), 14);
    auto b = verify_rb_parallel(op, rat(0), 14);
    if (!a.pass() || !b.pass())
      return 1;
    row("verify_rb V0_III N=14",
        time_of([&] { verify_rb_serial(op, rat(0), 14); }, 3),
        time_of([&] { verify_rb_parallel(op, rat(0), 14); }, 3));
  }

  {
    OperatorParams p;
    p.k = 1;
    p.l = 2;
    p.gamma = rat(1);
    auto r = make_cybe_solution(CybeSolutionId::CYBE_W0_III, p);
    auto a = verify_formal_cybe_serial(r, 8);
    auto b = verify_formal_cybe_parallel(r, 8);
    if (!a.pass() || !b.pass())
      return 1;
    row("verify_formal_cybe r_1^{2,1} N=8",
        time_of([&] { verify_formal_cybe_serial(r, 8); }, 2),
        time_of([&] { verify_formal_cybe_parallel(r, 8); }, 2));
  }

  {
    OperatorParams p;
    p.alpha = rat(2);
    p.mu = rat(1);
    auto s = induced_postlie(make_operator(Family::V1_PLUS, p));
    auto a = scan_postlie_serial(s, 8);
    auto b = scan_postlie(s, 8);
    if (!a.pass() || !b.pass())
      return 1;
    row("scan_postlie V1_PLUS N=8",
        time_of([&] { scan_postlie_serial(s, 8); }, 2),
        time_of([&] { scan_postlie(s, 8); }, 2));
  }

  {
    auto op = make_operator(Family::W1_EMPTY, {});
    auto a = lifting_obstruction_serial(op, 40);
    auto b = lifting_obstruction_parallel(op, 40);
    if (a.failures.size() != b.failures.size())
      return 1;
    row("lifting_obstruction -Id_W N=40",
        time_of([&] { lifting_obstruction_serial(op, 40); }, 3),
        time_of([&] { lifting_obstruction_parallel(op, 40); }, 3));
  }

  return 0;
}
