// Serial reference vs OpenMP kernels. Usage: symcap_bench [scale]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "symcap/ebk.hpp"
#include "symcap/montecarlo.hpp"
#include "symcap/squeeze.hpp"

using namespace symcap;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const long scale = argc > 1 ? std::atol(argv[1]) : 1;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial[s]", "omp[s]", "speedup");

  NonsqueezeConfig nc;
  nc.n = 3;
  nc.trials = 20000 * scale;
  nc.seed = 1;
  NonsqueezeReport a, b;
  const double ts = seconds([&] { a = nonsqueeze_verify_serial(nc); });
  const double tp = seconds([&] { b = nonsqueeze_verify(nc); });
  row("nonsqueeze n=3", ts, tp, a.min_projection_ratio == b.min_projection_ratio && a.violations == b.violations);

  const Matrix s = random_symplectic(2, 5).matrix();
  const long samples = 1000000 * scale;
  McEstimate p1, p2, i1, i2;
  const double ps = seconds([&] { p1 = mc_projection_area_serial(s, 1.0, 1, samples, 3); });
  const double pp = seconds([&] { p2 = mc_projection_area(s, 1.0, 1, samples, 3); });
  row("mc projection", ps, pp, p1.area == p2.area);
  const double is = seconds([&] { i1 = mc_intersection_area_serial(s, 1.0, 1, samples, 4); });
  const double ip = seconds([&] { i2 = mc_intersection_area(s, 1.0, 1, samples, 4); });
  row("mc intersection", is, ip, i1.area == i2.area);

  const auto k = ActionHamiltonian::power(4, 1.5);
  const std::vector<int> m{2, 2, 2, 2};
  EBKSpectrum e1, e2;
  const int n_max = 20 + static_cast<int>(scale);
  const double es = seconds([&] { e1 = energy_levels_serial(k, m, n_max, 1.0); });
  const double ep = seconds([&] { e2 = energy_levels(k, m, n_max, 1.0); });
  row("ebk grid n=4", es, ep, e1.entries.back().energy == e2.entries.back().energy);
  return 0;
}
