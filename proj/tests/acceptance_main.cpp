// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. `lslab reproduce` emits the same results as JSON.

#include <cstdio>
#include <cstdlib>
#include <thread>

#include "lslab/acceptance.hpp"

int main(int argc, char** argv) {
  lslab::AcceptanceOptions opts;
  unsigned hw = std::thread::hardware_concurrency();
  opts.workers = hw > 0 ? static_cast<int>(hw) : 2;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--quick") opts.scale = 100;
    if (a == "--workers" && i + 1 < argc) opts.workers = std::atoi(argv[++i]);
  }

  auto results = lslab::run_acceptance(opts);
  int fails = 0;
  for (const auto& r : results) {
    std::printf("criterion %02d [%s] (%.1f s) %s -- %s\n", r.id,
                r.pass ? "PASS" : "FAIL", r.seconds, r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++fails;
  }
  std::printf("%d/%d criteria passed\n", static_cast<int>(results.size()) - fails,
              static_cast<int>(results.size()));
  return fails == 0 ? 0 : 1;
}
