// Runs the twelve acceptance criteria on the default market with seed 42 and
// prints one line per criterion. Full reports go to the path given as the
// first argument, one JSON object per line.

#include <cstdio>
#include <fstream>

#include "procurement/experiments.hpp"

using namespace procurement;

int main(int argc, char** argv) {
  BatteryOptions opt;
  opt.timing = true;
  const auto reports = run_battery(MarketConfig{}, 42, opt);
  std::ofstream json;
  if (argc > 1) json.open(argv[1]);
  int failed = 0;
  for (const auto& r : reports) {
    std::printf("%-6s %s  max_violation=%s tolerance=%s runtime_s=%s  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
                fmt12(r.max_violation).c_str(), fmt12(r.tolerance).c_str(),
                r.runtime_s ? fmt12(*r.runtime_s).c_str() : "-", r.check.c_str());
    if (!r.pass) {
      ++failed;
      std::printf("       note: %s\n", r.note.c_str());
    }
    if (json) json << r.to_json_line() << "\n";
  }
  std::printf("%zu criteria, %d failed\n", reports.size(), failed);
  return failed == 0 && reports.size() == 12 ? 0 : 1;
}
