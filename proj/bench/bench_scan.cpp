// Serial against OpenMP for the two batch drivers. The range argument
// selects the parallel path.

#include <benchmark/benchmark.h>

#include "udw/oracle.hpp"
#include "udw/scan.hpp"

using namespace udw;

namespace {

ScanConfig gaussian_grid() {
    ScanConfig c;
    c.subcommand = Subcommand::Scan;
    c.options["kind"] = "gaussian";
    c.params = {{"L", 3.0}, {"delta", 0.0}, {"R", 0.5}, {"omega", 1.0}};
    std::vector<double> ls, ws;
    for (int i = 0; i < 8; ++i) ls.push_back(1.0 + 0.5 * i);
    for (int i = 0; i < 6; ++i) ws.push_back(0.5 * i);
    c.axes = {{"L", ls}, {"omega", ws}};
    return c;
}

void scan_gaussian(benchmark::State& state) {
    const ScanConfig c = gaussian_grid();
    for (auto _ : state) benchmark::DoNotOptimize(run_scan(c, state.range(0) != 0));
    state.SetItemsProcessed(state.iterations() * 48);
}
BENCHMARK(scan_gaussian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void oracle_batch(benchmark::State& state) {
    const std::vector<OracleCase> cases = random_oracle_cases(8, 2024);
    for (auto _ : state) benchmark::DoNotOptimize(run_oracle_batch(cases, state.range(0) != 0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cases.size()));
}
BENCHMARK(oracle_batch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
