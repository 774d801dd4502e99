#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "noksurf/flag_builder.hpp"
#include "noksurf/polygon.hpp"
#include "noksurf/toric.hpp"
#include "noksurf/zariski.hpp"

using namespace noksurf;

namespace {

RatMatrix diagonal(const std::vector<long>& v) {
  RatMatrix q(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q(i, i) = Rat(v[i]);
  return q;
}

DivisorClass cls(const std::vector<long>& v) {
  std::vector<Rat> c(v.begin(), v.end());
  return DivisorClass(std::move(c));
}

// (2n, -n, ..., -1): ample on the chain below for n <= 10.
DivisorClass witness(std::size_t n) {
  std::vector<long> c{2 * static_cast<long>(n)};
  for (std::size_t i = 0; i < n; ++i) c.push_back(-static_cast<long>(n - i));
  return cls(c);
}

// Plane blown up n times at infinitely near points: chain E_i - E_{i+1}, E_n
// and the line through the first two points.
SurfaceModel chain(std::size_t n) {
  std::vector<long> d{1};
  for (std::size_t i = 0; i < n; ++i) d.push_back(-1);
  std::vector<CurveRecord> curves;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Integer> c(n + 1, 0);
    c[i] = 1;
    if (i < n) c[i + 1] = -1;
    curves.push_back({"C" + std::to_string(i), c, true});
  }
  std::vector<Integer> line(n + 1, 0);
  line[0] = 1;
  line[1] = -1;
  line[2] = -1;
  curves.push_back({"L", line, true});
  return SurfaceModel(diagonal(d), curves, witness(n));
}

std::vector<std::string> chain_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("C" + std::to_string(i));
  return out;
}

void BM_Zariski(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SurfaceModel m = chain(n);
  // witness plus the whole chain: every chain curve ends up in the support
  DivisorClass d = witness(n);
  for (std::size_t i = 0; i < n; ++i) d += Rat(static_cast<long>(n)) * m.curve_class(i);
  const auto labels = m.labels();
  for (auto _ : state) benchmark::DoNotOptimize(zariski_decompose(m, d, labels));
}
BENCHMARK(BM_Zariski)->DenseRange(2, 8, 2);

void BM_Polygon(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SurfaceModel base = chain(n);
  const auto labels = chain_labels(n);
  const auto cert = find_ordered_ample_class(base, witness(n), labels, false);
  std::vector<Integer> scaled;
  Integer lcm = 1;
  for (const auto& x : cert.flag_class.coords) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.den().get_mpz_t());
  for (const auto& x : cert.flag_class.coords) scaled.push_back((x * Rat(lcm)).num());
  const SurfaceModel m = base.with_curve({"F", scaled, true});
  const FlagSpec flag{"F", {{"C1", 1}}};
  auto cands = m.labels();
  for (auto _ : state) benchmark::DoNotOptimize(compute_polygon(m, witness(n), flag, cands));
}
BENCHMARK(BM_Polygon)->DenseRange(2, 6, 1);

void BM_OrderedClass(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SurfaceModel m = chain(n);
  const auto labels = chain_labels(n);
  for (auto _ : state) benchmark::DoNotOptimize(find_ordered_ample_class(m, witness(n), labels, false));
}
BENCHMARK(BM_OrderedClass)->DenseRange(2, 6, 1)->Unit(benchmark::kMillisecond);

void BM_RealizationScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SurfaceModel m = chain(n);
  const auto labels = chain_labels(n);
  const int top = mv(m, labels);
  for (auto _ : state) {
    for (int v = 3; v <= top; ++v) benchmark::DoNotOptimize(realize_vertex_count(m, witness(n), labels, v));
  }
}
BENCHMARK(BM_RealizationScan)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

void BM_ToricCrosscheck(benchmark::State& state) {
  const ToricFan dp6{{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}};
  const ToricDivisor div{{1, 2, 2, 1, 2, 2}};
  for (auto _ : state) {
    for (std::size_t i = 1; i <= 6; ++i) benchmark::DoNotOptimize(crosscheck(dp6, div, i));
  }
}
BENCHMARK(BM_ToricCrosscheck);

}  // namespace

BENCHMARK_MAIN();
