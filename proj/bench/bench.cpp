// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "blobshift/automata.hpp"
#include "blobshift/blobfractal.hpp"
#include "blobshift/pathcover.hpp"
#include "blobshift/paths.hpp"
#include "blobshift/primes.hpp"
#include "blobshift/substitution.hpp"

using namespace blobshift;

namespace {

Pattern random_pattern(std::int64_t side, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(p);
  Pattern out(2, Alphabet("01"), Box{{0, 0}, side, side});
  for (std::int64_t y = 0; y < side; ++y)
    for (std::int64_t x = 0; x < side; ++x)
      out.set({x, y}, coin(gen) ? 1 : 0);
  return out;
}

std::vector<paths::MoveWord> tau3_language() {
  auto w = paths::decode(subst::iterate_1d(subst::path_tau3(), "+", 10),
                         paths::default_coding(Alphabet("+-")));
  return paths::factors({w}, 16);
}

fractal::BlobHierarchy cantor_hierarchy() {
  auto word = subst::iterate_1d(subst::cantor_substitution(), "1", 7);
  std::vector<std::int64_t> radii;
  for (std::int64_t i = 0, pow3 = 1; i < 7; ++i, pow3 *= 3)
    radii.push_back(pow3 + 1);
  return fractal::build_hierarchy(Pattern::from_word(word, Alphabet("01")).with_margin(radii.back()), radii);
}

void BM_SieveParallel(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(primes::sieve(state.range(0)));
}
void BM_SieveSerial(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(primes::serial::sieve(state.range(0)));
}
BENCHMARK(BM_SieveParallel)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveSerial)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_GliderParallel(benchmark::State &state) {
  auto rule = ca::xor_rule();
  for (auto _ : state)
    benchmark::DoNotOptimize(ca::find_glider(rule, static_cast<int>(state.range(0)), 16));
}
void BM_GliderSerial(benchmark::State &state) {
  auto rule = ca::xor_rule();
  for (auto _ : state)
    benchmark::DoNotOptimize(ca::serial::find_glider(rule, static_cast<int>(state.range(0)), 16));
}
BENCHMARK(BM_GliderParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GliderSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GeodesicParallel(benchmark::State &state) {
  auto p = random_pattern(state.range(0), 0.6, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(cover::geodesic_witness(p, 1));
}
void BM_GeodesicSerial(benchmark::State &state) {
  auto p = random_pattern(state.range(0), 0.6, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(cover::serial::geodesic_witness(p, 1));
}
BENCHMARK(BM_GeodesicParallel)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeodesicSerial)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_CutPathParallel(benchmark::State &state) {
  auto lang = tau3_language();
  for (auto _ : state)
    benchmark::DoNotOptimize(paths::cut_path_search(lang, 1, 16));
}
void BM_CutPathSerial(benchmark::State &state) {
  auto lang = tau3_language();
  for (auto _ : state)
    benchmark::DoNotOptimize(paths::serial::cut_path_search(lang, 1, 16));
}
BENCHMARK(BM_CutPathParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CutPathSerial)->Unit(benchmark::kMillisecond);

void BM_AxiomsParallel(benchmark::State &state) {
  auto h = cantor_hierarchy();
  for (auto _ : state)
    benchmark::DoNotOptimize(fractal::verify_axioms(h));
}
void BM_AxiomsSerial(benchmark::State &state) {
  auto h = cantor_hierarchy();
  for (auto _ : state)
    benchmark::DoNotOptimize(fractal::serial::verify_axioms(h));
}
BENCHMARK(BM_AxiomsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AxiomsSerial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
