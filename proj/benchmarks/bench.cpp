#include <benchmark/benchmark.h>

#include "support/generators.hpp"
#include "twdesc/globalize.hpp"
#include "twdesc/linalg.hpp"

namespace twdesc {
namespace {

using testing::Rng;

void BM_Compose(benchmark::State& state) {
  Rng rng(11);
  const SitePtr site = testing::random_site(rng, Field::rationals(), {4, 3, true});
  const FamilyPtr fam = testing::random_family(rng, site, 0, 2, static_cast<int>(state.range(0)));
  const HomCochain u = testing::random_cochain(rng, fam, fam, 1, 0);
  const HomCochain v = testing::random_cochain(rng, fam, fam, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(compose(u, v));
}
BENCHMARK(BM_Compose)->Arg(1)->Arg(2)->Arg(3);

void BM_McResidual(benchmark::State& state) {
  Rng rng(12);
  const SitePtr site = testing::random_site(rng, Field::prime(7), {4, 3, true});
  const auto t = testing::random_valid_twisted(rng, site, 0, 1, static_cast<int>(state.range(0)),
                                               testing::TwistedKind::kGaugedCone);
  for (auto _ : state) benchmark::DoNotOptimize(mc_residual(t.object));
}
BENCHMARK(BM_McResidual)->Arg(1)->Arg(2);

void BM_Globalize(benchmark::State& state) {
  Rng rng(13);
  const SitePtr site = testing::random_site(rng, Field::rationals(), {4, 3, true});
  const GlobalComplex e = testing::random_global(rng, site, 0, 2, 2);
  const TwistedComplex t = twist_object(e);
  for (auto _ : state) benchmark::DoNotOptimize(globalize(t));
}
BENCHMARK(BM_Globalize);

void BM_Rref(benchmark::State& state) {
  Rng rng(14);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = testing::random_matrix(rng, Field::rationals(), n, n + 2);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
}  // namespace twdesc

BENCHMARK_MAIN();
