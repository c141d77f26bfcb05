#include <benchmark/benchmark.h>

#include "opekit/oracle.hpp"
#include "opekit/parser.hpp"
#include "opekit/render.hpp"
#include "opekit/sugawara.hpp"

using namespace opekit;

namespace {

const ExprContext<RatN>& ctx() {
  static const auto c = symbolic_context();
  return c;
}

void BM_CanonicalizeQuartic(benchmark::State& state) {
  Monomial m;
  m.factors = {make_psi(Charge::plus, FlavorIndex::abstract("l")),
               make_beta(Charge::minus, FlavorIndex::abstract("k")),
               make_psi(Charge::minus, FlavorIndex::abstract("k")),
               make_beta(Charge::plus, FlavorIndex::abstract("l"))};
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize_core(m));
}
BENCHMARK(BM_CanonicalizeQuartic);

void BM_OpeStressTensorSquare(benchmark::State& state) {
  SymbolicExpr t = build_stress_tensor(TensorLabel::free).expr;
  for (auto _ : state) benchmark::DoNotOptimize(ope(t, t, kFullDepth, ctx()));
}
BENCHMARK(BM_OpeStressTensorSquare);

void BM_BuildSugawaraSu(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_stress_tensor(TensorLabel::su0));
}
BENCHMARK(BM_BuildSugawaraSu);

void BM_VerifyDecompositionSu(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_decomposition(Family::su));
}
BENCHMARK(BM_VerifyDecompositionSu);

void BM_BetaSystemSo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(beta_one_loop(Family::so));
}
BENCHMARK(BM_BetaSystemSo);

void BM_OracleSpDecomposition(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(numeric_verify_sp(1));
}
BENCHMARK(BM_OracleSpDecomposition);

void BM_ParseRenderRoundTrip(benchmark::State& state) {
  SymbolicExpr t = build_stress_tensor(TensorLabel::gl11).expr;
  std::string src = render_expr(t);
  for (auto _ : state) benchmark::DoNotOptimize(parse_expr(src));
}
BENCHMARK(BM_ParseRenderRoundTrip);

}  // namespace

BENCHMARK_MAIN();
