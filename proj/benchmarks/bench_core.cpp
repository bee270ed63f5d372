#include <benchmark/benchmark.h>

#include "cheesebench/agents.hpp"
#include "cheesebench/harness.hpp"

namespace cb = cheesebench;

namespace {

void BM_Step(benchmark::State& state) {
  const auto& spec = cb::all_paradigms()[static_cast<std::size_t>(state.range(0))];
  cb::Rng rng(1);
  auto s = cb::reset_trial(spec, 0, 7);
  for (auto _ : state) {
    if (s.done) s = cb::reset_trial(spec, 0, 7);
    benchmark::DoNotOptimize(cb::advance(s, cb::kAllActions[rng.below(4)]));
  }
  state.SetLabel(std::string(spec.name));
}
BENCHMARK(BM_Step)->DenseRange(0, cb::kParadigmCount - 1);

void BM_Render(benchmark::State& state) {
  const auto mode = static_cast<cb::RenderMode>(state.range(0));
  const auto s = cb::reset_trial(cb::spec_of(cb::Paradigm::kMorrisWaterMaze), 0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(cb::render(s, mode));
  state.SetLabel(std::string(cb::to_string(mode)));
}
BENCHMARK(BM_Render)->DenseRange(0, 2);

void BM_OraclePlan(benchmark::State& state) {
  const auto& spec = cb::all_paradigms()[static_cast<std::size_t>(state.range(0))];
  const auto s = cb::reset_trial(spec, 0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(cb::oracle_plan(s.grid, s.pose));
  state.SetLabel(std::string(spec.name));
}
BENCHMARK(BM_OraclePlan)->Arg(0)->Arg(2);

void BM_ParseReply(benchmark::State& state) {
  const std::string reply =
      "REASONING: the platform sits away from the wall, so head inward.\n"
      "ACTIONS: FORWARD, FORWARD, ROTATE_LEFT, FORWARD, jump, FORWARD, STAY, ROTATE_RIGHT\n"
      "LEARNINGS: the start position rotates between trials";
  for (auto _ : state) benchmark::DoNotOptimize(cb::parse_agent_response(reply, 8));
}
BENCHMARK(BM_ParseReply);

void BM_RandomSession(benchmark::State& state) {
  const auto& spec = cb::spec_of(cb::Paradigm::kTMaze);
  cb::HarnessConfig cfg;
  for (auto _ : state) {
    cb::RandomAgent agent(3);
    benchmark::DoNotOptimize(cb::run_session(spec, agent, cfg));
  }
}
BENCHMARK(BM_RandomSession)->Unit(benchmark::kMillisecond);

}  // namespace
