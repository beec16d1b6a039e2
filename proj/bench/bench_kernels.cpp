#include <benchmark/benchmark.h>

#include <string>

#include "rsrl/learn/trainer.hpp"
#include "rsrl/logic/reasoner.hpp"
#include "rsrl/runtime/files.hpp"

using namespace rsrl;

namespace {

// Labels L0..L3 and action types A0..A3; every label-type pair gets a rule
// until `rules` exist, with a chain order and pairwise exclusivity.
logic::DefaultTheory chain_theory(int rules) {
  logic::DefaultTheory t;
  for (int i = 0; i < 4; ++i) t.vocabulary.add("L" + std::to_string(i), logic::AtomKind::Label);
  for (int i = 0; i < 4; ++i) t.vocabulary.add("A" + std::to_string(i), logic::AtomKind::ActionType);
  for (int i = 0; i < rules; ++i) {
    t.rules.push_back({"r" + std::to_string(i), "L" + std::to_string(i / 4), "A" + std::to_string(i % 4)});
    if (i % 3 == 2) t.order.add("r" + std::to_string(i - 2), "r" + std::to_string(i));
  }
  for (int i = 0; i < 4; ++i) t.background.push_back(logic::Formula::atom("L" + std::to_string(i)));
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      t.background.push_back(logic::parse_formula("(not (and A" + std::to_string(a) + " A" + std::to_string(b) + "))"));
    }
  }
  return t;
}

void BM_ProperScenarios(benchmark::State& state) {
  const logic::Reasoner r(chain_theory(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(r.proper_scenarios());
}

void BM_ProperScenariosSerial(benchmark::State& state) {
  const logic::Reasoner r(chain_theory(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(r.proper_scenarios_serial());
}

struct EvalFixture {
  learn::RunConfig config;
  runtime::TheoryFile theory = runtime::builtin_theory("exemplary");
  learn::Wiring wiring;

  EvalFixture()
      : config([] {
          learn::RunConfig c;
          c.constellation = env::Constellation::Random;
          c.episodes = 32;
          c.epsilon = 0.5;
          return c;
        }()),
        wiring(learn::make_wiring(config, theory.vocabulary, theory.action_types, theory.theory)) {}
};

void BM_Evaluate(benchmark::State& state) {
  const EvalFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(learn::evaluate(f.config, f.wiring, f.theory.theory, {}));
}

void BM_EvaluateSerial(benchmark::State& state) {
  const EvalFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(learn::evaluate_serial(f.config, f.wiring, f.theory.theory, {}));
}

}  // namespace

BENCHMARK(BM_ProperScenarios)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProperScenariosSerial)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
