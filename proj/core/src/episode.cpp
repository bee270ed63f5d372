#include "cheesebench/episode.hpp"

#include <string>

#include "cheesebench/errors.hpp"
#include "cheesebench/paradigms.hpp"

namespace cheesebench {

namespace {

using InitFn = void (*)(EpisodeState&, Rng&, Rng&);
using StepFn = StepOutcome (*)(EpisodeState&, Action);

struct Rules {
  InitFn init;
  StepFn step;
};

// Indexed by Paradigm.
constexpr std::array<Rules, kParadigmCount> kRules = {{
    {paradigms::init_mwm, paradigms::step_mwm},
    {paradigms::init_barnes, paradigms::step_barnes},
    {paradigms::init_star, paradigms::step_star},
    {paradigms::init_tmaze, paradigms::step_tmaze},
    {paradigms::init_ram, paradigms::step_ram},
    {paradigms::init_dnms, paradigms::step_dnms},
    {paradigms::init_operant, paradigms::step_operant},
    {paradigms::init_shuttle, paradigms::step_shuttle},
    {paradigms::init_cpp, paradigms::step_cpp},
}};

}  // namespace

std::uint64_t session_seed(std::uint64_t master, Paradigm p) {
  return derive_seed(master, spec_of(p).name, 0xffffffffULL);
}

std::uint64_t trial_seed(std::uint64_t master, Paradigm p, int trial_index) {
  return derive_seed(master, spec_of(p).name, static_cast<std::uint64_t>(trial_index));
}

EpisodeState reset_trial(const ParadigmSpec& spec, int trial_index, std::uint64_t seed) {
  if (trial_index < 0) throw UsageError("trial index must be non-negative");
  EpisodeState s;
  s.paradigm = spec.id;
  s.max_steps = spec.max_steps;
  s.trial_index = trial_index;
  s.seed = seed;
  Rng session(session_seed(seed, spec.id));
  Rng trial(trial_seed(seed, spec.id, trial_index));
  kRules[static_cast<std::size_t>(spec.id)].init(s, session, trial);
  s.rng = trial;
  return s;
}

EpisodeState reset_trial(std::string_view paradigm_name, int trial_index, std::uint64_t seed) {
  return reset_trial(require_paradigm(paradigm_name), trial_index, seed);
}

StepOutcome advance(EpisodeState& state, Action action) {
  if (state.done || state.step >= state.max_steps)
    throw UsageError("advance() on a finished trial (" + std::string(state.spec().name) + ", trial " +
                     std::to_string(state.trial_index) + ")");
  return kRules[static_cast<std::size_t>(state.paradigm)].step(state, action);
}

}  // namespace cheesebench
