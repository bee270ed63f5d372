#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheesebench/agents.hpp"
#include "cheesebench/errors.hpp"
#include "cheesebench/report.hpp"

namespace cheesebench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join(const auto& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string percent(double p) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%5.1f%%", 100.0 * p);
  return buf;
}

std::vector<const ParadigmSpec*> selected_envs(const RunConfig& cfg) {
  std::vector<const ParadigmSpec*> out;
  if (cfg.envs.empty()) {
    for (const auto& s : all_paradigms()) out.push_back(&s);
  } else {
    for (const auto& name : cfg.envs) out.push_back(&require_paradigm(name));
  }
  return out;
}

std::uint64_t agent_seed(const RunConfig& cfg, const ParadigmSpec& spec) {
  return derive_seed(cfg.harness.seed, "agent:" + std::string(spec.name));
}

std::unique_ptr<Agent> make_agent(const RunConfig& cfg, const ParadigmSpec& spec, std::istream& in,
                                  std::ostream& out) {
  if (cfg.agent == "random") return std::make_unique<RandomAgent>(agent_seed(cfg, spec));
  if (cfg.agent == "tabular-ql") return std::make_unique<TabularQAgent>(cfg.ql, agent_seed(cfg, spec));
  if (cfg.agent == "oracle") return std::make_unique<OracleAgent>();
  if (cfg.agent == "llm") return std::make_unique<ChatAgent>(cfg.endpoint);
  if (cfg.agent == "interactive") return std::make_unique<InteractiveAgent>(in, out);
  throw ConfigError("unknown agent '" + cfg.agent + "'");
}

fs::path trace_path(const fs::path& dir, std::string_view env) { return dir / "traces" / (std::string(env) + ".jsonl"); }

std::vector<TurnTrace> read_trace(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  std::vector<TurnTrace> out;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) out.push_back(turn_trace_from_jsonl(line));
  return out;
}

void print_summary(const BenchReport& r, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %-26s %6s %7s %7s %7s\n", "env", "dimension", "n", "p", "se", "rodent");
  out << buf;
  for (const EnvResult& e : r.envs) {
    std::snprintf(buf, sizeof buf, "%-16s %-26s %6d %7s %7s %7s\n", e.env.c_str(), e.dimension.c_str(), e.n_trials,
                  percent(e.p).c_str(), percent(e.se).c_str(), percent(e.rodent_ref).c_str());
    out << buf;
  }
  out << "overall (unweighted mean over environments): " << percent(r.overall) << '\n';
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

// --- run -------------------------------------------------------------------------

struct SessionOutput {
  SessionResult result;
  std::string trace;  // JSONL
};

SessionOutput run_one(const RunConfig& cfg, const ParadigmSpec& spec, std::istream& in, std::ostream& out) {
  SessionOutput s;
  auto agent = make_agent(cfg, spec, in, out);
  s.result = run_session(spec, *agent, cfg.harness, [&](const TurnTrace& t) {
    s.trace += to_jsonl(t);
    s.trace += '\n';
  });
  return s;
}

int cmd_run(RunConfig cfg, std::ostream& out, std::ostream& err, std::istream& in) {
  validate(cfg);
  const auto envs = selected_envs(cfg);
  fs::create_directories(cfg.out / "traces");
  write_text_file(cfg.out / "config.json", config_snapshot_json(cfg));

  std::vector<SessionOutput> results(envs.size());
  std::vector<std::string> failures(envs.size());
  const int jobs = std::clamp(cfg.jobs, 1, static_cast<int>(envs.size()));
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == envs.size()) return;
        i = next++;
      }
      try {
        results[i] = run_one(cfg, *envs[i], in, out);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<TrialRecord> records;
  std::vector<std::string> names;
  bool failed = false;
  for (std::size_t i = 0; i < envs.size(); ++i) {
    names.emplace_back(envs[i]->name);
    if (!failures[i].empty()) {
      err << "error: " << envs[i]->name << ": " << failures[i] << '\n';
      failed = true;
      continue;
    }
    write_text_file(trace_path(cfg.out, envs[i]->name), results[i].trace);
    if (results[i].result.aborted) err << envs[i]->name << ": session aborted, partial results kept\n";
    records.insert(records.end(), results[i].result.records.begin(), results[i].result.records.end());
  }
  const BenchReport report = summarize(records, names);
  write_text_file(cfg.out / "report.json", report_to_json(report));
  write_text_file(cfg.out / "report.csv", report_to_csv(report));
  print_summary(report, out);
  out << "results written to " << cfg.out.string() << '\n';
  return failed ? 1 : 0;
}

// --- play ------------------------------------------------------------------------

int cmd_play(const std::string& env, RunConfig cfg, const std::string& trace_file, std::ostream& out,
             std::istream& in) {
  const ParadigmSpec& spec = require_paradigm(env);
  cfg.harness.batch = 1;
  cfg.harness.validate();
  std::ofstream trace;
  if (!trace_file.empty()) {
    trace.open(trace_file, std::ios::trunc);
    if (!trace) throw IoError("cannot open " + trace_file);
  }
  InteractiveAgent agent(in, out);
  ContextWindow context(cfg.harness.history);
  const int trials = cfg.harness.trials_for(spec);
  out << spec.name << " (" << to_string(spec.dimension) << "), " << trials << " trials of at most " << spec.max_steps
      << " steps\n";
  for (int t = 0; t < trials; ++t) {
    TrialRecord r;
    try {
      r = run_trial(spec, t, agent, cfg.harness, context, [&](const TurnTrace& tt) {
        if (trace) trace << to_jsonl(tt) << '\n' << std::flush;
      });
    } catch (const SessionAborted&) {
      out << "quit during trial " << t << "\n";
      return 0;
    }
    out << "TRIAL " << r.trial_index << ": success=" << (r.success ? "yes" : "no") << " steps=" << r.steps_used
        << " reward=" << r.cumulative_reward << '\n';
  }
  return 0;
}

// --- report / replay -------------------------------------------------------------

std::vector<fs::path> trace_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      const fs::path dir = fs::is_directory(p / "traces") ? p / "traces" : p;
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".jsonl") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      out.push_back(p);
    } else {
      throw IoError("no such file or directory: " + in);
    }
  }
  if (out.empty()) throw IoError("no trace files found");
  return out;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format, const std::string& out_dir,
               std::ostream& out) {
  std::vector<TrialRecord> records;
  for (const auto& path : trace_files(inputs)) {
    const auto r = records_from_trace(read_trace(path));
    records.insert(records.end(), r.begin(), r.end());
  }
  const BenchReport report = summarize(records);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "report.json", report_to_json(report));
    write_text_file(fs::path(out_dir) / "report.csv", report_to_csv(report));
  }
  if (format == "json") {
    out << report_to_json(report);
  } else if (format == "csv") {
    out << report_to_csv(report);
  } else {
    print_summary(report, out);
  }
  return 0;
}

int cmd_replay(const std::string& run_dir, std::ostream& out, std::ostream& err) {
  RunConfig cfg = config_from_snapshot(read_text_file(fs::path(run_dir) / "config.json"));
  bool all_equal = true;
  for (const ParadigmSpec* spec : selected_envs(cfg)) {
    const fs::path path = trace_path(run_dir, spec->name);
    const std::string recorded = read_text_file(path);
    std::vector<TurnTrace> turns;
    {
      std::istringstream ss(recorded);
      std::string line;
      while (std::getline(ss, line))
        if (!line.empty()) turns.push_back(turn_trace_from_jsonl(line));
    }
    ReplayAgent agent(std::move(turns));
    std::string regenerated;
    try {
      run_session(*spec, agent, cfg.harness, [&](const TurnTrace& t) {
        regenerated += to_jsonl(t);
        regenerated += '\n';
      });
    } catch (const ParseError& e) {
      err << spec->name << ": " << e.what() << '\n';
    }
    const bool equal = regenerated == recorded && agent.remaining() == 0;
    out << spec->name << ": " << (equal ? "identical" : "MISMATCH") << '\n';
    all_equal = all_equal && equal;
  }
  return all_equal ? 0 : 1;
}

}  // namespace

// --- config ----------------------------------------------------------------------

void validate(RunConfig& cfg) {
  cfg.harness.validate();
  if (std::find(std::begin(kAgentNames), std::end(kAgentNames), cfg.agent) == std::end(kAgentNames))
    throw ConfigError("unknown agent '" + cfg.agent + "' (valid: " + join(kAgentNames, ", ") + ")");
  std::vector<std::string> canonical;
  for (const auto& e : cfg.envs) {
    if (e == "all") {
      canonical.clear();
      break;
    }
    canonical.emplace_back(require_paradigm(e).name);
  }
  cfg.envs = canonical;
  if (cfg.jobs < 1) throw ConfigError("--jobs must be >= 1");
  if (cfg.agent == "oracle" && cfg.harness.render_mode != RenderMode::kAscii2d)
    throw ConfigError("the oracle agent parses the top-down map; use --mode ascii_2d");
  if (cfg.agent == "interactive") cfg.jobs = 1;
  if (cfg.agent == "llm") {
    if (cfg.endpoint.url.empty())
      throw ConfigError("the llm agent needs an endpoint (--endpoint-url or CHEESEBENCH_ENDPOINT_URL)");
    if (cfg.endpoint.model.empty()) throw ConfigError("the llm agent needs a model name (--model or CHEESEBENCH_MODEL)");
    split_endpoint_url(cfg.endpoint.url);
  }
  if (cfg.out.empty()) cfg.out = fs::path("runs") / (cfg.agent + "-seed" + std::to_string(cfg.harness.seed));
}

std::string config_snapshot_json(const RunConfig& cfg) {
  const json doc = {
      {"agent", cfg.agent},
      {"envs", cfg.envs},
      {"history", cfg.harness.history},
      {"batch", cfg.harness.batch},
      {"prompt", to_string(cfg.harness.prompt)},
      {"prompt_version", kPromptVersion},
      {"mode", to_string(cfg.harness.render_mode)},
      {"seed", cfg.harness.seed},
      {"trials", cfg.harness.trials_override ? json(*cfg.harness.trials_override) : json(nullptr)},
      {"jobs", cfg.jobs},
      {"endpoint",
       {{"url", cfg.endpoint.url},
        {"model", cfg.endpoint.model},
        {"temperature", cfg.endpoint.temperature},
        {"max_tokens", cfg.endpoint.max_tokens},
        {"retries", cfg.endpoint.retries},
        {"backoff_seconds", cfg.endpoint.backoff_seconds},
        {"timeout_seconds", cfg.endpoint.timeout_seconds}}},
      {"ql",
       {{"alpha", cfg.ql.alpha},
        {"gamma", cfg.ql.gamma},
        {"epsilon", cfg.ql.epsilon},
        {"epsilon_decay", cfg.ql.epsilon_decay},
        {"goal_threshold", cfg.ql.goal_threshold}}},
  };
  return doc.dump(2) + "\n";
}

RunConfig config_from_snapshot(std::string_view json_text) {
  const json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("config snapshot is not valid JSON");
  try {
    RunConfig cfg;
    cfg.agent = doc.at("agent").get<std::string>();
    cfg.envs = doc.at("envs").get<std::vector<std::string>>();
    cfg.harness.history = doc.at("history").get<int>();
    cfg.harness.batch = doc.at("batch").get<int>();
    const auto prompt = prompt_variant_from_name(doc.at("prompt").get<std::string>());
    const auto mode = render_mode_from_name(doc.at("mode").get<std::string>());
    if (!prompt || !mode) throw ParseError("config snapshot: bad prompt or mode");
    cfg.harness.prompt = *prompt;
    cfg.harness.render_mode = *mode;
    cfg.harness.seed = doc.at("seed").get<std::uint64_t>();
    if (!doc.at("trials").is_null()) cfg.harness.trials_override = doc.at("trials").get<int>();
    cfg.jobs = doc.at("jobs").get<int>();
    const json& ep = doc.at("endpoint");
    cfg.endpoint.url = ep.at("url").get<std::string>();
    cfg.endpoint.model = ep.at("model").get<std::string>();
    cfg.endpoint.temperature = ep.at("temperature").get<double>();
    cfg.endpoint.max_tokens = ep.at("max_tokens").get<int>();
    cfg.endpoint.retries = ep.at("retries").get<int>();
    cfg.endpoint.backoff_seconds = ep.at("backoff_seconds").get<double>();
    cfg.endpoint.timeout_seconds = ep.at("timeout_seconds").get<double>();
    const json& ql = doc.at("ql");
    cfg.ql.alpha = ql.at("alpha").get<double>();
    cfg.ql.gamma = ql.at("gamma").get<double>();
    cfg.ql.epsilon = ql.at("epsilon").get<double>();
    cfg.ql.epsilon_decay = ql.at("epsilon_decay").get<double>();
    cfg.ql.goal_threshold = ql.at("goal_threshold").get<double>();
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("config snapshot: ") + e.what());
  }
}

// --- argument parsing --------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Rodent behavioral paradigms as ASCII gridworlds: run agents, play, report."};
  app.name("cheesebench");
  app.require_subcommand(1);
  app.set_version_flag("--version", "cheesebench 0.1.0");

  RunConfig cfg;
  std::string prompt_name = "default";
  std::string mode_name = "ascii_2d";
  int trials = 0;

  auto add_harness_options = [&](CLI::App* sub) {
    sub->add_option("--history", cfg.harness.history, "Past (observation, actions, reward) records in the prompt")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--batch", cfg.harness.batch, "Maximum actions executed per agent turn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--prompt", prompt_name, "Prompt variant: default, minimal, cot, fewshot")->capture_default_str();
    sub->add_option("--mode", mode_name, "View: ascii_2d, ascii_2d_fpv, ascii_3d")->capture_default_str();
    sub->add_option("--trials", trials, "Trials per environment (default: the benchmark budget)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.harness.seed, "Master seed")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Run agent sessions and write traces plus a report");
  run->set_config("--config", "", "TOML/INI file with option values (command line wins)");
  run->add_option("--env", cfg.envs, "Environments, comma separated, or 'all' (the default)")->delimiter(',');
  run->add_option("--agent", cfg.agent, "random, tabular-ql, oracle, llm, interactive")->capture_default_str();
  add_harness_options(run);
  run->add_option("--jobs", cfg.jobs, "Sessions run in parallel")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--out", cfg.out, "Output directory (default: runs/<agent>-seed<seed>)");
  run->add_option("--endpoint-url", cfg.endpoint.url, "Chat-completion endpoint URL")->envname("CHEESEBENCH_ENDPOINT_URL");
  run->add_option("--model", cfg.endpoint.model, "Model name sent to the endpoint")->envname("CHEESEBENCH_MODEL");
  run->add_option("--api-key", cfg.endpoint.api_key, "Bearer token for the endpoint")->envname("CHEESEBENCH_API_KEY");
  run->add_option("--temperature", cfg.endpoint.temperature, "Sampling temperature")->capture_default_str();
  run->add_option("--max-tokens", cfg.endpoint.max_tokens, "Completion token limit")->capture_default_str();
  run->add_option("--retries", cfg.endpoint.retries, "Retries for transient transport failures")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run->add_option("--backoff", cfg.endpoint.backoff_seconds, "First retry delay in seconds (doubles each time)")
      ->capture_default_str();
  run->add_option("--timeout", cfg.endpoint.timeout_seconds, "HTTP timeout in seconds")->capture_default_str();
  run->add_option("--ql-alpha", cfg.ql.alpha, "Q-learning rate")->capture_default_str();
  run->add_option("--ql-gamma", cfg.ql.gamma, "Q-learning discount")->capture_default_str();
  run->add_option("--ql-epsilon", cfg.ql.epsilon, "Initial exploration rate")->capture_default_str();
  run->add_option("--ql-epsilon-decay", cfg.ql.epsilon_decay, "Per-trial exploration decay")->capture_default_str();
  run->add_option("--ql-goal-threshold", cfg.ql.goal_threshold, "Reward that marks a goal state")
      ->capture_default_str();

  std::string play_env;
  std::string play_trace;
  auto* play = app.add_subcommand("play", "Play an environment from the keyboard");
  play->add_option("env", play_env, "Environment name")->required();
  add_harness_options(play);
  play->add_option("--trace", play_trace, "Write the trace of the played turns to this file");

  app.add_subcommand("list", "List the nine paradigms with their budgets");

  std::vector<std::string> report_inputs;
  std::string report_format = "table";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Rebuild a report from trace files or a run directory");
  report->add_option("inputs", report_inputs, "Run directories or .jsonl trace files")->required();
  report->add_option("--format", report_format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  report->add_option("--out", report_out, "Also write report.json and report.csv here");

  std::string replay_dir;
  auto* replay = app.add_subcommand("replay", "Re-run a run directory from its traces and compare byte for byte");
  replay->add_option("run_dir", replay_dir, "Directory written by 'run'")->required();

  std::vector<std::string> storage = {"cheesebench"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto finish_harness = [&] {
      const auto p = prompt_variant_from_name(prompt_name);
      if (!p) throw ConfigError("unknown prompt variant '" + prompt_name + "' (valid: default, minimal, cot, fewshot)");
      const auto m = render_mode_from_name(mode_name);
      if (!m) throw ConfigError("unknown view mode '" + mode_name + "' (valid: ascii_2d, ascii_2d_fpv, ascii_3d)");
      cfg.harness.prompt = *p;
      cfg.harness.render_mode = *m;
      if (trials > 0) cfg.harness.trials_override = trials;
    };
    if (run->parsed()) {
      finish_harness();
      return cmd_run(cfg, out, err, in);
    }
    if (play->parsed()) {
      finish_harness();
      return cmd_play(play_env, cfg, play_trace, out, in);
    }
    if (app.got_subcommand("list")) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-16s %-26s %6s %6s %7s\n", "env", "dimension", "trials", "steps", "rodent");
      out << buf;
      for (const auto& s : all_paradigms()) {
        std::snprintf(buf, sizeof buf, "%-16s %-26s %6d %6d %6.0f%%\n", std::string(s.name).c_str(),
                      std::string(to_string(s.dimension)).c_str(), s.trials, s.max_steps, 100.0 * s.rodent_reference);
        out << buf;
      }
      return 0;
    }
    if (report->parsed()) return cmd_report(report_inputs, report_format, report_out, out);
    if (replay->parsed()) return cmd_replay(replay_dir, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cheesebench::cli
