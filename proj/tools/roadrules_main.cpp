// Command-line front end: rule queries, corpus checking, scenario runs,
// the driving test, and the query latency benchmark.
//
// Exit codes: 0 success/pass, 1 domain failure (conflicts found, test
// failed), 2 usage or load error.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roadrules/consistency.hpp"
#include "roadrules/corpus.hpp"
#include "roadrules/engine.hpp"
#include "roadrules/harness/harness.hpp"
#include "roadrules/rulefile.hpp"
#include "roadrules/sim/scenario.hpp"

namespace {

using nlohmann::ordered_json;
using namespace roadrules;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct RuleSourceOpts {
  std::string corpus = "uk_highway_sample";
  std::string rules_path;  // overrides the named corpus when set
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    // Fall back to the corpus search path when the plain path misses.
    const char* search = std::getenv("ROADRULES_PATH");
    if (search != nullptr) {
      std::istringstream dirs(search);
      std::string dir;
      while (std::getline(dirs, dir, ':')) {
        if (dir.empty()) continue;
        std::ifstream nested(dir + "/" + path, std::ios::binary);
        if (nested) {
          std::ostringstream text;
          text << nested.rdbuf();
          return text.str();
        }
      }
    }
    throw std::runtime_error("cannot open rule file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

RuleBase load_rules(const RuleSourceOpts& opts) {
  if (!opts.rules_path.empty()) {
    return parse_rulefile(read_file(opts.rules_path), opts.rules_path);
  }
  return load_named_corpus(opts.corpus);
}

AtomSet parse_atom_list(const std::string& csv) {
  AtomSet atoms;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) atoms.insert(Atom(item));
  }
  return atoms;
}

int cmd_query(const RuleSourceOpts& source, const std::string& context,
              const std::string& beliefs, const std::string& intentions,
              bool json) {
  RuleBase rb = load_rules(source);
  Situation s(ContextId(context), parse_atom_list(beliefs),
              parse_atom_list(intentions));
  Advice advice = advise(s, rb);

  if (json) {
    ordered_json out;
    out["context"] = context;
    out["directives"] = ordered_json::array();
    for (const ActionPair& pair : advice.directives) {
      out["directives"].push_back(to_string(pair));
    }
    out["unknown_atoms"] = ordered_json::array();
    for (const Atom& atom : advice.unknown_atoms) {
      out["unknown_atoms"].push_back(atom.name());
    }
    std::cout << out.dump() << '\n';
    return kExitOk;
  }
  for (const ActionPair& pair : advice.directives) {
    std::cout << to_string(pair) << '\n';
  }
  for (const Atom& atom : advice.unknown_atoms) {
    std::cerr << "note: atom not in corpus vocabulary: " << atom.name() << '\n';
  }
  return kExitOk;
}

int cmd_check(const RuleSourceOpts& source, bool json) {
  RuleBase rb = load_rules(source);
  ConsistencyReport report = check_consistency(rb);

  if (json) {
    ordered_json out;
    out["conflicts"] = ordered_json::array();
    for (const Conflict& c : report.conflicts) {
      ordered_json entry;
      entry["rule_a"] = c.rule_a;
      entry["rule_b"] = c.rule_b;
      entry["atom_a"] = c.atom_a.name();
      entry["atom_b"] = c.atom_b.name();
      out["conflicts"].push_back(entry);
    }
    out["duplicates"] = ordered_json::array();
    for (const DuplicatePair& d : report.duplicates) {
      out["duplicates"].push_back({{"rule_a", d.rule_a}, {"rule_b", d.rule_b}});
    }
    std::cout << out.dump() << '\n';
  } else {
    std::cout << format_report(report);
  }
  return report.clean() ? kExitOk : kExitDomain;
}

int cmd_run(const RuleSourceOpts& source, const std::string& scenario,
            const std::string& agent, unsigned seed,
            const std::string& trace_path, bool render) {
  auto policy = agents::parse_policy(agent);
  if (!policy) throw CLI::ValidationError("--agent", "unknown agent: " + agent);

  RuleBase rb = load_rules(source);
  harness::ScenarioTrace trace = harness::run_test(*policy, scenario, seed, rb);

  if (render) {
    // Re-run the world the trace came from, dumping one frame per step.
    sim::Scenario sc = sim::load_scenario(scenario, seed);
    sim::World world = sc.world;
    std::cerr << sim::render_frame(sc, world);
    for (const harness::StepRecord& rec : trace.steps) {
      auto commands = sim::traffic_commands(sc, world);
      commands.emplace(sc.subject_id, rec.command);
      world.step(commands);
      std::cerr << sim::render_frame(sc, world);
    }
  }

  std::string text = harness::emit_trace(trace);
  if (trace_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace: " + trace_path);
    out << text;
  }
  return kExitOk;
}

int cmd_test(const RuleSourceOpts& source, const std::string& agent,
             unsigned seed, bool json) {
  auto policy = agents::parse_policy(agent);
  if (!policy) throw CLI::ValidationError("--agent", "unknown agent: " + agent);

  RuleBase rb = load_rules(source);
  std::vector<harness::ScenarioTrace> traces;
  for (const std::string& scenario : sim::scenario_names()) {
    traces.push_back(harness::run_test(*policy, scenario, seed, rb));
  }
  harness::Verdict verdict = harness::judge(traces);

  if (json) {
    ordered_json out;
    out["agent"] = agent;
    out["seed"] = seed;
    out["overall"] = verdict.pass ? "pass" : "fail";
    out["scenarios"] = ordered_json::array();
    for (const harness::ScenarioResult& result : verdict.scenarios) {
      ordered_json entry;
      entry["scenario"] = result.scenario;
      entry["result"] = result.pass ? "pass" : "fail";
      entry["reasons"] = result.reasons;
      out["scenarios"].push_back(entry);
    }
    std::cout << out.dump() << '\n';
  } else {
    std::cout << format_verdict(verdict);
  }
  return verdict.pass ? kExitOk : kExitDomain;
}

int cmd_bench(const RuleSourceOpts& source, long iterations, bool json) {
  RuleBase rb = load_rules(source);

  // The 15-belief, 1-intention query of the scalability experiment.
  Situation s(
      ContextId("standard"),
      AtomSet{Atom("vehicleSafe"), Atom("headlightsOff"),
              Atom("allChildrenUsingChildSeatAsRequired"),
              Atom("canReadNumberPlate"), Atom("exitClear"),
              Atom("dualCarriageWay"),
              Atom("vehicleDoesntFitsInCentralReservation"),
              Atom("roadAheadClear"), Atom("fuel"), Atom("driving"),
              Atom("completeOvertakeBeforeSolidWhiteLine"),
              Atom("routePlanned"), Atom("lightRed"),
              Atom("allPassengersWearingSeatBeltsAsRequired"),
              Atom("sidelightsOff")},
      AtomSet{Atom("approachingTrafficLight")});

  std::vector<double> micros;
  micros.reserve(static_cast<std::size_t>(iterations));
  std::size_t sink = 0;
  for (long i = 0; i < iterations; ++i) {
    auto start = std::chrono::steady_clock::now();
    std::vector<ActionPair> result = recommended(s, rb);
    auto stop = std::chrono::steady_clock::now();
    sink += result.size();
    micros.push_back(
        std::chrono::duration<double, std::micro>(stop - start).count());
  }
  std::sort(micros.begin(), micros.end());
  double total = 0;
  for (double m : micros) total += m;
  auto quantile = [&](double q) {
    std::size_t idx = static_cast<std::size_t>(q * (micros.size() - 1));
    return micros[idx];
  };
  double min = micros.front();
  double median = quantile(0.5);
  double p99 = quantile(0.99);
  double per_second = micros.size() / (total / 1e6);

  if (json) {
    ordered_json out;
    out["iterations"] = iterations;
    out["directives_per_query"] = sink / static_cast<std::size_t>(iterations);
    out["min_us"] = min;
    out["median_us"] = median;
    out["p99_us"] = p99;
    out["queries_per_second"] = per_second;
    std::cout << out.dump() << '\n';
  } else {
    std::cout << "iterations " << iterations << '\n';
    std::cout << "min_us " << min << '\n';
    std::cout << "median_us " << median << '\n';
    std::cout << "p99_us " << p99 << '\n';
    std::cout << "queries_per_second " << static_cast<long>(per_second) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rules-of-the-road advisory engine and driving-test harness"};
  app.require_subcommand(1);

  RuleSourceOpts source;
  bool json = false;
  app.add_option("--corpus", source.corpus, "Named embedded corpus")
      ->capture_default_str();
  app.add_option("--rules", source.rules_path,
                 "Rule file path (overrides --corpus)");
  app.add_flag("--json", json, "Machine-readable output");

  auto* query = app.add_subcommand("query", "Print the recommended actions");
  query->fallthrough();
  std::string context = "standard";
  std::string beliefs;
  std::string intentions;
  query->add_option("--context", context, "Query context")
      ->capture_default_str();
  query->add_option("--beliefs", beliefs, "Comma-separated belief atoms");
  query->add_option("--intentions", intentions,
                    "Comma-separated intention atoms");

  auto* check = app.add_subcommand("check", "Run the corpus consistency check");
  check->fallthrough();

  auto* run = app.add_subcommand("run", "Run one scenario and emit its trace");
  run->fallthrough();
  std::string scenario = "traffic_light";
  std::string agent = "reactive";
  unsigned seed = 42;
  std::string trace_path;
  bool render = false;
  run->add_option("--scenario", scenario, "Scenario name")
      ->capture_default_str();
  run->add_option("--agent", agent, "Agent policy")->capture_default_str();
  run->add_option("--seed", seed, "Scenario seed")->capture_default_str();
  run->add_option("--trace", trace_path, "Trace output path (default stdout)");
  run->add_flag("--render", render, "Dump ASCII frames to stderr");

  auto* test = app.add_subcommand("test", "Run the full driving test");
  test->fallthrough();
  test->add_option("--agent", agent, "Agent policy")->capture_default_str();
  test->add_option("--seed", seed, "Scenario seed")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Measure query latency");
  bench->fallthrough();
  long iterations = 100000;
  bench->add_option("--iterations", iterations, "Query count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (query->parsed()) {
      return cmd_query(source, context, beliefs, intentions, json);
    }
    if (check->parsed()) return cmd_check(source, json);
    if (run->parsed()) {
      return cmd_run(source, scenario, agent, seed, trace_path, render);
    }
    if (test->parsed()) return cmd_test(source, agent, seed, json);
    if (bench->parsed()) return cmd_bench(source, iterations, json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
