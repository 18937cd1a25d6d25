// slicebroker: scenario runner and operator tooling.
//
//   slicebroker run <config> --out <dir> [--seed N] [--horizon SLOTS]
//   slicebroker serve <config> --port P [--speedup X] [--out DIR]
//   slicebroker validate <config>
//   slicebroker replay <decision-log> [--check registry.json]
//
// Exit codes: 0 ok, 1 config error, 2 invariant violation, 3 I/O error.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "slicebroker/engine.hpp"
#include "slicebroker/json_codec.hpp"
#include "slicebroker/tcp.hpp"

namespace sb = slicebroker;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kInvariant = 2;
constexpr int kIoError = 3;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

int exit_code(const sb::Error& e) {
  switch (e.code()) {
    case sb::Errc::CONFIG_INVALID:
    case sb::Errc::DECODE_ERROR:
      return kConfigError;
    case sb::Errc::IO_ERROR:
    case sb::Errc::BIND_FAILED:
      return kIoError;
    default:
      return kInvariant;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sb::Error(sb::Errc::IO_ERROR, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed,
            std::optional<std::int64_t> horizon) {
  sb::ScenarioConfig cfg = sb::load_scenario(config_path);
  if (seed) cfg.seed = *seed;
  if (horizon) cfg.horizon_slots = *horizon;
  sb::Engine engine(std::move(cfg), std::filesystem::path(out_dir));
  engine.run();
  const auto& s = engine.summary();
  std::int64_t rejected = 0;
  for (const auto& [reason, n] : s.rejections) rejected += n;
  std::cout << "slots=" << s.slots_run << " grants=" << s.grants.size() << " rejections=" << rejected
            << " sla_events=" << s.sla_events << " out=" << out_dir << "\n";
  return kOk;
}

int cmd_validate(const std::string& config_path) {
  const sb::ScenarioConfig cfg = sb::load_scenario(config_path);
  std::cout << "OK " << (cfg.name.empty() ? config_path : cfg.name) << ": " << cfg.topology.cells.size()
            << " cells, " << cfg.parties.size() << " parties, " << cfg.requests.size() << " scripted requests\n";
  return kOk;
}

int cmd_replay(const std::string& log_path, const std::string& check_path) {
  const sb::DecisionLogFile log = sb::parse_decision_log(read_file(log_path));
  const sb::Broker broker = sb::replay_decision_log(log);
  const std::string registry = sb::codec::canonical(sb::codec::to_json(broker.registry()));
  if (!check_path.empty()) {
    if (trim(read_file(check_path)) != registry) {
      std::cerr << "replayed registry differs from " << check_path << "\n";
      return kInvariant;
    }
    std::cout << "registry matches (" << broker.registry().slices.size() << " slices)\n";
    return kOk;
  }
  std::cout << registry << "\n";
  return kOk;
}

int cmd_serve(const std::string& config_path, std::uint16_t port, std::optional<double> speedup,
              const std::string& out_dir, const std::string& port_file, std::int64_t max_slots) {
  sb::ScenarioConfig cfg = sb::load_scenario(config_path);
  if (speedup) cfg.speedup = *speedup;
  if (!(cfg.speedup > 0)) throw sb::Error(sb::Errc::CONFIG_INVALID, "speedup must be > 0");
  const double period_s = cfg.slot_seconds / cfg.speedup;
  sb::Engine engine(std::move(cfg), std::filesystem::path(out_dir));
  sb::TcpServer server(engine.gateway(), port);
  std::cout << "listening on 127.0.0.1:" << server.port() << std::endl;
  if (!port_file.empty()) {
    std::ofstream pf(port_file);
    pf << server.port() << "\n";
    if (!pf) throw sb::Error(sb::Errc::IO_ERROR, "cannot write " + port_file);
  }

  struct sigaction sa {};
  sa.sa_handler = on_signal;
  sigemptyset(&sa.sa_mask);
  sigaction(SIGTERM, &sa, nullptr);
  sigaction(SIGINT, &sa, nullptr);

  using clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(period_s));
  auto deadline = clock::now();
  int rc = kOk;
  try {
    while (!g_stop.load() && (max_slots < 0 || engine.next_slot() < max_slots)) {
      engine.step();
      deadline += period;
      while (!g_stop.load() && clock::now() < deadline) {
        std::this_thread::sleep_for(std::min<clock::duration>(deadline - clock::now(), std::chrono::milliseconds(20)));
      }
    }
  } catch (const sb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = exit_code(e);
  }
  server.stop();
  engine.finish();
  std::cout << "stopped after " << engine.next_slot() << " slots" << std::endl;
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network slice broker simulator"};
  app.require_subcommand(1);

  std::string config, out_dir, log_path, check_path, port_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  std::optional<double> speedup;
  std::uint16_t port = 0;
  std::int64_t max_slots = -1;

  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  run->add_option("config", config, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--horizon", horizon, "Override the number of slots to run");

  auto* serve = app.add_subcommand("serve", "Serve the tenant endpoint over TCP");
  serve->add_option("config", config, "Scenario file")->required();
  serve->add_option("--port", port, "TCP port (0 picks one)")->required();
  serve->add_option("--speedup", speedup, "Simulated seconds per wall-clock second");
  serve->add_option("--out", out_dir, "Output directory")->default_val("serve-out");
  serve->add_option("--port-file", port_file, "Write the bound port here");
  serve->add_option("--max-slots", max_slots, "Stop after this many slots");

  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("config", config, "Scenario file")->required();

  auto* replay = app.add_subcommand("replay", "Rebuild the registry from a decision log");
  replay->add_option("decision-log", log_path, "decisions.jsonl")->required();
  replay->add_option("--check", check_path, "Compare against a registry.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config, out_dir, seed, horizon);
    if (*serve) return cmd_serve(config, port, speedup, out_dir, port_file, max_slots);
    if (*validate) return cmd_validate(config);
    if (*replay) return cmd_replay(log_path, check_path);
  } catch (const sb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
  return kOk;
}
