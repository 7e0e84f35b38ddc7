// Copyright 2026 The qnizk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qnizk/adversaries.hpp"
#include "qnizk/knowledge.hpp"
#include "qnizk/protocol.hpp"
#include "qnizk/stats.hpp"

namespace qnizk {
namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

// Raised for anything wrong with user-provided inputs; everything else that
// throws is an internal invariant violation.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

struct FixtureFile {
  Circuit circuit;
  BitVec instance_bits;
  BitVec witness_bits;
  nlohmann::json raw;
};

BitVec parse_bit_list(const nlohmann::json& j, const char* what) {
  BitVec out;
  for (const auto& v : j) {
    uint32_t b = v.get<uint32_t>();
    if (b > 1) {
      throw InputError(std::string(what) + ": entries must be bits");
    }
    out.push_back(static_cast<uint8_t>(b));
  }
  return out;
}

BitVec parse_bit_string(const std::string& s, const char* what) {
  BitVec out;
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw InputError(std::string(what) + ": expected a string of 0/1");
    }
    out.push_back(static_cast<uint8_t>(c - '0'));
  }
  return out;
}

std::string bits_string(const BitVec& v) {
  std::string s;
  for (uint8_t b : v) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

// Resolves --circuit: a path as given, else a name under QNIZK_FIXTURES,
// with or without the .json suffix.
std::string resolve_circuit_path(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) {
    return arg;
  }
  const char* dir = std::getenv("QNIZK_FIXTURES");
  if (dir != nullptr) {
    fs::path base(dir);
    for (const auto& cand : {base / arg, base / (arg + ".json")}) {
      if (fs::exists(cand)) {
        return cand.string();
      }
    }
  }
  throw InputError("circuit not found: " + arg +
                   " (set QNIZK_FIXTURES for fixture names)");
}

FixtureFile load_fixture(const std::string& arg) {
  std::ifstream in(resolve_circuit_path(arg));
  if (!in) {
    throw InputError("cannot open circuit file: " + arg);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError(std::string("circuit JSON parse: ") + e.what());
  }
  FixtureFile f;
  f.raw = j;
  try {
    f.circuit = circuit_from_json(j);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (j.contains("instance_bits")) {
    f.instance_bits = parse_bit_list(j.at("instance_bits"), "instance_bits");
  }
  if (j.contains("witness_bits")) {
    f.witness_bits = parse_bit_list(j.at("witness_bits"), "witness_bits");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Output plumbing: machine lines to --out or stdout, prose to stderr.
// ---------------------------------------------------------------------------

class LineSink {
 public:
  explicit LineSink(const std::string& out_path) {
    if (!out_path.empty()) {
      file_.open(out_path);
      if (!file_) {
        throw InputError("cannot open output file: " + out_path);
      }
    }
  }

  void line(const nlohmann::json& j) {
    std::ostream& os = file_.is_open() ? file_ : std::cout;
    os << j.dump() << "\n";
  }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// Shared run configuration
// ---------------------------------------------------------------------------

struct CliConfig {
  std::string mode = "honest";
  std::string circuit;
  std::string instance_flag;
  bool instance_given = false;
  uint32_t level = 2;
  uint32_t k = 1;
  uint32_t n_seq = 1;
  uint64_t seed = 0;
  uint32_t trials = 1;
  uint32_t jobs = 1;
  std::string out;
  std::string replay;
};

struct ResolvedRun {
  SessionParams params;
  BitVec witness_bits;
  bool witness_known = false;
};

ResolvedRun resolve_run(const CliConfig& cfg) {
  FixtureFile f = load_fixture(cfg.circuit);
  ResolvedRun r;
  r.params.circuit = f.circuit;
  r.params.level = cfg.level;
  BitVec inst =
      cfg.instance_given ? parse_bit_string(cfg.instance_flag, "--instance")
                         : f.instance_bits;
  if (inst.size() != f.circuit.n_instance) {
    throw InputError("instance width mismatch: circuit expects " +
                     std::to_string(f.circuit.n_instance) + " bits, got " +
                     std::to_string(inst.size()));
  }
  r.params.x = inst;
  r.witness_bits = f.witness_bits;
  r.witness_known = f.witness_bits.size() == f.circuit.c_witness;
  try {
    r.params.validate();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  return r;
}

Vec required_witness(const ResolvedRun& r, const std::string& mode) {
  if (!r.witness_known) {
    throw InputError("mode " + mode +
                     " needs witness_bits in the circuit file");
  }
  return basis_state(r.params.circuit.c_witness, r.witness_bits);
}

std::unique_ptr<ProverParty> make_mode_prover(const std::string& mode,
                                              const ResolvedRun& r) {
  if (mode == "honest") {
    return std::make_unique<HonestProver>(required_witness(r, mode));
  }
  if (mode == "adversary:A1") {
    return make_witnessless_prover();
  }
  if (mode == "adversary:A2") {
    return make_wrong_instance_prover(required_witness(r, mode));
  }
  if (mode == "adversary:A3") {
    return make_term_guess_prover(1);
  }
  if (mode == "adversary:A4") {
    return std::make_unique<DTamperProver>(required_witness(r, mode));
  }
  throw InputError("unknown mode: " + mode);
}

bool is_session_mode(const std::string& mode) {
  return mode == "honest" || mode.rfind("adversary:", 0) == 0;
}

bool is_extract_mode(const std::string& mode) {
  return mode == "extract-aoqk" || mode == "extract-poqk";
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

int cmd_reduce(const std::string& circuit_arg, const std::string& frame_name,
               const std::string& out_path) {
  FixtureFile f = load_fixture(circuit_arg);
  Frame frame;
  if (frame_name == "plain") {
    frame = Frame::kPlain;
  } else if (frame_name == "dressed") {
    frame = Frame::kDressed;
  } else {
    throw InputError("unknown frame: " + frame_name);
  }
  Hamiltonian h;
  try {
    h = reduce_circuit(f.circuit, frame);
  } catch (const Error& e) {
    throw InputError(std::string("reduction: ") + e.what());
  }

  nlohmann::json report = {{"schema_version", kSchemaVersion},
                           {"type", "reduce-report"},
                           {"frame", frame_name},
                           {"num_qubits", h.num_qubits()},
                           {"clock_length", h.T},
                           {"term_count", h.num_terms()}};
  nlohmann::json by_label = nlohmann::json::object();
  for (const Term& t : h.terms) {
    std::string head = t.label.substr(0, t.label.find(':'));
    by_label[head] = by_label.value(head, 0) + 1;
  }
  report["terms_by_label"] = by_label;

  if (h.num_qubits() <= 12) {
    uint32_t p = h.num_qubits();
    Mat total = Mat::Zero(dim(p), dim(p));
    for (const Term& t : h.terms) {
      total += embed_op(t.mat, t.qubits, p);
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(total);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    report["min_eigenvalue"] = lo;
    report["max_eigenvalue"] = hi;
    report["bound_verdict"] = lo <= 1e-9 ? "zero-ground-energy" : "gapped";
  } else {
    report["min_eigenvalue"] = nullptr;
    report["max_eigenvalue"] = nullptr;
    report["bound_verdict"] = "not-diagonalized";
  }

  LineSink sink(out_path);
  sink.line(report);
  nlohmann::json dump = hamiltonian_to_json(h);
  dump["schema_version"] = kSchemaVersion;
  dump["type"] = "hamiltonian";
  sink.line(dump);
  std::cerr << "reduced " << h.num_terms() << " terms over "
            << h.num_qubits() << " qubits; verdict "
            << report["bound_verdict"].get<std::string>() << "\n";
  return kExitAccept;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

nlohmann::json run_header(const CliConfig& cfg, const ResolvedRun& r) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"type", "run-header"},
                      {"mode", cfg.mode},
                      {"circuit", circuit_to_json(r.params.circuit)},
                      {"instance", bits_string(r.params.x)},
                      {"steane_level", cfg.level},
                      {"parallel_k", cfg.k},
                      {"sequential", cfg.n_seq},
                      {"seed", cfg.seed}};
  if (r.witness_known && cfg.mode != "zk-sim" && !is_extract_mode(cfg.mode)) {
    j["witness"] = bits_string(r.witness_bits);
  }
  return j;
}

std::vector<nlohmann::json> execute_run(const CliConfig& cfg,
                                        const ResolvedRun& r,
                                        int* decision_out) {
  std::vector<nlohmann::json> lines;
  lines.push_back(run_header(cfg, r));
  int decision = 1;
  if (is_session_mode(cfg.mode)) {
    auto prover = make_mode_prover(cfg.mode, r);
    HonestVerifier verifier;
    RepetitionConfig rep;
    rep.k = cfg.k;
    rep.n_seq = cfg.n_seq;
    SessionOutcome out =
        run_session(r.params, *prover, verifier, rep, cfg.seed);
    decision = out.decision;
    for (const Transcript& t : out.transcripts) {
      lines.push_back({{"schema_version", kSchemaVersion},
                       {"type", "transcript"},
                       {"body", transcript_to_json(t)}});
    }
  } else if (cfg.mode == "zk-sim") {
    HonestVerifier verifier;
    uint32_t total = cfg.k * cfg.n_seq;
    for (uint32_t i = 0; i < total; ++i) {
      Transcript t = zk_simulate_seeded(verifier, r.params.x, r.params,
                                        derive_session_seeds(cfg.seed, i));
      decision = decision && t.decision;
      lines.push_back({{"schema_version", kSchemaVersion},
                       {"type", "transcript"},
                       {"body", transcript_to_json(t)}});
    }
  } else if (cfg.mode == "extract-aoqk") {
    HonestProver prover(required_witness(r, cfg.mode));
    ProverOracle oracle(prover);
    Rng rng(cfg.seed);
    ExtractedWitness w = extract_aoqk(oracle, r.params.x, r.params, rng);
    decision = w.bot ? 0 : 1;
    nlohmann::json rep = extraction_report_json(w);
    rep["schema_version"] = kSchemaVersion;
    rep["type"] = "extraction";
    lines.push_back(rep);
  } else if (cfg.mode == "extract-poqk") {
    HonestBjswProver prover(required_witness(r, cfg.mode));
    BjswOracle oracle(prover);
    Rng rng(cfg.seed);
    ExtractedWitness w = extract_poqk(oracle, r.params.x, r.params, rng);
    decision = w.bot ? 0 : 1;
    nlohmann::json rep = extraction_report_json(w);
    rep["schema_version"] = kSchemaVersion;
    rep["type"] = "extraction";
    lines.push_back(rep);
  } else {
    throw InputError("unknown mode: " + cfg.mode);
  }
  lines.push_back({{"schema_version", kSchemaVersion},
                   {"type", "decision"},
                   {"decision", decision}});
  *decision_out = decision;
  return lines;
}

int cmd_run(const CliConfig& cfg) {
  ResolvedRun r = resolve_run(cfg);
  int decision = 1;
  std::vector<nlohmann::json> lines = execute_run(cfg, r, &decision);
  LineSink sink(cfg.out);
  for (const auto& l : lines) {
    sink.line(l);
  }
  std::cerr << "mode " << cfg.mode << ": "
            << (decision ? "accept" : "reject") << "\n";
  return decision ? kExitAccept : kExitReject;
}

// Re-executes a recorded run from its header and compares every line.
int cmd_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open replay file: " + path);
  }
  std::vector<std::string> recorded;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      recorded.push_back(line);
    }
  }
  if (recorded.empty()) {
    throw InputError("replay file is empty");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(recorded.front());
  } catch (const std::exception& e) {
    throw InputError(std::string("replay header parse: ") + e.what());
  }
  if (header.value("type", "") != "run-header") {
    throw InputError("replay file does not start with a run header");
  }

  CliConfig cfg;
  ResolvedRun r;
  try {
    cfg.mode = header.at("mode").get<std::string>();
    cfg.level = header.at("steane_level").get<uint32_t>();
    cfg.k = header.at("parallel_k").get<uint32_t>();
    cfg.n_seq = header.at("sequential").get<uint32_t>();
    cfg.seed = header.at("seed").get<uint64_t>();
    r.params.circuit = circuit_from_json(header.at("circuit"));
    r.params.level = cfg.level;
    r.params.x =
        parse_bit_string(header.at("instance").get<std::string>(), "header");
    if (header.contains("witness")) {
      r.witness_bits =
          parse_bit_string(header.at("witness").get<std::string>(), "header");
      r.witness_known = true;
    }
    r.params.validate();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("replay header: ") + e.what());
  }
  cfg.instance_given = true;
  cfg.instance_flag = bits_string(r.params.x);

  int decision = 1;
  std::vector<nlohmann::json> lines = execute_run(cfg, r, &decision);
  if (lines.size() != recorded.size()) {
    std::cerr << "replay mismatch: " << recorded.size()
              << " recorded lines, " << lines.size() << " reproduced\n";
    return kExitInternal;
  }
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].dump() != recorded[i]) {
      std::cerr << "replay mismatch on line " << (i + 1) << "\n";
      return kExitInternal;
    }
  }
  std::cerr << "replay identical: "
            << (decision ? "accept" : "reject") << "\n";
  return decision ? kExitAccept : kExitReject;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct TrialRecord {
  nlohmann::json line;
  int decision = 0;
  std::vector<uint32_t> challenges;
  bool bot = false;
  double energy = 0;
  double quality = 0;
};

TrialRecord run_one_trial(const CliConfig& cfg, const ResolvedRun& r,
                          uint32_t index) {
  uint64_t trial_seed = Rng(cfg.seed).derive("trial", index).next_u64();
  TrialRecord rec;
  if (is_session_mode(cfg.mode)) {
    auto prover = make_mode_prover(cfg.mode, r);
    HonestVerifier verifier;
    RepetitionConfig rep;
    rep.k = cfg.k;
    rep.n_seq = cfg.n_seq;
    SessionOutcome out =
        run_session(r.params, *prover, verifier, rep, trial_seed);
    rec.decision = out.decision;
    rec.challenges = out.challenges;
    rec.line = {{"schema_version", kSchemaVersion},
                {"type", "trial"},
                {"trial", index},
                {"decision", out.decision},
                {"r", out.challenges}};
  } else if (cfg.mode == "zk-sim") {
    HonestVerifier verifier;
    Transcript t = zk_simulate_seeded(
        verifier, r.params.x, r.params,
        derive_session_seeds(trial_seed, 0));
    rec.decision = t.decision;
    rec.line = {{"schema_version", kSchemaVersion},
                {"type", "trial"},
                {"trial", index},
                {"decision", t.decision}};
  } else if (is_extract_mode(cfg.mode)) {
    Rng rng(trial_seed);
    ExtractedWitness w;
    if (cfg.mode == "extract-aoqk") {
      HonestProver prover(required_witness(r, cfg.mode));
      ProverOracle oracle(prover);
      w = extract_aoqk(oracle, r.params.x, r.params, rng);
    } else {
      HonestBjswProver prover(required_witness(r, cfg.mode));
      BjswOracle oracle(prover);
      w = extract_poqk(oracle, r.params.x, r.params, rng);
    }
    rec.decision = w.bot ? 0 : 1;
    rec.bot = w.bot;
    rec.energy = w.energy;
    rec.quality = w.quality;
    rec.line = {{"schema_version", kSchemaVersion},
                {"type", "trial"},
                {"trial", index},
                {"bot", w.bot},
                {"energy", w.bot ? nlohmann::json() : nlohmann::json(w.energy)},
                {"quality",
                 w.bot ? nlohmann::json() : nlohmann::json(w.quality)}};
  } else {
    throw InputError("unknown mode: " + cfg.mode);
  }
  return rec;
}

int cmd_stats(const CliConfig& cfg) {
  ResolvedRun r = resolve_run(cfg);
  if (cfg.trials < 1) {
    throw InputError("--trials must be at least 1");
  }
  // Witness problems should surface before the pool starts.
  if (cfg.mode == "honest" || cfg.mode == "adversary:A2" ||
      cfg.mode == "adversary:A4" || is_extract_mode(cfg.mode)) {
    (void)required_witness(r, cfg.mode);
  }

  std::vector<TrialRecord> results(cfg.trials);
  uint32_t jobs = cfg.jobs < 1 ? 1 : cfg.jobs;
  std::atomic<uint32_t> next{0};
  std::vector<std::string> errors(jobs);
  auto worker = [&](uint32_t slot) {
    for (;;) {
      uint32_t i = next.fetch_add(1);
      if (i >= cfg.trials) {
        return;
      }
      try {
        results[i] = run_one_trial(cfg, r, i);
      } catch (const std::exception& e) {
        errors[slot] = e.what();
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < jobs; ++t) {
      pool.emplace_back(worker, t);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) {
      throw Error(e);
    }
  }

  LineSink sink(cfg.out);
  sink.line({{"schema_version", kSchemaVersion},
             {"type", "stats-header"},
             {"mode", cfg.mode},
             {"circuit", circuit_to_json(r.params.circuit)},
             {"instance", bits_string(r.params.x)},
             {"steane_level", cfg.level},
             {"parallel_k", cfg.k},
             {"sequential", cfg.n_seq},
             {"seed", cfg.seed},
             {"trials", cfg.trials}});
  uint64_t accepted = 0;
  for (const TrialRecord& rec : results) {
    sink.line(rec.line);
    accepted += rec.decision;
  }

  WilsonInterval wi = wilson95(accepted, cfg.trials);
  nlohmann::json agg = {{"schema_version", kSchemaVersion},
                        {"type", "aggregate"},
                        {"trials", cfg.trials},
                        {"accepted", accepted},
                        {"rate", wi.rate},
                        {"wilson95_lo", wi.lo},
                        {"wilson95_hi", wi.hi}};
  if (is_session_mode(cfg.mode)) {
    std::map<uint32_t, std::pair<uint64_t, uint64_t>> per_r;
    for (const TrialRecord& rec : results) {
      for (uint32_t rr : rec.challenges) {
        per_r[rr].first += 1;
        per_r[rr].second += rec.decision;
      }
    }
    nlohmann::json breakdown = nlohmann::json::object();
    for (const auto& [rr, cnt] : per_r) {
      breakdown[std::to_string(rr)] = {{"count", cnt.first},
                                       {"accepted_trials", cnt.second}};
    }
    agg["per_challenge"] = breakdown;
  }
  if (is_extract_mode(cfg.mode)) {
    std::vector<double> energies;
    std::vector<double> qualities;
    uint64_t bots = 0;
    for (const TrialRecord& rec : results) {
      if (rec.bot) {
        bots += 1;
        continue;
      }
      energies.push_back(rec.energy);
      qualities.push_back(rec.quality);
    }
    double esum = 0;
    double qsum = 0;
    for (double e : energies) {
      esum += e;
    }
    for (double q : qualities) {
      qsum += q;
    }
    agg["bot_count"] = bots;
    agg["mean_energy"] =
        energies.empty() ? nlohmann::json() : nlohmann::json(esum / energies.size());
    agg["mean_quality"] =
        qualities.empty() ? nlohmann::json() : nlohmann::json(qsum / qualities.size());
    agg["energy_hist"] = unit_histogram(energies, 20);
    agg["quality_hist"] = unit_histogram(qualities, 20);
  }
  sink.line(agg);
  std::cerr << "trials " << cfg.trials << ": rate " << wi.rate << " [" << wi.lo
            << ", " << wi.hi << "]\n";
  return kExitAccept;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"NIZK-for-QMA protocol workbench"};
  app.require_subcommand(1);

  std::string reduce_circuit;
  std::string reduce_frame = "plain";
  std::string reduce_out;
  CLI::App* reduce = app.add_subcommand("reduce", "Circuit to Hamiltonian");
  reduce->add_option("--circuit", reduce_circuit, "circuit file or fixture")
      ->required();
  reduce->add_option("--frame", reduce_frame, "plain or dressed");
  reduce->add_option("--out", reduce_out, "write machine output here");

  CliConfig run_cfg;
  CLI::App* run = app.add_subcommand("run", "Execute protocol sessions");
  run->add_option("--mode", run_cfg.mode,
                  "honest, adversary:<A1..A4>, zk-sim, extract-aoqk, "
                  "extract-poqk");
  run->add_option("--circuit", run_cfg.circuit, "circuit file or fixture");
  auto* inst_opt =
      run->add_option("--instance", run_cfg.instance_flag, "instance bits");
  run->add_option("--steane-level", run_cfg.level, "code level (1 or 2)")
      ->check(CLI::Range(1u, 2u));
  run->add_option("--parallel-k", run_cfg.k, "parallel copies");
  run->add_option("--sequential", run_cfg.n_seq, "sequential rounds");
  auto* seed_opt = run->add_option("--seed", run_cfg.seed, "base seed");
  run->add_option("--out", run_cfg.out, "write machine output here");
  run->add_option("--replay", run_cfg.replay,
                  "re-verify a recorded run byte for byte");

  CliConfig stats_cfg;
  CLI::App* stats = app.add_subcommand("stats", "Monte Carlo aggregates");
  stats->add_option("--mode", stats_cfg.mode, "as in run");
  stats->add_option("--circuit", stats_cfg.circuit, "circuit file or fixture")
      ->required();
  auto* stats_inst =
      stats->add_option("--instance", stats_cfg.instance_flag,
                        "instance bits");
  stats->add_option("--steane-level", stats_cfg.level, "code level (1 or 2)")
      ->check(CLI::Range(1u, 2u));
  stats->add_option("--parallel-k", stats_cfg.k, "parallel copies");
  stats->add_option("--sequential", stats_cfg.n_seq, "sequential rounds");
  stats->add_option("--seed", stats_cfg.seed, "base seed")->required();
  stats->add_option("--trials", stats_cfg.trials, "trial count")->required();
  stats->add_option("--jobs", stats_cfg.jobs, "worker threads");
  stats->add_option("--out", stats_cfg.out, "write machine output here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    app.exit(e);
    return kExitInput;
  }

  if (reduce->parsed()) {
    return cmd_reduce(reduce_circuit, reduce_frame, reduce_out);
  }
  if (run->parsed()) {
    if (!run_cfg.replay.empty()) {
      return cmd_replay(run_cfg.replay);
    }
    if (run_cfg.circuit.empty()) {
      throw InputError("run: --circuit is required unless replaying");
    }
    if (seed_opt->count() == 0) {
      throw InputError("run: --seed is required (no ambient randomness)");
    }
    run_cfg.instance_given = inst_opt->count() > 0;
    return cmd_run(run_cfg);
  }
  stats_cfg.instance_given = stats_inst->count() > 0;
  return cmd_stats(stats_cfg);
}

}  // namespace
}  // namespace qnizk

int main(int argc, char** argv) {
  try {
    return qnizk::dispatch(argc, argv);
  } catch (const qnizk::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return qnizk::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return qnizk::kExitInternal;
  }
}
