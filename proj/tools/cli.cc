// Copyright 2026 The AuthPSI Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "authpsi/dataset.h"
#include "authpsi/dealer.h"
#include "authpsi/errors.h"
#include "authpsi/harness.h"
#include "authpsi/psi2.h"
#include "authpsi/psin.h"
#include "authpsi/report.h"
#include "authpsi/tamper.h"
#include "authpsi/tcp_transport.h"
#include "json.hpp"

namespace authpsi::cli {
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using transport::PartyId;

namespace {

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DomainError("cannot write " + path.string());
}

SessionId ParseSession(const std::string& hex) {
  if (hex.size() != 2 * sizeof(SessionId)) {
    throw DomainError("session must be " + std::to_string(2 * sizeof(SessionId)) +
                      " hex digits");
  }
  return FixedFromHex<sizeof(SessionId)>(hex);
}

merkle::Root LoadRoot(const fs::path& path) {
  std::string bytes = ReadFile(path);
  return merkle::ParseRoot(AsView(bytes));
}

uint64_t RandomSeed() {
  uint8_t buf[8];
  crypto::OsRandom(buf);
  uint64_t v = 0;
  for (uint8_t b : buf) v = v << 8 | b;
  return v;
}

// Intersection file: sorted hex elements, one per line.
void WriteIntersection(const fs::path& path, std::vector<Bytes> elements) {
  std::sort(elements.begin(), elements.end());
  std::string text;
  for (const Bytes& e : elements) text += ToHex(e) + "\n";
  WriteFile(path, text);
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  dataset::GenSpec spec;
  std::string out = ".";
};

int RunGen(const GenArgs& args) {
  dataset::Generated g = dataset::Generate(args.spec);
  fs::path dir(args.out);
  fs::create_directories(dir);
  for (size_t i = 0; i < g.sets.size(); ++i) {
    dataset::Save(dir / ("party" + std::to_string(i + 1) + ".txt"), g.sets[i]);
  }
  dataset::Save(dir / "core.txt", g.core);
  std::cout << "wrote " << g.sets.size() << " sets of " << args.spec.count
            << " elements (" << g.core.size() << " common) to " << dir.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- commit

struct CommitArgs {
  std::string in;
  std::string session;
  bool unsalted = false;
  std::string out;
};

int RunCommit(const CommitArgs& args) {
  std::vector<Bytes> elements = dataset::Load(args.in);
  if (elements.empty()) throw DomainError("cannot commit to an empty set");
  merkle::Root root = psi2::Commit(elements, ParseSession(args.session), !args.unsalted);
  Bytes wire = merkle::SerializeRoot(root);
  if (!args.out.empty()) {
    WriteFile(args.out, std::string_view(reinterpret_cast<const char*>(wire.data()),
                                         wire.size()));
  }
  std::cout << ToHex(wire) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string construction = "2pc";
  std::string config;
  std::string role;
  std::string tamper;
  int tamper_party = -1;
  bool local = false;
  std::string out_dir = ".";
};

struct LoadedParty {
  std::vector<Bytes> input;
  merkle::Root root;
};

// Loads one party's inputs and checks that its root file commits to them.
LoadedParty LoadParty(const RunConfig& config, const PartyEntry& entry) {
  LoadedParty p;
  p.input = dataset::Load(entry.dataset);
  p.root = LoadRoot(entry.root);
  if (p.root != psi2::Commit(p.input, config.session, config.salted)) {
    throw ConfigError("root file " + entry.root.string() + " does not commit to " +
                      entry.dataset.string() + " under this session");
  }
  return p;
}

void CheckShape(const RunConfig& config, const std::string& construction) {
  if (construction == "2pc") {
    if (config.parties.size() != 2) throw ConfigError("2pc needs exactly two parties");
  } else if (construction == "npc") {
    psin::Topology::Make(static_cast<uint16_t>(config.parties.size()), config.t);
  } else {
    throw ConfigError("unknown construction '" + construction + "'");
  }
}

int ReportExit(bool aborted) { return aborted ? kExitAbort : kExitOk; }

int RunLocal(const RunArgs& args, const RunConfig& config,
             const std::optional<tamper::Spec>& spec) {
  std::vector<std::vector<Bytes>> sets;
  for (const PartyEntry& e : config.parties) sets.push_back(LoadParty(config, e).input);
  fs::path out(args.out_dir);
  harness::CommonOptions common;
  common.session = config.session;
  common.salted = config.salted;
  common.seed = config.seed ? *config.seed : RandomSeed();
  common.timeout = config.timeout;

  if (args.construction == "2pc") {
    harness::TwoPartyOptions opts;
    static_cast<harness::CommonOptions&>(opts) = common;
    int target = args.tamper_party < 0 ? psi2::kSenderId : args.tamper_party;
    if (spec) {
      if (target == psi2::kReceiverId) {
        opts.receiver_tamper = spec;
      } else if (target == psi2::kSenderId) {
        opts.sender_tamper = spec;
      } else {
        throw ConfigError("--tamper-party must be 1 or 2 for 2pc");
      }
    }
    auto result = harness::RunLocal2(sets[0], sets[1], opts);
    WriteFile(out / "report.json", report::ToJson(result.report));
    if (result.receiver.intersection) {
      WriteIntersection(out / "intersection.txt", *result.receiver.intersection);
    }
    if (result.report.aborted) {
      std::cerr << "aborted in " << result.report.abort_phase << ": "
                << result.report.abort_reason << "\n";
    }
    return ReportExit(result.report.aborted);
  }

  harness::MultiPartyOptions opts;
  static_cast<harness::CommonOptions&>(opts) = common;
  opts.t = config.t;
  if (spec) {
    int target = args.tamper_party < 0 ? 1 : args.tamper_party;
    if (target < 1 || target > static_cast<int>(sets.size())) {
      throw ConfigError("--tamper-party out of range");
    }
    opts.tamper = std::make_pair(static_cast<PartyId>(target), *spec);
  }
  auto result = harness::RunLocalN(sets, opts);
  WriteFile(out / "report.json", report::ToJson(result.report));
  const psin::Outcome& last = result.outcomes.back();
  if (last.intersection) WriteIntersection(out / "intersection.txt", *last.intersection);
  if (result.report.aborted) {
    std::cerr << "aborted in " << result.report.abort_phase << ": "
              << result.report.abort_reason << "\n";
  }
  return ReportExit(result.report.aborted);
}

PartyId ParseRole(const std::string& role, const RunConfig& config) {
  if (role == "dealer") return transport::kDealer;
  if (role == "receiver") return psi2::kReceiverId;
  if (role == "sender") return psi2::kSenderId;
  size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(role, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != role.size() || role.empty() || v > config.parties.size()) {
    throw ConfigError("unknown role '" + role + "'");
  }
  return static_cast<PartyId>(v);
}

int RunNetworked(const RunArgs& args, const RunConfig& config,
                 const std::optional<tamper::Spec>& spec) {
  if (config.dealer_address.empty()) throw ConfigError("networked runs need a dealer address");
  const PartyId self = ParseRole(args.role, config);
  std::map<PartyId, transport::Address> addresses;
  addresses[transport::kDealer] = transport::ParseAddress(config.dealer_address);
  std::vector<PartyId> ids = {transport::kDealer};
  for (const PartyEntry& e : config.parties) {
    if (e.address.empty()) throw ConfigError("party " + std::to_string(e.index) + " has no address");
    addresses[e.index] = transport::ParseAddress(e.address);
    ids.push_back(e.index);
  }
  const uint64_t seed = config.seed ? *config.seed : RandomSeed();

  transport::TcpEndpoint ep(self, ids, addresses.at(self));
  std::map<PartyId, transport::Address> others = addresses;
  others.erase(self);
  ep.Connect(others, config.timeout);
  ep.AwaitPeers(config.timeout);

  fs::path out(args.out_dir);
  report::Report rep;
  rep.construction = args.construction;
  rep.session = config.session;
  rep.parties = static_cast<uint32_t>(config.parties.size());
  rep.t = args.construction == "npc" ? config.t : 0;

  if (self == transport::kDealer) {
    dealer::DealerService service(ep, harness::DealerSeed(seed));
    service.Run();
    ep.Close();
    report::AddTraffic(rep, ep.meter(), true);
    report::Finish(rep);
    WriteFile(out / "report_dealer.json", report::ToJson(rep));
    return kExitOk;
  }

  const PartyEntry& entry = config.parties.at(self - 1);
  LoadedParty me = LoadParty(config, entry);
  std::vector<merkle::Root> roots;
  for (const PartyEntry& e : config.parties) roots.push_back(LoadRoot(e.root));
  std::optional<tamper::Spec> my_tamper;
  if (spec) {
    int target = args.tamper_party < 0 ? self : args.tamper_party;
    if (target == self) my_tamper = spec;
  }
  crypto::Prg rng = harness::PartyRng(seed, self);

  bool aborted = false;
  std::optional<std::vector<Bytes>> intersection;
  if (args.construction == "2pc") {
    psi2::Config c;
    c.role = self == psi2::kReceiverId ? psi2::Role::kReceiver : psi2::Role::kSender;
    c.input = me.input;
    c.announced_root = me.root;
    c.peer_root = roots.at(self == psi2::kReceiverId ? 1 : 0);
    c.session = config.session;
    c.salted = config.salted;
    c.tamper = my_tamper;
    psi2::Outcome o = psi2::RunParty(ep, c, std::move(rng), config.timeout);
    aborted = o.aborted;
    intersection = o.intersection;
    rep.phase_ms = o.phase_ms;
    rep.abort_phase = o.abort_phase;
    rep.abort_reason = o.abort_reason;
  } else {
    psin::Config c;
    c.index = self;
    c.topology = psin::Topology::Make(rep.parties, config.t);
    c.input = me.input;
    c.roots = roots;
    c.session = config.session;
    c.salted = config.salted;
    c.tamper = my_tamper;
    psin::Outcome o = psin::RunParty(ep, c, std::move(rng), config.timeout);
    aborted = o.aborted;
    intersection = o.intersection;
    rep.phase_ms = o.phase_ms;
    rep.abort_phase = o.abort_phase;
    rep.abort_reason = o.abort_reason;
  }
  ep.Close();

  rep.n = me.input.size();
  rep.aborted = aborted;
  if (intersection) {
    rep.intersection_size = intersection->size();
    WriteIntersection(out / "intersection.txt", *intersection);
  }
  report::AddTraffic(rep, ep.meter(), true);
  report::Finish(rep);
  WriteFile(out / ("report_" + std::to_string(self) + ".json"), report::ToJson(rep));
  if (aborted) {
    std::cerr << "party " << self << " aborted in " << rep.abort_phase << ": "
              << rep.abort_reason << "\n";
  }
  return ReportExit(aborted);
}

int RunRun(const RunArgs& args) {
  RunConfig config = LoadRunConfig(args.config);
  CheckShape(config, args.construction);
  std::optional<tamper::Spec> spec;
  if (!args.tamper.empty()) spec = tamper::Parse(args.tamper);
  if (args.local) return RunLocal(args, config, spec);
  if (args.role.empty()) throw ConfigError("networked runs need --role");
  return RunNetworked(args, config, spec);
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string construction = "2pc";
  std::vector<uint64_t> sizes;
  int reps = 3;
  uint64_t seed = 1;
  std::string out;
};

SessionId BenchSession(uint64_t seed, uint64_t k) {
  SessionId s{};
  crypto::Prg(crypto::Prg::SeedFromU64(seed)).Derive(AsView("bench" + std::to_string(k))).Fill(s);
  return s;
}

int RunBench2(const BenchArgs& args, Json& doc) {
  std::vector<uint64_t> sizes = args.sizes;
  if (sizes.empty()) sizes = {1u << 10, 1u << 12, 1u << 14};
  std::map<uint64_t, const TwoPartyReference*> refs;
  for (const auto& r : TwoPartyReferenceRows()) refs[r.n] = &r;

  std::cout << "n,median_ms,bits_per_element,reference_ms,reference_bits_per_element\n";
  double bmin = 0, bmax = 0;
  uint64_t k = 0;
  for (uint64_t n : sizes) {
    auto g = dataset::Generate({n, 16, args.seed + n, 2, n / 4});
    std::vector<double> ms, bits;
    for (int r = 0; r < args.reps; ++r) {
      harness::TwoPartyOptions opts;
      opts.session = BenchSession(args.seed, k++);
      opts.seed = args.seed + r;
      auto start = std::chrono::steady_clock::now();
      auto res = harness::RunLocal2(g.sets[0], g.sets[1], opts);
      ms.push_back(std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start).count());
      if (res.report.aborted) throw ProtocolError("honest benchmark session aborted");
      bits.push_back(res.report.bits_per_element);
    }
    double m = Median(ms), b = Median(bits);
    bmin = bmin == 0 ? b : std::min(bmin, b);
    bmax = std::max(bmax, b);
    Json row{{"n", n}, {"median_ms", m}, {"bits_per_element", b}, {"runs_ms", ms}};
    auto it = refs.find(n);
    if (it != refs.end()) {
      row["reference_ms"] = it->second->ms;
      row["reference_bits_per_element"] = it->second->bits_per_element;
    }
    doc["rows"].push_back(row);
    std::printf("%llu,%.2f,%.1f,", static_cast<unsigned long long>(n), m, b);
    if (it != refs.end()) {
      std::printf("%.2f,%.0f\n", it->second->ms, it->second->bits_per_element);
    } else {
      std::printf(",\n");
    }
  }
  doc["bits_per_element_spread"] = bmin > 0 ? (bmax - bmin) / bmin : 0.0;
  return kExitOk;
}

int RunBenchN(const BenchArgs& args, Json& doc) {
  std::vector<uint64_t> sizes = args.sizes;
  if (sizes.empty()) sizes = {1u << 8, 1u << 10};
  std::cout << "n_l,parties,t,median_ms,bits_per_element,reference_ms\n";
  uint64_t k = 0;
  for (uint64_t n : sizes) {
    for (const auto& col : MultiPartyReferenceColumns()) {
      auto g = dataset::Generate({n, 16, args.seed + n, col.n, n / 4});
      std::vector<double> ms, bits;
      for (int r = 0; r < args.reps; ++r) {
        harness::MultiPartyOptions opts;
        opts.session = BenchSession(args.seed, k++);
        opts.seed = args.seed + r;
        opts.t = col.t;
        auto start = std::chrono::steady_clock::now();
        auto res = harness::RunLocalN(g.sets, opts);
        ms.push_back(std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start).count());
        if (res.report.aborted) throw ProtocolError("honest benchmark session aborted");
        bits.push_back(res.report.bits_per_element);
      }
      double m = Median(ms), b = Median(bits);
      Json row{{"n_l", n}, {"parties", col.n}, {"t", col.t}, {"median_ms", m},
               {"bits_per_element", b}, {"runs_ms", ms}};
      auto ref = col.ms_by_set_size.find(n);
      if (ref != col.ms_by_set_size.end()) row["reference_ms"] = ref->second;
      doc["rows"].push_back(row);
      std::printf("%llu,%u,%u,%.2f,%.1f,", static_cast<unsigned long long>(n), col.n,
                  col.t, m, b);
      if (ref != col.ms_by_set_size.end()) {
        std::printf("%.2f\n", ref->second);
      } else {
        std::printf("\n");
      }
    }
  }
  return kExitOk;
}

int RunBench(const BenchArgs& args) {
  if (args.reps < 1) throw DomainError("--reps must be at least 1");
  Json doc;
  doc["construction"] = args.construction;
  doc["reps"] = args.reps;
  // A single repetition is a raw measurement, not an aggregate.
  doc["aggregated"] = args.reps > 1;
  doc["statistic"] = args.reps > 1 ? "median" : "single run";
  doc["rows"] = Json::array();
  int rc = args.construction == "npc" ? RunBenchN(args, doc) : RunBench2(args, doc);
  if (!args.out.empty()) WriteFile(args.out, doc.dump(2) + "\n");
  return rc;
}

}  // namespace

// ---------------------------------------------------------------- config

RunConfig ParseRunConfig(const std::string& json_text, const fs::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("run config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  try {
    c.session = ParseSession(j.at("session").get<std::string>());
    c.salted = j.value("salted", true);
    c.t = j.value("t", uint16_t{0});
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    c.timeout = transport::Duration(j.value("timeout_ms", int64_t{60000}));
    c.dealer_address = j.value("dealer", std::string());
    for (const Json& p : j.at("parties")) {
      PartyEntry e;
      e.index = p.at("index").get<PartyId>();
      e.address = p.value("address", std::string());
      e.dataset = base_dir / p.at("dataset").get<std::string>();
      e.root = base_dir / p.at("root").get<std::string>();
      c.parties.push_back(std::move(e));
    }
  } catch (const Json::exception& e) {
    throw DomainError(std::string("run config: ") + e.what());
  }
  std::sort(c.parties.begin(), c.parties.end(),
            [](const PartyEntry& a, const PartyEntry& b) { return a.index < b.index; });
  for (size_t i = 0; i < c.parties.size(); ++i) {
    if (c.parties[i].index != i + 1) {
      throw DomainError("run config: party indices must be 1..n without gaps");
    }
  }
  if (c.parties.size() < 2) throw DomainError("run config: at least two parties");
  if (c.timeout.count() <= 0) throw DomainError("run config: timeout_ms must be positive");
  return c;
}

RunConfig LoadRunConfig(const fs::path& path) {
  return ParseRunConfig(ReadFile(path), path.parent_path());
}

const std::vector<TwoPartyReference>& TwoPartyReferenceRows() {
  static const std::vector<TwoPartyReference> rows = {
      {1u << 10, 39.73, 462},
      {1u << 12, 124.49, 437},
      {1u << 14, 479.52, 455},
      {1u << 16, 1962.60, 467},
  };
  return rows;
}

const std::vector<MultiPartyReference>& MultiPartyReferenceColumns() {
  static const std::vector<MultiPartyReference> cols = {
      {3, 1, {{1u << 8, 117.13}, {1u << 10, 165.13}, {1u << 12, 791.61}}},
      {4, 1, {{1u << 8, 118.21}, {1u << 10, 186.54}, {1u << 12, 795.47}}},
      {4, 2, {{1u << 8, 183.77}, {1u << 10, 241.25}, {1u << 12, 910.91}}},
      {5, 1, {{1u << 8, 116.45}, {1u << 10, 188.76}, {1u << 12, 817.34}}},
      {5, 3, {{1u << 8, 202.76}, {1u << 10, 261.90}, {1u << 12, 907.18}}},
      {8, 1, {{1u << 8, 134.21}, {1u << 10, 183.03}, {1u << 12, 818.51}}},
      {8, 4, {{1u << 8, 205.76}, {1u << 10, 274.56}, {1u << 12, 935.47}}},
  };
  return cols;
}

int Main(int argc, char** argv) {
  CLI::App app{"Authenticated private set intersection"};
  app.require_subcommand(1);
  int rc = kExitOk;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic element sets");
  gen_cmd->add_option("--count", gen.spec.count, "Elements per party")->required();
  gen_cmd->add_option("--elem-bytes", gen.spec.elem_bytes, "Element width in bytes")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--parties", gen.spec.parties, "Number of sets")->capture_default_str();
  gen_cmd->add_option("--overlap", gen.spec.overlap, "Elements common to all sets")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();
  gen_cmd->callback([&] { rc = RunGen(gen); });

  CommitArgs commit;
  auto* commit_cmd = app.add_subcommand("commit", "Compute the Merkle root of a set");
  commit_cmd->add_option("--in", commit.in, "Dataset file")->required();
  commit_cmd->add_option("--session", commit.session, "Session id (32 hex digits)")
      ->required();
  commit_cmd->add_flag("--unsalted", commit.unsalted, "Commit without the session salt");
  commit_cmd->add_option("--out", commit.out, "Write the root wire bytes here");
  commit_cmd->callback([&] { rc = RunCommit(commit); });

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a protocol session");
  run_cmd->add_option("--construction", run.construction, "2pc or npc")
      ->check(CLI::IsMember({"2pc", "npc"}))
      ->capture_default_str();
  run_cmd->add_option("--config", run.config, "Run configuration JSON")->required();
  run_cmd->add_option("--role", run.role, "receiver, sender, dealer or a party index");
  run_cmd->add_flag("--local", run.local, "Run every party in this process");
  run_cmd->add_option("--tamper", run.tamper,
                      "Deviation: flip-element:I, flip-path:I, swap-proofs:I,J, "
                      "extra-element");
  run_cmd->add_option("--tamper-party", run.tamper_party,
                      "Party that deviates (default: sender for 2pc, P1 for npc)");
  run_cmd->add_option("--out-dir", run.out_dir, "Output directory")->capture_default_str();
  run_cmd->callback([&] { rc = RunRun(run); });

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure running time and communication");
  bench_cmd->add_option("--construction", bench.construction, "2pc or npc")
      ->check(CLI::IsMember({"2pc", "npc"}))
      ->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Set sizes")->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per point")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Input and randomness seed")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Write results as JSON here");
  bench_cmd->callback([&] { rc = RunBench(bench); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return kExitAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return rc;
}

}  // namespace authpsi::cli
