// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <glob.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "framecache/cache.h"
#include "framecache/error.h"
#include "framecache/io.h"
#include "framecache/json.h"
#include "framecache/match.h"
#include "framecache/pipeline.h"
#include "framecache/synth.h"

namespace framecache::cli {
namespace {

enum class LogLevel { kQuiet, kInfo, kDebug };

LogLevel LevelFromEnv() {
  const char* v = std::getenv("FRAMECACHE_LOG");
  if (v == nullptr) return LogLevel::kInfo;
  const std::string_view s(v);
  if (s == "quiet") return LogLevel::kQuiet;
  if (s == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err), level_(LevelFromEnv()) {}
  void Info(const std::string& msg) const {
    if (level_ >= LogLevel::kInfo) err_ << "[info] " << msg << '\n';
  }
  void Debug(const std::string& msg) const {
    if (level_ >= LogLevel::kDebug) err_ << "[debug] " << msg << '\n';
  }
  void Fail(const std::string& msg) const { err_ << "error: " << msg << '\n'; }

 private:
  std::ostream& err_;
  LogLevel level_;
};

// Raised after a verification check fails; carries the exit status.
struct VerificationFailure {
  std::string message;
};

struct RunFlags {
  double lambda = 0.6;
  double alpha = 0.95;
  size_t capacity = 8;
  double theta_g = 1.0;
  size_t window = 16;
  std::string policy = "framecache";

  void AddTo(CLI::App* cmd, bool with_policy) {
    cmd->add_option("--lambda", lambda, "CLIP-IQA weight in the combined score")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "threshold strictness")->capture_default_str();
    cmd->add_option("--capacity", capacity, "cache capacity (slot 0 pinned)")
        ->capture_default_str();
    cmd->add_option("--theta-g", theta_g, "redundancy threshold on the gain")
        ->capture_default_str();
    cmd->add_option("--window", window, "frames per generation window")
        ->capture_default_str();
    if (with_policy) {
      cmd->add_option("--policy", policy,
                      "framecache | static_first | fifo | most_recent")
          ->capture_default_str();
    }
  }

  RunConfig ToConfig() const {
    RunConfig config;
    config.screen = ScreenConfig{lambda, alpha};
    config.cache = CachePolicyConfig{capacity, theta_g};
    config.window = window;
    config.policy = ParsePolicy(policy);
    ValidateRunConfig(config);
    return config;
  }
};

std::string Fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string OptionalFixed(const std::optional<double>& v) {
  return v ? Fixed(*v) : std::string("n/a");
}

void PrintSummary(const RunSummary& s, std::ostream& out) {
  out << "windows " << s.windows << ", admitted " << s.admitted << ", filtered "
      << s.filtered << '\n'
      << "inserted " << s.inserted << ", replaced " << s.replaced
      << ", rejected " << s.rejected << '\n'
      << "cache size " << s.cache_size << ", mean pairwise similarity "
      << OptionalFixed(s.mean_pairwise_similarity) << '\n'
      << "hits";
  for (int64_t h : s.hits) out << ' ' << h;
  out << '\n';
}

// Checks the incremental cache against the from-scratch oracle after every
// cache step. Stops at the first divergence.
class OracleChecker : public StepObserver {
 public:
  static constexpr double kTolerance = 1e-9;

  void OnCacheStep(int64_t index, const ReferenceCache& before,
                   const CacheEntry& candidate,
                   const ReplacementDecision& decision,
                   const ReferenceCache& after) override {
    ++steps_;
    if (failure_) return;
    const std::string where =
        "step " + std::to_string(steps_) + " (record " + std::to_string(index) + ")";
    if (!(after.entry(0) == before.entry(0))) {
      failure_ = where + ": pinned slot 0 changed";
      return;
    }
    if (after.size() > after.capacity()) {
      failure_ = where + ": cache exceeds capacity";
      return;
    }
    if (!decision.gains.empty()) {
      const OracleResult pre = OracleRecompute(before, &candidate.appearance);
      for (size_t i = 0; i < decision.gains.size(); ++i) {
        const double d = std::abs(decision.gains[i].gain - (*pre.gains)[i].gain);
        if (decision.gains[i].slot != (*pre.gains)[i].slot || d > kTolerance) {
          failure_ = where + ": gain of slot " +
                     std::to_string(decision.gains[i].slot) +
                     " diverges from oracle by " + FormatDouble(d);
          return;
        }
      }
    }
    const double dev = MaxOracleDeviation(after, OracleRecompute(after));
    max_deviation_ = std::max(max_deviation_, dev);
    if (dev > kTolerance) {
      failure_ = where + ": similarity state diverges from oracle by " +
                 FormatDouble(dev);
    }
  }

  const std::optional<std::string>& failure() const { return failure_; }
  size_t steps() const { return steps_; }
  double max_deviation() const { return max_deviation_; }

 private:
  size_t steps_ = 0;
  double max_deviation_ = 0.0;
  std::optional<std::string> failure_;
};

std::vector<std::string> ExpandGlob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0) {
    for (size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

Json OptionalJson(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

int CmdRun(const std::string& stream_path, const std::string& out_path,
           const std::string& snapshot_path, const RunFlags& flags,
           std::ostream& out, const Log& log) {
  const RunConfig config = flags.ToConfig();
  const FrameStream stream = ReadStreamFile(stream_path);
  log.Info("running " + std::string(PolicyName(config.policy)) + " on " +
           std::to_string(stream.records.size()) + " records");
  const RunResult result = RunStream(stream, config);
  WriteTraceFile(result.events, out_path);
  if (!snapshot_path.empty()) WriteSnapshotFile(result.cache, snapshot_path);
  log.Debug("wrote " + std::to_string(result.events.size()) + " events to " +
            out_path);
  PrintSummary(result.summary, out);
  return kExitOk;
}

int CmdVerify(const std::string& stream_path, const RunFlags& flags,
              std::ostream& out, const Log& log) {
  const RunConfig config = flags.ToConfig();
  const FrameStream stream = ReadStreamFile(stream_path);
  OracleChecker checker;
  const RunResult checked = RunStream(stream, config, &checker);
  if (checker.failure()) {
    throw VerificationFailure{"oracle divergence at " + *checker.failure()};
  }
  const RunResult replay = RunStream(stream, config);
  const std::string a = TraceToString(checked.events);
  const std::string b = TraceToString(replay.events);
  if (a != b) {
    size_t line = 1;
    for (size_t i = 0; i < std::min(a.size(), b.size()) && a[i] == b[i]; ++i) {
      if (a[i] == '\n') ++line;
    }
    throw VerificationFailure{"replay diverges at trace line " +
                              std::to_string(line)};
  }
  log.Debug("max oracle deviation " + FormatDouble(checker.max_deviation()));
  out << "verified " << checker.steps() << " cache steps, "
      << checked.events.size() << " events; max deviation "
      << FormatDouble(checker.max_deviation()) << '\n';
  return kExitOk;
}

int CmdMatch(const std::string& snapshot_path, const std::string& stream_path,
             size_t start, size_t len, std::ostream& out) {
  const ReferenceCache cache = ReadSnapshotFile(snapshot_path);
  const FrameStream stream = ReadStreamFile(stream_path);
  if (len == 0 || start >= stream.records.size() ||
      len > stream.records.size() - start) {
    throw Error(ErrorCode::kConfigError, "window lies outside the stream");
  }
  if (stream.d_p != cache.pose_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "stream pose dim differs from snapshot",
                static_cast<int64_t>(cache.pose_dim()),
                static_cast<int64_t>(stream.d_p));
  }
  std::vector<FeatureVector> targets;
  for (size_t i = start; i < start + len; ++i) targets.push_back(stream.records[i].pose);
  const MatchResult m = SelectReference(cache, targets);
  out << DumpJson(Json{{"window_start", start},
                       {"window_len", len},
                       {"selected_slot", m.selected_slot},
                       {"selected_frame_id", cache.entry(m.selected_slot).frame_id},
                       {"selected_score", m.selected_score},
                       {"scores", m.per_slot_scores}})
      << '\n';
  return kExitOk;
}

int CmdCompare(const std::string& pattern, const std::string& policy_list,
               const std::string& out_path, const RunFlags& flags,
               std::ostream& out, const Log& log) {
  const RunConfig config = flags.ToConfig();
  std::vector<Policy> policies;
  for (const std::string& name : SplitCommas(policy_list)) {
    policies.push_back(ParsePolicy(name));
  }
  if (policies.empty()) throw Error(ErrorCode::kConfigError, "no policies given");
  const std::vector<std::string> paths = ExpandGlob(pattern);
  if (paths.empty()) {
    throw Error(ErrorCode::kEmptyStream, "no streams match '" + pattern + "'");
  }
  std::vector<NamedStream> streams;
  for (const std::string& p : paths) streams.push_back({p, ReadStreamFile(p)});
  log.Info("comparing " + std::to_string(policies.size()) + " policies on " +
           std::to_string(streams.size()) + " streams");

  const std::vector<PolicyReport> reports =
      ComparePolicies(streams, config, policies);
  Json report_json = Json::array();
  for (const PolicyReport& r : reports) {
    Json per_stream = Json::array();
    for (const StreamFigures& f : r.per_stream) {
      per_stream.push_back(Json{{"stream", f.name},
                                {"inserted", f.inserted},
                                {"replaced", f.replaced},
                                {"rejected", f.rejected},
                                {"cache_size", f.cache_size},
                                {"mean_pairwise_similarity",
                                 OptionalJson(f.mean_pairwise_similarity)}});
    }
    report_json.push_back(Json{{"policy", PolicyName(r.policy)},
                               {"mean_final_similarity",
                                OptionalJson(r.mean_final_similarity)},
                               {"streams_with_similarity", r.streams_with_similarity},
                               {"inserted", r.inserted},
                               {"replaced", r.replaced},
                               {"rejected", r.rejected},
                               {"hits", r.hits},
                               {"per_stream", std::move(per_stream)}});
    out << std::left << std::setw(14) << PolicyName(r.policy)
        << " similarity " << OptionalFixed(r.mean_final_similarity)
        << "  replaced " << r.replaced << "  rejected " << r.rejected << '\n';
  }
  const Json doc{{"streams", paths.size()},
                 {"config",
                  Json{{"lambda", config.screen.lambda},
                       {"alpha", config.screen.alpha},
                       {"capacity", config.cache.capacity},
                       {"redundancy_threshold", config.cache.redundancy_threshold},
                       {"window", config.window}}},
                 {"policies", std::move(report_json)}};
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  file << DumpJson(doc) << '\n';
  file.close();
  if (!file) throw Error(ErrorCode::kSinkError, "cannot write '" + out_path + "'");
  return kExitOk;
}

int CmdStats(const std::string& trace_path, std::ostream& out) {
  const std::vector<TraceEvent> events = ReadTraceFile(trace_path);
  if (events.empty() || events.front().kind != EventKind::kInit) {
    throw Error(ErrorCode::kSchemaViolation, "trace must start with Init");
  }
  if (events.front().payload.value("version", "") != kTraceVersion) {
    throw Error(ErrorCode::kSchemaViolation,
                std::string("trace version must be ") + kTraceVersion);
  }
  size_t counts[7] = {};
  for (const TraceEvent& e : events) ++counts[static_cast<int>(e.kind)];
  out << "replaced " << counts[static_cast<int>(EventKind::kReplaced)]
      << ", rejected " << counts[static_cast<int>(EventKind::kRejected)]
      << ", inserted " << counts[static_cast<int>(EventKind::kInserted)]
      << ", windows " << counts[static_cast<int>(EventKind::kWindowMatched)] << '\n';
  const TraceEvent& last = events.back();
  if (last.kind == EventKind::kSummary) {
    const Json& sim = last.payload.at("mean_pairwise_similarity");
    out << "final diversity (mean pairwise similarity) "
        << (sim.is_null() ? std::string("n/a") : Fixed(sim.get<double>()))
        << '\n'
        << "hits";
    for (const Json& h : last.payload.at("hits")) out << ' ' << h.get<int64_t>();
    out << '\n';
  } else {
    out << "trace has no Summary (incomplete run)\n";
  }
  return kExitOk;
}

}  // namespace

int Dispatch(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err) {
  const Log log(err);
  CLI::App app("Reference-frame cache policy engine: replay, verify, compare.",
               "framecache");
  app.require_subcommand(1);

  std::function<int()> action;

  std::string stream_path, out_path, snapshot_path, trace_path, streams_glob;
  RunFlags flags;

  auto* run = app.add_subcommand("run", "run the pipeline and write a trace");
  run->add_option("--stream", stream_path, "input .fcs stream")->required();
  run->add_option("--out", out_path, "output .fct trace")->required();
  run->add_option("--snapshot-out", snapshot_path, "write the final cache snapshot");
  flags.AddTo(run, true);
  run->callback([&] {
    action = [&] { return CmdRun(stream_path, out_path, snapshot_path, flags, out, log); };
  });

  auto* verify = app.add_subcommand(
      "verify", "check the incremental cache against the oracle at every step");
  verify->add_option("--stream", stream_path, "input .fcs stream")->required();
  flags.AddTo(verify, true);
  verify->callback([&] { action = [&] { return CmdVerify(stream_path, flags, out, log); }; });

  SynthConfig synth_config;
  std::string mode = "clustered";
  auto* synth = app.add_subcommand("synth", "generate a synthetic stream");
  synth->add_option("--seed", synth_config.seed)->capture_default_str();
  synth->add_option("--mode", mode, "clustered | orthogonal_burst | drift")
      ->capture_default_str();
  synth->add_option("--n", synth_config.n, "frame count")->capture_default_str();
  synth->add_option("--d-a", synth_config.d_a, "appearance dim")->capture_default_str();
  synth->add_option("--d-p", synth_config.d_p, "pose dim")->capture_default_str();
  synth->add_option("--clusters", synth_config.clusters)->capture_default_str();
  synth->add_option("--noise", synth_config.noise)->capture_default_str();
  synth->add_option("--out", out_path, "output .fcs stream")->required();
  synth->callback([&] {
    action = [&] {
      synth_config.mode = ParseSynthMode(mode);
      WriteStreamFile(GenerateSynthetic(synth_config), out_path);
      log.Info("wrote " + std::to_string(synth_config.n) + " records to " + out_path);
      return kExitOk;
    };
  });

  size_t window_start = 1, window_len = 16;
  auto* match = app.add_subcommand("match", "match one window against a snapshot");
  match->add_option("--snapshot", snapshot_path, "cache snapshot .json")->required();
  match->add_option("--stream", stream_path, "input .fcs stream")->required();
  match->add_option("--window-start", window_start)->required();
  match->add_option("--window-len", window_len)->required();
  match->callback([&] {
    action = [&] { return CmdMatch(snapshot_path, stream_path, window_start, window_len, out); };
  });

  std::string policies = "framecache,fifo,static_first,most_recent";
  auto* compare = app.add_subcommand("compare", "compare policies over streams");
  compare->add_option("--streams", streams_glob, "glob of .fcs streams")->required();
  compare->add_option("--policies", policies, "comma-separated policies")
      ->capture_default_str();
  compare->add_option("--out", out_path, "report .json")->required();
  flags.AddTo(compare, false);
  compare->callback([&] {
    action = [&] { return CmdCompare(streams_glob, policies, out_path, flags, out, log); };
  });

  auto* stats = app.add_subcommand("stats", "summarize a trace");
  stats->add_option("--trace", trace_path, "input .fct trace")->required();
  stats->callback([&] { action = [&] { return CmdStats(trace_path, out); }; });

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(),
                                argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    return action();
  } catch (const VerificationFailure& f) {
    log.Fail("verification failed: " + f.message);
    return kExitFailure;
  } catch (const Error& e) {
    log.Fail(e.what());
    return e.code() == ErrorCode::kConfigError ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    log.Fail(e.what());
    return kExitFailure;
  }
}

}  // namespace framecache::cli
