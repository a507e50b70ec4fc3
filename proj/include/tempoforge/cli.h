// Copyright 2026 The Tempoforge Authors.
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

// Command-line front end. RunCommand is the whole tool; tools/tempoforge.cc
// only forwards argv. Needs OpenSSL (libcrypto) for manifest digests.

#ifndef TEMPOFORGE_CLI_H_
#define TEMPOFORGE_CLI_H_

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempoforge/artifacts.h"
#include "tempoforge/candidates.h"
#include "tempoforge/config.h"
#include "tempoforge/generator.h"
#include "tempoforge/lexicon.h"
#include "tempoforge/render.h"
#include "tempoforge/splits.h"
#include "tempoforge/template.h"
#include "tempoforge/util.h"
#include "tempoforge/validate.h"

#ifndef TEMPOFORGE_VERSION
#define TEMPOFORGE_VERSION "0.0.0"
#endif
#ifndef TEMPOFORGE_DATA_DIR
#define TEMPOFORGE_DATA_DIR "data"
#endif

namespace tempoforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitArtifacts = 2;
inline constexpr int kExitUsage = 64;

inline constexpr std::string_view kManifestName = "run_manifest.json";

inline std::string Sha256Hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

// logfmt lines on stderr.
class Log {
 public:
  Log(std::ostream& err, std::string command) : err_(err), command_(std::move(command)) {}

  void Info(std::string_view msg) { Emit("info", msg); }
  void Warn(std::string_view msg) { Emit("warn", msg); }
  void Fail(std::string_view msg) { Emit("error", msg); }

 private:
  void Emit(std::string_view level, std::string_view msg) {
    err_ << "level=" << level << " cmd=" << command_
         << " msg=" << nlohmann::json(std::string(msg)).dump() << "\n";
  }

  std::ostream& err_;
  std::string command_;
};

// One per output directory. Written with complete=false before any output
// and rewritten with complete=true at the end, so an interrupted run is
// recognizable.
class RunManifest {
 public:
  RunManifest(std::string dir, std::string command, const GenConfig& config)
      : dir_(std::move(dir)), command_(std::move(command)), config_(config) {
    std::filesystem::create_directories(dir_);
    Write(false);
  }

  const std::string& dir() const { return dir_; }

  void Input(const std::string& role, const std::string& name, std::string_view bytes) {
    inputs_.push_back({role, name, Sha256Hex(bytes)});
  }

  void Output(const std::string& name, std::string_view bytes) {
    util::WriteFile((std::filesystem::path(dir_) / name).string(), bytes);
    outputs_[name] = Sha256Hex(bytes);
  }

  // Output written by someone else (append logs).
  void Record(const std::string& name) {
    outputs_[name] = Sha256Hex(util::ReadFile((std::filesystem::path(dir_) / name).string()));
  }

  void Stage(const std::string& name) { stages_.push_back(name); }

  void Write(bool complete) const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["version"] = TEMPOFORGE_VERSION;
    j["run_seed"] = config_.seed;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ConfigToMap(config_)) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json in = nlohmann::ordered_json::array();
    for (const auto& i : inputs_) {
      in.push_back({{"role", i.role}, {"file", i.name}, {"sha256", i.sha256}});
    }
    j["inputs"] = in;
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [k, v] : outputs_) out[k] = v;
    j["outputs"] = out;
    if (!stages_.empty()) j["stages"] = stages_;
    j["complete"] = complete;
    util::WriteFile((std::filesystem::path(dir_) / kManifestName).string(), j.dump(2) + "\n");
  }

 private:
  struct InputRecord {
    std::string role, name, sha256;
  };
  std::string dir_;
  std::string command_;
  GenConfig config_;
  std::vector<InputRecord> inputs_;
  std::map<std::string, std::string> outputs_;
  std::vector<std::string> stages_;
};

struct Options {
  std::string out;
  std::string config_file;
  std::string lexicon;
  std::string names;
  std::string blocklist;
  std::string templates;
  std::string render_table;
  std::string taxonomy;
  std::map<std::string, std::string> overrides;  // --<config key>
};

inline Options DefaultOptions() {
  const std::filesystem::path data(TEMPOFORGE_DATA_DIR);
  Options o;
  o.lexicon = (data / "lexicon.tsv").string();
  o.names = (data / "names.txt").string();
  o.blocklist = (data / "blocklist.txt").string();
  o.templates = (data / "demo_pack.tpl").string();
  o.render_table = (data / "render" / "ja.tsv").string();
  o.taxonomy = (data / "taxonomy.tsv").string();
  return o;
}

// defaults < config file < environment < flags
inline GenConfig ResolveConfig(GenConfig base, const Options& o,
                               const std::function<const char*(const char*)>& getenv) {
  if (!o.config_file.empty()) ApplyConfigText(base, util::ReadFile(o.config_file));
  ApplyConfigEnv(base, getenv);
  for (const auto& [k, v] : o.overrides) SetConfigValue(base, k, v);
  return base;
}

namespace cli_internal {

inline std::string Basename(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

inline std::string Load(RunManifest* m, const std::string& role, const std::string& path) {
  std::string bytes = util::ReadFile(path);
  if (m) m->Input(role, Basename(path), bytes);
  return bytes;
}

inline std::string Sub(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

struct PackCheck {
  std::vector<Template> templates;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

inline PackCheck CheckPack(std::string_view text, const Taxonomy& taxonomy, const GenConfig& c) {
  auto parsed = ParseTemplates(text, taxonomy);
  bool ok = parsed.ok();
  PackCheck pc{std::move(parsed.templates), std::move(parsed.diagnostics), false};
  if (ok) {
    for (auto& d : ValidatePack(pc.templates, c)) {
      ok = ok && !d.is_error();
      pc.diagnostics.push_back(std::move(d));
    }
  }
  pc.ok = ok;
  return pc;
}

inline std::string DiagnosticsText(const std::vector<Diagnostic>& diags) {
  std::string out;
  int errors = 0, warnings = 0;
  for (const auto& d : diags) {
    out += d.ToString() + "\n";
    (d.is_error() ? errors : warnings)++;
  }
  out += std::to_string(errors) + " error(s), " + std::to_string(warnings) + " warning(s)\n";
  return out;
}

inline std::vector<Template> RequirePack(std::string_view text, const Taxonomy& taxonomy,
                                         const GenConfig& c, Log& log) {
  auto parsed = ParseTemplates(text, taxonomy);
  for (const auto& d : parsed.diagnostics) {
    if (d.is_error()) log.Fail(d.ToString());
  }
  if (!parsed.ok()) throw ValidationError("template pack has errors; run validate");
  (void)c;
  return std::move(parsed.templates);
}

inline Lexicon BuildLexicon(std::string_view frames, std::string_view names,
                            std::string_view blocklist, const GenConfig& c) {
  return FilterLexicon(ParseLexicon(frames, names, blocklist), c.verb_min_freq, c.noun_min_freq);
}

inline std::string FeasibleTsv(const std::map<std::string, FeasibleSet>& feasible) {
  std::string out = "template_id\tlabels\texact\n";
  for (const auto& [id, f] : feasible) {
    std::vector<std::string> names;
    for (Label l : f.labels) names.emplace_back(LabelName(l));
    out += id + "\t" + util::Join(names, ",") + "\t" + (f.exact ? "true" : "false") + "\n";
  }
  return out;
}

inline std::string LabelCountsTsv(const std::vector<Problem>& problems) {
  std::array<int64_t, 3> n{};
  for (const auto& p : problems) n[static_cast<int>(p.gold)]++;
  std::string out = "label\tcount\n";
  for (int i = 0; i < 3; ++i) {
    out += std::string(LabelName(static_cast<Label>(i))) + "\t" + std::to_string(n[i]) + "\n";
  }
  return out;
}

inline std::string DecisionsText(const Decisions& d) {
  std::string out;
  for (const auto& [id, v] : d) out += id + "\t" + std::string(DecisionName(v)) + "\n";
  return out;
}

inline std::string LinesText(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

inline void RequireOut(const Options& o) {
  if (o.out.empty()) throw ValidationError("--out is required");
}

// Stage bodies shared by single commands and demo. Each writes into its
// manifest's directory.

inline std::vector<SentenceCandidate> StageCandidates(RunManifest& m,
                                                      const std::vector<Template>& templates,
                                                      const Lexicon& lex, const GenConfig& c,
                                                      Log& log) {
  auto res = GenCandidates(templates, lex, c);
  m.Output("candidates.jsonl", WriteCandidates(res.candidates));
  m.Output("gen_log.txt", LinesText(res.log));
  int test = 0;
  for (const auto& cand : res.candidates) test += cand.pool == Pool::kTest;
  log.Info(std::to_string(res.candidates.size()) + " candidates (" + std::to_string(test) +
           " test pool)");
  return std::move(res.candidates);
}

inline std::vector<Problem> StageInstantiate(RunManifest& m, const std::vector<Template>& templates,
                                             const std::vector<SentenceCandidate>& reviewed,
                                             const RenderTable& table, const GenConfig& c,
                                             Log& log) {
  auto res = Instantiate(templates, reviewed, table, c);
  for (const auto& line : res.log) log.Warn(line);
  m.Output("problems.jsonl", WriteProblems(res.problems));
  m.Output("instantiate_log.txt", LinesText(res.log));
  m.Output("feasible.tsv", FeasibleTsv(res.feasible));
  m.Output("label_counts.tsv", LabelCountsTsv(res.problems));
  log.Info(std::to_string(res.problems.size()) + " problems");
  return std::move(res.problems);
}

inline int StageAnalyze(RunManifest& m, const std::vector<Problem>& problems, const GenConfig& c,
                        Log& log) {
  const auto report = Analyze(problems, c.alpha, c.min_count);
  m.Output("report.tsv", ReportTsv(report));
  m.Output("plot.tsv", PlotTsv(report));
  const auto flagged = report.NumFlagged();
  log.Info(std::to_string(report.stats.size()) + " tokens tested, " + std::to_string(flagged) +
           " flagged");
  return flagged > 0 ? kExitArtifacts : kExitOk;
}

inline void StageSplit(RunManifest& m, const std::vector<Problem>& problems,
                       const SplitManifest& sm, Log& log) {
  const auto r = BuildSplit(problems, sm);
  m.Output("split.manifest", FormatManifest(sm));
  m.Output("train.jsonl", WriteProblems(r.train));
  m.Output("test.jsonl", WriteTestItems(r.test));
  m.Output("summary.tsv", SplitSummaryTsv(r));
  int seen = 0;
  for (const auto& t : r.test) seen += t.seen;
  log.Info(std::string(AxisName(sm.axis)) + "/" + sm.variant + ": train " +
           std::to_string(r.train.size()) + ", test " + std::to_string(r.test.size()) + " (" +
           std::to_string(seen) + " seen)");
}

}  // namespace cli_internal

// Full CLI. `args` excludes the program name. Streams are injectable for
// tests; `getenv` defaults to the process environment.
inline int RunCommand(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                      std::ostream& err,
                      std::function<const char*(const char*)> getenv = nullptr) {
  using namespace cli_internal;
  if (!getenv) getenv = [](const char* n) { return static_cast<const char*>(std::getenv(n)); };

  CLI::App app{"tempoforge: template-based temporal NLI dataset generator", "tempoforge"};
  app.set_version_flag("--version", TEMPOFORGE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Options o = DefaultOptions();
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--config", o.config_file, "GenConfig file (key = value)");
  app.add_option("--lexicon", o.lexicon, "Case-frame lexicon TSV");
  app.add_option("--names", o.names, "Agent name list");
  app.add_option("--blocklist", o.blocklist, "Blocklist");
  app.add_option("--templates", o.templates, "Template pack");
  app.add_option("--render-table", o.render_table, "Render table TSV");
  app.add_option("--taxonomy", o.taxonomy, "Tense-fragment taxonomy TSV");
  std::vector<std::pair<std::string, CLI::Option*>> key_opts;
  for (const auto& key : ConfigKeys()) {
    auto* opt = app.add_option("--" + key, o.overrides[key], "Config " + key);
    key_opts.emplace_back(key, opt);
  }

  auto* validate = app.add_subcommand("validate", "Parse and lint a template pack");
  std::string pack_arg;
  validate->add_option("pack", pack_arg, "Template pack (default: --templates)");

  auto* gen = app.add_subcommand("gen-candidates", "Draw content-word candidates");

  auto* review = app.add_subcommand("review", "Terminal review queue for test candidates");
  std::string candidates_path, decisions_path, filter;
  review->add_option("--candidates", candidates_path, "Candidates JSONL");
  review->add_option("--decisions", decisions_path, "Append-only decision log");
  review->add_option("--filter", filter, "Only ids containing this string");
  review->require_subcommand(0, 1);
  auto* merge = review->add_subcommand("merge", "Merge per-reviewer decision files");
  std::vector<std::string> reviewer_files;
  std::string policy = "majority";
  merge->add_option("files", reviewer_files, "Decision files")->required();
  merge->add_option("--policy", policy, "majority or unanimity")
      ->check(CLI::IsMember({"majority", "unanimity"}));

  auto* inst = app.add_subcommand("instantiate", "Assign temporal values and gold labels");
  std::string inst_candidates, inst_decisions;
  inst->add_option("--candidates", inst_candidates, "Candidates JSONL")->required();
  inst->add_option("--decisions", inst_decisions, "Decision file");

  auto* analyze = app.add_subcommand("analyze", "Token/label artifact screening");
  std::string problems_path;
  analyze->add_option("--problems", problems_path, "Problems JSONL")->required();

  auto* split = app.add_subcommand("split", "Build a controlled split");
  std::string split_problems, preset, manifest_path;
  split->add_option("--problems", split_problems, "Problems JSONL")->required();
  auto* preset_opt = split->add_option("--preset", preset, "Built-in split")
                         ->check(CLI::IsMember(PresetNames()));
  auto* manifest_opt = split->add_option("--manifest", manifest_path, "Split manifest file");
  preset_opt->excludes(manifest_opt);

  auto* score = app.add_subcommand("score", "Score prediction files on a split");
  std::string test_path, split_name = "split";
  std::vector<std::string> prediction_files;
  score->add_option("--test", test_path, "test.jsonl from split")->required();
  score->add_option("--predictions", prediction_files, "One file per run")->required();
  score->add_option("--name", split_name, "Split name for the report");

  auto* demo = app.add_subcommand("demo", "Run the whole pipeline on the shipped data");

  std::vector<std::string> argv_store = {"tempoforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << TEMPOFORGE_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (split->parsed() && preset.empty() && manifest_path.empty()) {
    err << "error: split needs --preset or --manifest\n\n" << split->help();
    return kExitUsage;
  }
  if (review->parsed() && !merge->parsed() && candidates_path.empty()) {
    err << "error: review needs --candidates (or the merge subcommand)\n\n" << review->help();
    return kExitUsage;
  }
  {
    std::map<std::string, std::string> given;
    for (const auto& [key, opt] : key_opts) {
      if (opt->count() > 0) given[key] = o.overrides[key];
    }
    o.overrides = std::move(given);
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (merge->parsed()) command = "review merge";
  Log log(err, command);
  try {
    GenConfig base;
    if (demo->parsed()) base.review_mode = ReviewMode::kPermissive;
    const GenConfig config = ResolveConfig(base, o, getenv);

    if (validate->parsed()) {
      const std::string pack = pack_arg.empty() ? o.templates : pack_arg;
      std::unique_ptr<RunManifest> m;
      if (!o.out.empty()) m = std::make_unique<RunManifest>(o.out, command, config);
      const auto tax = Taxonomy::Parse(Load(m.get(), "taxonomy", o.taxonomy));
      const auto pc = CheckPack(Load(m.get(), "templates", pack), tax, config);
      for (const auto& d : pc.diagnostics) (d.is_error() ? log.Fail(d.ToString()) : log.Warn(d.ToString()));
      log.Info(std::to_string(pc.templates.size()) + " templates, " +
               (pc.ok ? "no errors" : "errors found"));
      if (m) {
        m->Output("diagnostics.txt", DiagnosticsText(pc.diagnostics));
        m->Write(true);
      }
      return pc.ok ? kExitOk : kExitValidation;
    }

    if (gen->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      const auto tax = Taxonomy::Parse(Load(&m, "taxonomy", o.taxonomy));
      const auto templates = RequirePack(Load(&m, "templates", o.templates), tax, config, log);
      const auto lex = BuildLexicon(Load(&m, "lexicon", o.lexicon), Load(&m, "names", o.names),
                                    Load(&m, "blocklist", o.blocklist), config);
      StageCandidates(m, templates, lex, config, log);
      m.Write(true);
      return kExitOk;
    }

    if (merge->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      std::vector<Decisions> all;
      for (size_t i = 0; i < reviewer_files.size(); ++i) {
        all.push_back(ParseDecisions(Load(&m, "reviewer_" + std::to_string(i + 1), reviewer_files[i])));
      }
      const auto merged = MergeDecisions(
          all, policy == "unanimity" ? MergePolicy::kUnanimity : MergePolicy::kMajority);
      m.Output("decisions.tsv", DecisionsText(merged));
      log.Info(std::to_string(merged.size()) + " merged decisions (" + policy + ")");
      m.Write(true);
      return kExitOk;
    }

    if (review->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      const auto candidates = ReadCandidates(Load(&m, "candidates", candidates_path));
      const std::string log_path = decisions_path.empty() ? Sub(o.out, "decisions.tsv") : decisions_path;
      Decisions existing;
      if (std::filesystem::exists(log_path)) existing = ParseDecisions(util::ReadFile(log_path));
      std::ofstream decisions_log(log_path, std::ios::app | std::ios::binary);
      if (!decisions_log) throw Error("cannot open decision log " + log_path);
      const auto s = RunReviewQueue(candidates, existing, in, out, decisions_log, filter);
      decisions_log.close();
      if (decisions_path.empty()) m.Record("decisions.tsv");
      log.Info("accepted " + std::to_string(s.accepted) + ", rejected " +
               std::to_string(s.rejected) + ", skipped " + std::to_string(s.skipped) +
               (s.quit ? " (quit)" : ""));
      m.Write(true);
      return kExitOk;
    }

    if (inst->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      const auto tax = Taxonomy::Parse(Load(&m, "taxonomy", o.taxonomy));
      const auto templates = RequirePack(Load(&m, "templates", o.templates), tax, config, log);
      const auto table = RenderTable::Parse(Load(&m, "render_table", o.render_table));
      const auto candidates = ReadCandidates(Load(&m, "candidates", inst_candidates));
      Decisions decisions;
      if (!inst_decisions.empty()) decisions = ParseDecisions(Load(&m, "decisions", inst_decisions));
      const auto reviewed = ApplyReview(candidates, decisions, config.review_mode);
      StageInstantiate(m, templates, reviewed, table, config, log);
      m.Write(true);
      return kExitOk;
    }

    if (analyze->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      const auto problems = ReadProblems(Load(&m, "problems", problems_path));
      const int rc = StageAnalyze(m, problems, config, log);
      if (rc == kExitArtifacts) log.Warn("artifact tokens flagged; see report.tsv");
      m.Write(true);
      return rc;
    }

    if (split->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      const auto problems = ReadProblems(Load(&m, "problems", split_problems));
      const SplitManifest sm =
          preset.empty() ? ParseManifest(Load(&m, "manifest", manifest_path)) : Preset(preset);
      StageSplit(m, problems, sm, log);
      m.Write(true);
      return kExitOk;
    }

    if (score->parsed()) {
      RequireOut(o);
      RunManifest m(o.out, command, config);
      const auto test = ReadTestItems(Load(&m, "test", test_path));
      std::vector<Predictions> runs;
      for (size_t i = 0; i < prediction_files.size(); ++i) {
        runs.push_back(ParsePredictions(Load(&m, "run_" + std::to_string(i + 1), prediction_files[i])));
      }
      const auto r = Score(test, runs, config.sample_std);
      m.Output("score.tsv", ScoreTsv(r, split_name));
      m.Output("score_runs.tsv", ScoreRunsTsv(r));
      m.Output("confusion.tsv", ConfusionTsv(r));
      out << ScoreText(r, split_name);
      m.Write(true);
      return kExitOk;
    }

    if (demo->parsed()) {
      RequireOut(o);
      RunManifest top(o.out, command, config);
      const std::string tax_text = Load(&top, "taxonomy", o.taxonomy);
      const std::string pack_text = Load(&top, "templates", o.templates);
      const std::string lex_text = Load(&top, "lexicon", o.lexicon);
      const std::string names_text = Load(&top, "names", o.names);
      const std::string block_text = Load(&top, "blocklist", o.blocklist);
      const std::string table_text = Load(&top, "render_table", o.render_table);
      const auto tax = Taxonomy::Parse(tax_text);

      log.Info("validate");
      PackCheck pc;
      {
        RunManifest m(Sub(o.out, "validate"), "validate", config);
        m.Input("taxonomy", Basename(o.taxonomy), tax_text);
        m.Input("templates", Basename(o.templates), pack_text);
        pc = CheckPack(pack_text, tax, config);
        m.Output("diagnostics.txt", DiagnosticsText(pc.diagnostics));
        m.Write(true);
        top.Stage("validate");
      }
      for (const auto& d : pc.diagnostics) (d.is_error() ? log.Fail(d.ToString()) : log.Warn(d.ToString()));
      if (!pc.ok) {
        top.Write(false);
        return kExitValidation;
      }

      log.Info("gen-candidates");
      std::vector<SentenceCandidate> candidates;
      {
        RunManifest m(Sub(o.out, "candidates"), "gen-candidates", config);
        m.Input("templates", Basename(o.templates), pack_text);
        m.Input("lexicon", Basename(o.lexicon), lex_text);
        m.Input("names", Basename(o.names), names_text);
        m.Input("blocklist", Basename(o.blocklist), block_text);
        const auto lex = BuildLexicon(lex_text, names_text, block_text, config);
        candidates = StageCandidates(m, pc.templates, lex, config, log);
        m.Write(true);
        top.Stage("candidates");
      }

      log.Info("review");
      std::vector<SentenceCandidate> reviewed;
      {
        RunManifest m(Sub(o.out, "review"), "review", config);
        m.Input("candidates", "candidates/candidates.jsonl", WriteCandidates(candidates));
        const Decisions none;
        m.Output("decisions.tsv", DecisionsText(none));
        reviewed = ApplyReview(candidates, none, config.review_mode);
        m.Output("reviewed_candidates.jsonl", WriteCandidates(reviewed));
        log.Info(std::to_string(reviewed.size()) + " candidates after review (" +
                 std::string(config.review_mode == ReviewMode::kStrict ? "strict" : "permissive") +
                 ")");
        m.Write(true);
        top.Stage("review");
      }

      log.Info("instantiate");
      std::vector<Problem> problems;
      {
        RunManifest m(Sub(o.out, "instantiate"), "instantiate", config);
        m.Input("templates", Basename(o.templates), pack_text);
        m.Input("render_table", Basename(o.render_table), table_text);
        m.Input("candidates", "review/reviewed_candidates.jsonl", WriteCandidates(reviewed));
        problems = StageInstantiate(m, pc.templates, reviewed, RenderTable::Parse(table_text),
                                    config, log);
        m.Write(true);
        top.Stage("instantiate");
      }
      const std::string problems_text = WriteProblems(problems);

      log.Info("analyze");
      {
        RunManifest m(Sub(o.out, "analyze"), "analyze", config);
        m.Input("problems", "instantiate/problems.jsonl", problems_text);
        if (StageAnalyze(m, problems, config, log) == kExitArtifacts) {
          log.Warn("artifact tokens flagged; see analyze/report.tsv");
        }
        m.Write(true);
        top.Stage("analyze");
      }

      for (const auto& name : PresetNames()) {
        log.Info("split " + name);
        RunManifest m(Sub(Sub(o.out, "splits"), name), "split", config);
        m.Input("problems", "instantiate/problems.jsonl", problems_text);
        StageSplit(m, problems, Preset(name), log);
        m.Write(true);
        top.Stage("splits/" + name);
      }
      top.Write(true);
      log.Info("done");
      return kExitOk;
    }
  } catch (const std::exception& e) {
    log.Fail(e.what());
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace tempoforge::cli

#endif  // TEMPOFORGE_CLI_H_
