// Copyright 2026 The kgqa Authors.
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

#include "kgqa/commands.h"

#include <chrono>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "kgqa/evaluation.h"
#include "kgqa/export.h"
#include "kgqa/pipeline.h"
#include "kgqa/util.h"

namespace kgqa::cli {

using nlohmann::json;
namespace fs = std::filesystem;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSeparatorNotAtomic:
    case ErrorCode::kMissingAux:
      return kExitUsage;
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kTimeout:
    case ErrorCode::kProviderUnavailable:
      return kExitBackend;
    default:
      return kExitData;
  }
}

namespace {

std::string GetString(const json& j, const char* key, std::string fallback = {}) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidConfig, std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

int GetInt(const json& j, const char* key, int fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number_integer()) {
    throw Error(ErrorCode::kInvalidConfig, std::string("'") + key + "' must be an integer");
  }
  return it->get<int>();
}

std::chrono::milliseconds GetTimeout(const json& j, int fallback_ms) {
  return std::chrono::milliseconds(GetInt(j, "timeout_ms", fallback_ms));
}

json SectionOrEmpty(const json& raw, const char* key) {
  auto it = raw.find(key);
  return it == raw.end() || it->is_null() ? json::object() : *it;
}

}  // namespace

PipelineConfig PipelineConfig::FromJson(const json& j, fs::path base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "pipeline config must be an object");
  PipelineConfig cfg;
  cfg.raw = j;
  cfg.base_dir = std::move(base_dir);
  if (std::string prefixes = GetString(j, "prefix_table"); !prefixes.empty()) {
    cfg.table = sparql::PrefixTable::Load(cfg.Resolve(prefixes));
  }
  if (auto it = j.find("composer"); it != j.end() && !it->is_null()) {
    cfg.composer = it->is_string() ? ComposerConfig::Load(cfg.Resolve(it->get<std::string>()))
                                   : ComposerConfig::FromJson(*it);
  }
  cfg.workers = GetInt(j, "workers", 4);
  if (cfg.workers < 1) throw Error(ErrorCode::kInvalidConfig, "'workers' must be >= 1");
  for (const char* key : {"tokenizer", "providers", "backend", "endpoint"}) {
    if (j.contains(key) && !j[key].is_object()) {
      throw Error(ErrorCode::kInvalidConfig, std::string("'") + key + "' must be an object");
    }
  }
  return cfg;
}

PipelineConfig PipelineConfig::Load(const fs::path& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
  PipelineConfig cfg = FromJson(j, path.parent_path());
  cfg.source = path;
  return cfg;
}

fs::path PipelineConfig::Resolve(const std::string& path) const {
  fs::path p(path);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

std::vector<fs::path> PipelineConfig::ReferencedFiles() const {
  std::set<fs::path> files;
  if (!source.empty()) files.insert(source);
  if (std::string p = GetString(raw, "prefix_table"); !p.empty()) files.insert(Resolve(p));
  if (auto it = raw.find("composer"); it != raw.end() && it->is_string()) {
    files.insert(Resolve(it->get<std::string>()));
  }
  const json providers = SectionOrEmpty(raw, "providers");
  for (const auto& [lang, routes] : providers.items()) {
    for (const char* kind : {"annotation", "entities"}) {
      json spec = SectionOrEmpty(routes, kind);
      if (GetString(spec, "type") == "fixture") files.insert(Resolve(GetString(spec, "path")));
    }
  }
  json endpoint = SectionOrEmpty(raw, "endpoint");
  if (GetString(endpoint, "type") == "fixture") files.insert(Resolve(GetString(endpoint, "path")));
  return {files.begin(), files.end()};
}

std::shared_ptr<const Tokenizer> MakeTokenizer(const PipelineConfig& cfg) {
  json spec = SectionOrEmpty(cfg.raw, "tokenizer");
  const std::string type = GetString(spec, "type", "whitespace");
  if (type == "whitespace") return std::make_shared<WhitespaceTokenizer>();
  if (type == "remote") {
    return std::make_shared<RemoteTokenizer>(GetString(spec, "url"), GetTimeout(spec, 30000),
                                             GetInt(spec, "max_in_flight", 4));
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown tokenizer type '" + type + "'");
}

namespace {

template <typename Provider, typename Fixture, typename Remote, typename Routed,
          typename MakeRemote>
std::shared_ptr<const Provider> MakeRouted(const PipelineConfig& cfg, const char* kind,
                                           MakeRemote make_remote) {
  auto routed = std::make_shared<Routed>();
  std::map<fs::path, std::shared_ptr<const Provider>> fixtures;
  bool any = false;
  const json providers = SectionOrEmpty(cfg.raw, "providers");
  for (const auto& [lang, routes] : providers.items()) {
    json spec = SectionOrEmpty(routes, kind);
    if (spec.empty()) continue;
    const std::string type = GetString(spec, "type");
    std::shared_ptr<const Provider> provider;
    if (type == "fixture") {
      fs::path path = cfg.Resolve(GetString(spec, "path"));
      auto& cached = fixtures[path];
      if (!cached) cached = std::make_shared<Fixture>(Fixture::Load(path));
      provider = cached;
    } else if (type == "remote") {
      provider = make_remote(spec, lang);
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string(kind) + " provider for '" + lang + "': unknown type '" + type + "'");
    }
    routed->Route(lang, std::move(provider));
    any = true;
  }
  if (!any) return nullptr;
  return routed;
}

}  // namespace

std::shared_ptr<const AnnotationProvider> MakeAnnotationProvider(const PipelineConfig& cfg) {
  return MakeRouted<AnnotationProvider, FixtureAnnotationProvider, RemoteAnnotationProvider,
                    LanguageRoutedAnnotationProvider>(
      cfg, "annotation", [](const json& spec, const std::string& lang) {
        RemoteAnnotationProvider::Options options;
        options.url = GetString(spec, "url");
        options.timeout = GetTimeout(spec, 30000);
        options.max_in_flight = GetInt(spec, "max_in_flight", 4);
        options.languages = {lang};
        return std::make_shared<RemoteAnnotationProvider>(std::move(options));
      });
}

std::shared_ptr<const EntityProvider> MakeEntityProvider(const PipelineConfig& cfg) {
  return MakeRouted<EntityProvider, FixtureEntityProvider, RemoteEntityProvider,
                    LanguageRoutedEntityProvider>(
      cfg, "entities", [](const json& spec, const std::string& lang) {
        RemoteEntityProvider::Options options;
        options.url = GetString(spec, "url");
        options.timeout = GetTimeout(spec, 30000);
        options.max_in_flight = GetInt(spec, "max_in_flight", 4);
        options.languages = {lang};
        if (auto it = spec.find("components"); it != spec.end()) {
          options.components = it->get<std::vector<std::string>>();
        }
        return std::make_shared<RemoteEntityProvider>(std::move(options));
      });
}

std::shared_ptr<const GeneratorBackend> MakeBackend(const json& spec, const Benchmark& benchmark,
                                                    const sparql::PrefixTable& table) {
  const std::string type = GetString(spec, "type", "gold-echo");
  if (type == "gold-echo") return std::make_shared<GoldEchoBackend>(benchmark, table);
  if (type == "empty") return std::make_shared<EmptyBackend>();
  if (type == "remote") {
    RemoteGenerator::Options options;
    options.url = GetString(spec, "url");
    options.timeout = GetTimeout(spec, 60000);
    options.max_in_flight = GetInt(spec, "max_in_flight", 2);
    return std::make_shared<RemoteGenerator>(std::move(options));
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown backend type '" + type + "'");
}

std::shared_ptr<const Endpoint> MakeEndpoint(const PipelineConfig& cfg, const Benchmark* benchmark) {
  json spec = SectionOrEmpty(cfg.raw, "endpoint");
  const std::string type = GetString(spec, "type", "gold-answers");
  if (type == "fixture") {
    return std::make_shared<FixtureStore>(
        FixtureStore::Load(cfg.Resolve(GetString(spec, "path")), cfg.table));
  }
  if (type == "gold-answers") {
    if (!benchmark) throw Error(ErrorCode::kInvalidConfig, "gold-answers endpoint needs a dataset");
    return std::make_shared<FixtureStore>(FixtureStore::FromGoldAnswers(*benchmark, cfg.table));
  }
  if (type == "http") return std::make_shared<HttpEndpoint>(EndpointConfig::FromJson(spec));
  throw Error(ErrorCode::kInvalidConfig, "unknown endpoint type '" + type + "'");
}

Benchmark LoadDataset(const fs::path& path, Source source, bool include_paraphrases) {
  if (source == Source::kLcQuad2) return LoadLcQuad(path, {include_paraphrases});
  return LoadQald(path, source);
}

namespace {

struct GlobalOptions {
  std::string config_path;
  bool verbose = false;
  std::string seed = "0";
  std::string command_line;
};

struct DatasetOptions {
  std::string path;
  std::string source = "qald9plus";
  std::string lang = "en";
  bool paraphrases = false;
};

struct FeatureFlags {
  std::optional<bool> ling;
  std::optional<bool> ent;
  std::string composer_path;
};

void AddDatasetOptions(CLI::App* cmd, DatasetOptions& d, bool with_lang = true) {
  cmd->add_option("--dataset", d.path, "Benchmark JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--source", d.source, "qald9plus, qald10 or lcquad2")
      ->check(CLI::IsMember({"qald9plus", "qald10", "lcquad2"}));
  if (with_lang) cmd->add_option("--lang", d.lang, "Question language (ISO 639-1)");
  cmd->add_flag("--paraphrases", d.paraphrases, "Also load LC-QuAD paraphrased questions");
}

void AddFeatureFlags(CLI::App* cmd, FeatureFlags& f) {
  cmd->add_flag_callback("--ling", [&f] { f.ling = true; }, "Enable linguistic blocks");
  cmd->add_flag_callback("--no-ling", [&f] { f.ling = false; }, "Disable linguistic blocks");
  cmd->add_flag_callback("--ent", [&f] { f.ent = true; }, "Enable the entity block");
  cmd->add_flag_callback("--no-ent", [&f] { f.ent = false; }, "Disable the entity block");
  cmd->add_option("--composer", f.composer_path, "Composer config JSON (overrides --config)")
      ->check(CLI::ExistingFile);
}

PipelineConfig LoadPipelineConfig(const GlobalOptions& g) {
  if (g.config_path.empty()) return PipelineConfig::FromJson(json::object(), fs::current_path());
  return PipelineConfig::Load(g.config_path);
}

ComposerConfig EffectiveComposer(const PipelineConfig& cfg, const FeatureFlags& f) {
  ComposerConfig composer =
      f.composer_path.empty() ? cfg.composer : ComposerConfig::Load(f.composer_path);
  if (f.ling) composer.use_ling = *f.ling;
  if (f.ent) composer.use_ent = *f.ent;
  return composer;
}

Benchmark LoadFromOptions(const DatasetOptions& d) {
  return LoadDataset(d.path, ParseSource(d.source), d.paraphrases);
}

PipelineContext MakeContext(const PipelineConfig& cfg, const ComposerConfig& composer) {
  PipelineContext ctx;
  ctx.table = cfg.table;
  ctx.tokenizer = MakeTokenizer(cfg);
  if (composer.use_ling) {
    ctx.annotation = MakeAnnotationProvider(cfg);
    if (!ctx.annotation) {
      throw Error(ErrorCode::kInvalidConfig, "linguistic blocks enabled but no annotation provider configured");
    }
  }
  if (composer.use_ent) {
    ctx.entities = MakeEntityProvider(cfg);
    if (!ctx.entities) {
      throw Error(ErrorCode::kInvalidConfig, "entity block enabled but no entity provider configured");
    }
  }
  return ctx;
}

std::string UtcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json FileEntry(const fs::path& path) {
  std::string hash;
  try {
    hash = Sha256Hex(ReadFile(path));
  } catch (const Error&) {
    hash = "unreadable";
  }
  return json{{"path", path.string()}, {"sha256", hash}};
}

json Manifest(const GlobalOptions& g, const PipelineConfig& cfg,
              const std::vector<fs::path>& datasets, const std::string& backend,
              const std::string& fingerprint, const std::vector<std::string>& outputs) {
  json configs = json::array();
  for (const fs::path& p : cfg.ReferencedFiles()) configs.push_back(FileEntry(p));
  json data = json::array();
  for (const fs::path& p : datasets) data.push_back(FileEntry(p));
  return json{{"command_line", g.command_line},
              {"configs", configs},
              {"datasets", data},
              {"backend", backend},
              {"seed", g.seed},
              {"config_fingerprint", fingerprint},
              {"outputs", outputs},
              {"timestamp", UtcTimestamp()}};
}

int RunPrepare(const GlobalOptions& g, const DatasetOptions& d, const FeatureFlags& f,
               const std::string& out) {
  PipelineConfig cfg = LoadPipelineConfig(g);
  ComposerConfig composer = EffectiveComposer(cfg, f);
  Benchmark benchmark = LoadFromOptions(d);
  PipelineContext ctx = MakeContext(cfg, composer);
  ExportStats stats;
  std::vector<TrainingRecord> records =
      ExportTrainingPairs(benchmark, d.lang, composer, ctx, &stats);
  WriteFile(out, ToJsonl(records));
  json fp_config{{"command", "prepare"}, {"lang", d.lang}, {"composer", composer.ToJson()},
                 {"tokenizer", ctx.tokenizer->name()}, {"providers", SectionOrEmpty(cfg.raw, "providers")}};
  WriteFile(out + ".manifest.json",
            Manifest(g, cfg, {d.path}, "", ConfigFingerprint(fp_config, BenchmarkHash(benchmark)), {out})
                    .dump(2) + "\n");
  spdlog::info("prepare: wrote {} record(s) to {} ({} skipped as unparseable)", stats.written,
               out, stats.skipped_unparseable);
  return kExitOk;
}

int RunRefresh(const GlobalOptions& g, const DatasetOptions& d, const std::string& out,
               const std::string& record_path) {
  PipelineConfig cfg = LoadPipelineConfig(g);
  Benchmark benchmark = LoadFromOptions(d);
  std::shared_ptr<const Endpoint> endpoint;
  std::optional<FixtureStore> store;
  std::shared_ptr<const HttpEndpoint> live;
  if (!record_path.empty()) {
    json spec = SectionOrEmpty(cfg.raw, "endpoint");
    if (GetString(spec, "type") != "http") {
      throw Error(ErrorCode::kInvalidConfig, "--record needs an http endpoint in --config");
    }
    live = std::make_shared<HttpEndpoint>(EndpointConfig::FromJson(spec));
    store = fs::exists(record_path) ? FixtureStore::Load(record_path, cfg.table)
                                    : FixtureStore(cfg.table);
    endpoint = std::make_shared<RecordingEndpoint>(*live, *store);
  } else {
    json spec = SectionOrEmpty(cfg.raw, "endpoint");
    if (GetString(spec, "type").empty() || GetString(spec, "type") == "gold-answers") {
      throw Error(ErrorCode::kInvalidConfig,
                  "refresh-answers needs an http or fixture endpoint in --config");
    }
    endpoint = MakeEndpoint(cfg, &benchmark);
  }

  const std::size_t n = benchmark.items.size();
  std::vector<QueryOutcome> outcomes(n);
  ParallelFor(n, cfg.workers, [&](std::size_t i) {
    outcomes[i] = endpoint->Execute(benchmark.items[i].gold_sparql);
  });

  Benchmark refreshed = benchmark;
  std::size_t failed = 0, empty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    QaItem& item = refreshed.items[i];
    if (const auto* failure = std::get_if<QueryFailure>(&outcomes[i])) {
      ++failed;
      spdlog::warn("refresh: {} dropped ({}): {}", item.id, FailureKindName(failure->kind),
                   failure->message);
      item.gold_answers = AnswerSet::Empty();
      continue;
    }
    item.gold_answers = std::get<AnswerSet>(outcomes[i]);
    if (AnswerTuples(item.gold_answers).empty()) {
      ++empty;
      spdlog::info("refresh: {} dropped (empty answer)", item.id);
    }
  }
  Benchmark filtered = FilterEmptyGold(refreshed);
  SaveQald(filtered, out);
  if (store) store->Save(record_path);
  WriteFile(out + ".manifest.json",
            Manifest(g, cfg, {d.path}, "", "", {out}).dump(2) + "\n");
  spdlog::info("refresh: {} item(s) in, {} retained, {} endpoint failure(s), {} empty answer(s)",
               n, filtered.items.size(), failed, empty);
  if (n > 0 && failed == n) {
    spdlog::error("refresh: every query failed; endpoint unusable");
    return kExitBackend;
  }
  return kExitOk;
}

std::string MatrixCellName(const std::vector<std::string>& features, const ComposerConfig& c) {
  std::string name;
  for (const std::string& f : features) {
    if (!name.empty()) name += "_";
    const bool on = f == "ling" ? c.use_ling : c.use_ent;
    name += f + (on ? "-on" : "-off");
  }
  return name;
}

int RunEvaluate(const GlobalOptions& g, const DatasetOptions& d, const FeatureFlags& f,
                const std::vector<std::string>& matrix, const std::string& backend_override,
                const std::string& out_dir) {
  PipelineConfig cfg = LoadPipelineConfig(g);
  const ComposerConfig base = EffectiveComposer(cfg, f);
  Benchmark benchmark = LoadFromOptions(d);
  const std::string dataset_hash = BenchmarkHash(benchmark);

  json backend_spec = SectionOrEmpty(cfg.raw, "backend");
  if (!backend_override.empty()) backend_spec["type"] = backend_override;
  std::shared_ptr<const GeneratorBackend> backend = MakeBackend(backend_spec, benchmark, cfg.table);
  std::shared_ptr<const Endpoint> endpoint = MakeEndpoint(cfg, &benchmark);

  std::vector<std::string> features;
  for (const std::string& m : matrix) {
    if (std::find(features.begin(), features.end(), m) == features.end()) features.push_back(m);
  }
  std::vector<ComposerConfig> cells;
  const std::size_t combos = std::size_t{1} << features.size();
  for (std::size_t mask = combos; mask-- > 0;) {
    ComposerConfig c = base;
    for (std::size_t k = 0; k < features.size(); ++k) {
      const bool on = (mask >> (features.size() - 1 - k)) & 1;
      (features[k] == "ling" ? c.use_ling : c.use_ent) = on;
    }
    cells.push_back(std::move(c));
  }

  PipelineOptions options;
  options.lang = d.lang;
  options.workers = cfg.workers;
  options.max_output_tokens = GetInt(backend_spec, "max_output_tokens", 256);
  if (auto it = backend_spec.find("params"); it != backend_spec.end()) options.backend_params = *it;

  for (const ComposerConfig& composer : cells) {
    PipelineContext ctx = MakeContext(cfg, composer);
    ctx.backend = backend;
    ctx.endpoint = endpoint;
    options.composer = composer;
    json fp_config{{"command", "evaluate"},
                   {"lang", d.lang},
                   {"composer", composer.ToJson()},
                   {"tokenizer", ctx.tokenizer->name()},
                   {"backend", backend_spec},
                   {"backend_name", backend->name()},
                   {"endpoint", endpoint->name()},
                   {"providers", SectionOrEmpty(cfg.raw, "providers")},
                   {"seed", g.seed}};
    const std::string fingerprint = ConfigFingerprint(fp_config, dataset_hash);
    EvaluationRun run = RunEvaluation(benchmark, options, ctx, fingerprint);

    const fs::path dir = features.empty() ? fs::path(out_dir)
                                          : fs::path(out_dir) / MatrixCellName(features, composer);
    json report = ReportToJson(run.report);
    report["manifest"] = "manifest.json";
    WriteFile(dir / "report.json", report.dump(2) + "\n");
    EmitReport(run.report, dir / "report.txt", ReportFormat::kTable);
    std::string traces;
    for (const QuestionTrace& t : run.traces) {
      traces += json{{"id", t.id}, {"input", t.input}, {"prediction", t.prediction},
                     {"decoded", t.decoded}, {"status", t.status}, {"message", t.message}}
                    .dump();
      traces.push_back('\n');
    }
    WriteFile(dir / "predictions.jsonl", traces);
    WriteFile(dir / "manifest.json",
              Manifest(g, cfg, {d.path}, backend->name(), fingerprint,
                       {(dir / "report.json").string(), (dir / "report.txt").string(),
                        (dir / "predictions.jsonl").string()})
                      .dump(2) + "\n");
    const std::string label = features.empty() ? backend->name() : MatrixCellName(features, composer);
    std::cout << FormatTable(run.report, label);
    spdlog::info("evaluate: {} answered {}/{} -> {}", label, run.report.n_answered,
                 run.report.n_questions, dir.string());
  }
  return kExitOk;
}

int RunAnnotate(const GlobalOptions& g, const DatasetOptions& d, const std::string& out,
                const std::string& entities_out) {
  PipelineConfig cfg = LoadPipelineConfig(g);
  Benchmark benchmark = LoadFromOptions(d);
  auto annotation = MakeAnnotationProvider(cfg);
  if (!annotation) throw Error(ErrorCode::kInvalidConfig, "no annotation provider configured");
  std::shared_ptr<const EntityProvider> entities;
  if (!entities_out.empty()) {
    entities = MakeEntityProvider(cfg);
    if (!entities) throw Error(ErrorCode::kInvalidConfig, "no entity provider configured");
  }

  std::vector<const QaItem*> items;
  for (const QaItem& item : benchmark.items) {
    if (item.texts.count(d.lang)) items.push_back(&item);
  }
  std::vector<std::vector<TokenAnnotation>> tokens(items.size());
  std::vector<std::vector<EntityLink>> links(items.size());
  ParallelFor(items.size(), cfg.workers, [&](std::size_t i) {
    const std::string& text = items[i]->texts.at(d.lang);
    tokens[i] = annotation->Annotate(text, d.lang);
    ComputeDepths(tokens[i]);
    if (entities) links[i] = entities->Candidates(text, d.lang);
  });

  FixtureAnnotationProvider ann_fixture;
  FixtureEntityProvider ent_fixture;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& text = items[i]->texts.at(d.lang);
    ann_fixture.Add(d.lang, text, std::move(tokens[i]));
    if (entities) ent_fixture.Add(d.lang, text, std::move(links[i]));
  }
  WriteFile(out, ann_fixture.ToJsonl());
  std::vector<std::string> outputs{out};
  if (entities) {
    WriteFile(entities_out, ent_fixture.ToJsonl());
    outputs.push_back(entities_out);
  }
  WriteFile(out + ".manifest.json",
            Manifest(g, cfg, {d.path}, "", "", outputs).dump(2) + "\n");
  spdlog::info("annotate: {} question(s) in '{}' ({} without that language)", items.size(),
               d.lang, benchmark.items.size() - items.size());
  return kExitOk;
}

int RunValidateConfig(const GlobalOptions& g, const DatasetOptions& d, const FeatureFlags& f) {
  PipelineConfig cfg = LoadPipelineConfig(g);
  ComposerConfig composer = EffectiveComposer(cfg, f);
  auto tokenizer = MakeTokenizer(cfg);
  std::vector<ProbeInput> probe;
  if (!d.path.empty()) {
    Benchmark benchmark = LoadFromOptions(d);
    std::shared_ptr<const AnnotationProvider> annotation =
        composer.use_ling ? MakeAnnotationProvider(cfg) : nullptr;
    std::shared_ptr<const EntityProvider> entities =
        composer.use_ent ? MakeEntityProvider(cfg) : nullptr;
    for (const QaItem& item : benchmark.items) {
      auto text = item.texts.find(d.lang);
      if (text == item.texts.end()) continue;
      std::optional<AnnotatedQuestion> ann;
      std::optional<std::vector<EntityLink>> links;
      if (annotation) ann = Annotate(text->second, d.lang, *annotation);
      if (entities) links = LinkEntities(text->second, d.lang, *entities);
      probe.push_back(ProbeInput{text->second, AuxiliaryBundle::From(ann ? &*ann : nullptr,
                                                                     links ? &*links : nullptr)});
    }
  }
  ConfigReport report = ValidateConfig(composer, *tokenizer, probe);
  json out{{"tokenizer", tokenizer->name()}, {"probe_size", report.probe_size},
           {"blocks", json::object()}};
  for (Block b : ActiveBlocks(composer)) {
    json block{{"width", composer.width(b)}, {"separator", composer.separator(b)}};
    if (auto it = report.p95_content_length.find(b); it != report.p95_content_length.end()) {
      block["p95_content_length"] = it->second;
      block["fits"] = report.fits.at(b);
      if (!report.fits.at(b)) {
        spdlog::warn("validate-config: {} p95 length {} exceeds width {}", BlockName(b),
                     it->second, composer.width(b));
      }
    }
    out["blocks"][std::string(BlockName(b))] = block;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

void ConfigureLogging(bool verbose) {
  auto logger = spdlog::get("kgqa");
  if (!logger) {
    logger = spdlog::stderr_color_mt("kgqa");
    spdlog::set_default_logger(logger);
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);
}

}  // namespace

int Main(const std::vector<std::string>& args) {
  CLI::App app{"Multilingual knowledge-graph question answering toolkit", "kgqa"};
  app.require_subcommand(1);
  GlobalOptions g;
  for (std::size_t i = 0; i < args.size(); ++i) g.command_line += (i ? " " : "") + args[i];
  app.add_option("--config", g.config_path, "Pipeline config JSON")->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", g.verbose, "Debug logging");
  app.add_option("--seed", g.seed, "Salt mixed into config fingerprints");

  DatasetOptions d;
  FeatureFlags f;
  std::string out, record_path, entities_out, backend_override;
  std::vector<std::string> matrix;

  CLI::App* prepare = app.add_subcommand("prepare", "Export JSONL training pairs");
  AddDatasetOptions(prepare, d);
  AddFeatureFlags(prepare, f);
  prepare->add_option("--out", out, "Output JSONL path")->required();

  CLI::App* refresh = app.add_subcommand("refresh-answers",
                                         "Re-run gold queries and drop empty-answer items");
  AddDatasetOptions(refresh, d, false);
  refresh->add_option("--out", out, "Output dataset path")->required();
  refresh->add_option("--record", record_path, "Record live responses into this fixture file");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Run the pipeline and score it");
  AddDatasetOptions(evaluate, d);
  AddFeatureFlags(evaluate, f);
  evaluate->add_option("--matrix", matrix, "Ablate these features (ling,ent)")
      ->delimiter(',')
      ->check(CLI::IsMember({"ling", "ent"}));
  evaluate->add_option("--backend", backend_override, "Override the configured backend type")
      ->check(CLI::IsMember({"gold-echo", "empty", "remote"}));
  evaluate->add_option("--out", out, "Output directory")->required();

  CLI::App* annotate = app.add_subcommand("annotate", "Precompute annotation fixtures");
  AddDatasetOptions(annotate, d);
  annotate->add_option("--out", out, "Annotation fixture JSONL")->required();
  annotate->add_option("--entities-out", entities_out, "Entity fixture JSONL");

  CLI::App* validate = app.add_subcommand("validate-config", "Check composer widths and separators");
  validate->add_option("--dataset", d.path, "Probe questions")->check(CLI::ExistingFile);
  validate->add_option("--source", d.source, "qald9plus, qald10 or lcquad2")
      ->check(CLI::IsMember({"qald9plus", "qald10", "lcquad2"}));
  validate->add_option("--lang", d.lang, "Probe language");
  AddFeatureFlags(validate, f);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  ConfigureLogging(g.verbose);
  try {
    if (*prepare) return RunPrepare(g, d, f, out);
    if (*refresh) return RunRefresh(g, d, out, record_path);
    if (*evaluate) return RunEvaluate(g, d, f, matrix, backend_override, out);
    if (*annotate) return RunAnnotate(g, d, out, entities_out);
    if (*validate) return RunValidateConfig(g, d, f);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    spdlog::error("unexpected failure: {}", e.what());
    return kExitData;
  }
  return kExitUsage;
}

int Main(int argc, char** argv) {
  return Main(std::vector<std::string>(argv, argv + argc));
}

}  // namespace kgqa::cli
