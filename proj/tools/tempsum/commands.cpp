// Copyright 2026 The Tempsum Authors.
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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_manifest.hpp"
#include "tempsum/dataset/builder.hpp"
#include "tempsum/error.hpp"
#include "tempsum/ingest/food_log.hpp"
#include "tempsum/ingest/series.hpp"
#include "tempsum/ingest/synth.hpp"
#include "tempsum/nn/checkpoint.hpp"
#include "tempsum/nn/model.hpp"
#include "tempsum/protoform/catalog.hpp"
#include "tempsum/protoform/generate.hpp"
#include "tempsum/text/tokenize.hpp"
#include "tempsum/train/evaluate.hpp"
#include "tempsum/train/report.hpp"
#include "tempsum/train/trainer.hpp"
#include "tempsum/util/date.hpp"

namespace tempsum::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 7;
constexpr const char* kSeedEnv = "TEMPSUM_SEED";

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// `key = value` lines; `#` starts a comment.
std::map<std::string, std::string> read_key_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(n) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size() && text.find('-') == std::string::npos) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(source + ": seed must be a non-negative integer, got '" + text + "'");
}

/// Seed precedence: flag, then config file, then TEMPSUM_SEED, then the default.
std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t flag_value,
                           const std::map<std::string, std::string>& config) {
  if (flag->count() > 0) return flag_value;
  if (const auto it = config.find("seed"); it != config.end()) return parse_seed(it->second, "config");
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') return parse_seed(env, kSeedEnv);
  return kDefaultSeed;
}

std::string option_key(const CLI::Option* opt) {
  auto name = opt->get_single_name();
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

/// Fills options not given on the command line from config entries.
void apply_config(CLI::App& sub, const std::map<std::string, std::string>& config) {
  for (const auto& [key, value] : config) {
    if (key == "seed") continue;
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = sub.get_option_no_throw("--" + flag);
    if (opt == nullptr || flag == "config") {
      throw ConfigError("unknown config key '" + key + "' for " + sub.get_name());
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

/// Effective value of every named option, for the run manifest.
std::map<std::string, std::string> effective_config(const CLI::App& sub) {
  std::map<std::string, std::string> out;
  for (const CLI::Option* opt : sub.get_options()) {
    const auto key = option_key(opt);
    if (key == "help" || key == "config" || key == "seed") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    out[key] = value;
  }
  return out;
}

void ensure_directory(const fs::path& dir) {
  if (fs::exists(dir) && !fs::is_directory(dir)) throw Error(dir.string() + " exists and is not a directory");
  fs::create_directories(dir);
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<protoform::SummaryType> parse_types(const std::vector<std::string>& names) {
  std::vector<protoform::SummaryType> types;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    types.assign(protoform::kAllSummaryTypes.begin(), protoform::kAllSummaryTypes.end());
    return types;
  }
  for (const auto& n : names) types.push_back(protoform::summary_type_from_string(n));
  return types;
}

json summary_json(const std::string& user, const ingest::TimeSeries& s, std::size_t as_of,
                  const protoform::SummaryInstance& inst) {
  json fills = json::array();
  for (const auto& f : inst.slot_fills) {
    fills.push_back({{"kind", std::string(text::placeholder(f.kind))}, {"surface", f.surface}});
  }
  json segments = json::array();
  for (const auto& seg : inst.segments) segments.push_back({seg.begin + 1, seg.end});
  const auto w = inst.window();
  json j;
  j["user_id"] = user;
  j["summary_type"] = std::string(protoform::to_string(inst.type));
  j["as_of"] = format_date(s.date_at(as_of));
  j["summary"] = text::detokenize(inst.summary_tokens);
  j["template"] = inst.template_tokens;
  j["slot_fills"] = fills;
  j["window"] = {w.begin + 1, w.end};
  if (inst.segments.size() > 1) j["segments"] = segments;
  j["truth_degree"] = inst.truth_degree;
  return j;
}

struct Common {
  std::ostream& out;
  std::ostream& err;
};

// ---------------------------------------------------------------- synth

struct SynthArgs {
  fs::path config;
  std::uint64_t seed = kDefaultSeed;
  std::size_t users = 20;
  std::size_t days = 120;
  std::vector<std::string> sets;
  fs::path output;
};

int run_synth(CLI::App& sub, const SynthArgs& a, Common io) {
  ingest::SynthConfig cfg;
  std::map<std::string, std::string> file_kv;
  if (!a.config.empty()) {
    file_kv = read_key_values(a.config);
    cfg = ingest::SynthConfig::from_file(a.config);
  }
  for (const auto& item : a.sets) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + item + "'");
    cfg.set(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  if (sub.get_option("--users")->count() > 0) cfg.n_users = a.users;
  if (sub.get_option("--days")->count() > 0) cfg.days_per_user = a.days;
  cfg.seed = resolve_seed(sub.get_option("--seed"), a.seed, file_kv);
  cfg.validate();

  const auto records = ingest::synth_generate(cfg);
  ensure_parent(a.output);
  ingest::write_food_log(a.output, records);

  RunManifest m;
  m.command = "synth";
  m.config = cfg.to_key_values();
  m.seed = cfg.seed;
  if (!a.config.empty()) m.inputs.push_back(a.config.string());
  m.outputs.push_back(a.output.string());
  m.catalog_hash = protoform::catalog_hash();
  write_run_manifest(m, a.output, false);
  io.out << "wrote " << records.size() << " records for " << cfg.n_users << " users to " << a.output.string()
         << '\n';
  return 0;
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  fs::path input;
  fs::path output = "series_store.json";
  std::size_t min_days = ingest::kDefaultMinDays;
  bool lenient = false;
};

int run_ingest(CLI::App& sub, const IngestArgs& a, Common io) {
  ingest::ParseOptions opts;
  opts.strict = !a.lenient;
  const auto parsed = ingest::parse_food_log(a.input, opts);
  for (const auto& issue : parsed.malformed) {
    io.err << "warning: line " << issue.line << ": " << issue.message << '\n';
  }
  const auto built = ingest::build_series(parsed.records, ingest::Attribute::calorie_intake, a.min_days);
  for (const auto& w : built.warnings) io.err << "warning: " << w << '\n';
  ensure_parent(a.output);
  ingest::write_series_store(a.output, built.series);

  RunManifest m;
  m.command = "ingest";
  m.config = effective_config(sub);
  m.seed = 0;
  m.inputs.push_back(a.input.string());
  m.outputs.push_back(a.output.string());
  m.catalog_hash = protoform::catalog_hash();
  write_run_manifest(m, a.output, false);
  io.out << "series store with " << built.series.size() << " users (" << parsed.records.size() << " records, "
         << parsed.malformed.size() << " malformed rows, " << built.dropped_users << " users dropped) written to "
         << a.output.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- summarize

struct SummarizeArgs {
  fs::path store;
  std::vector<std::string> types;
  std::size_t stride = 7;
  fs::path output;
};

int run_summarize(CLI::App& sub, const SummarizeArgs& a, Common io) {
  if (a.stride == 0) throw ConfigError("--stride must be positive");
  const auto series = ingest::read_series_store(a.store);
  const auto types = parse_types(a.types);
  ensure_directory(a.output);

  RunManifest m;
  m.command = "summarize";
  m.config = effective_config(sub);
  m.inputs.push_back(a.store.string());
  m.catalog_hash = protoform::catalog_hash();

  for (const auto type : types) {
    const auto& rule = protoform::rule_for(type);
    std::vector<std::string> lines;
    for (const auto& s : series) {
      if (s.size() < rule.min_history_days) continue;
      const protoform::SeriesContext ctx(s);
      std::vector<std::string> user_lines;
      for (std::size_t as_of = s.size() - 1;; as_of -= a.stride) {
        try {
          for (const auto& inst : protoform::generate_summary(type, ctx, as_of)) {
            user_lines.push_back(summary_json(s.user_id, s, as_of, inst).dump());
          }
        } catch (const InsufficientHistoryError&) {
        }
        if (as_of < a.stride || as_of - a.stride + 1 < rule.min_history_days) break;
      }
      lines.insert(lines.end(), user_lines.rbegin(), user_lines.rend());
    }
    const auto path = a.output / (std::string(protoform::to_string(type)) + ".jsonl");
    std::string body;
    for (const auto& l : lines) body += l + '\n';
    write_text(path, body);
    m.outputs.push_back(path.string());
    io.out << protoform::to_string(type) << ": " << lines.size() << " summaries\n";
  }
  write_run_manifest(m, a.output, true);
  return 0;
}

// ---------------------------------------------------------------- dataset

struct DatasetArgs {
  fs::path store;
  std::string type;
  double ratio = 0.8;
  std::uint64_t seed = kDefaultSeed;
  std::size_t stride = 7;
  std::size_t max_instances = 0;
  fs::path output;
};

int run_dataset(CLI::App& sub, const DatasetArgs& a, const std::map<std::string, std::string>& config,
                Common io) {
  const auto type = protoform::summary_type_from_string(a.type);
  const auto seed = resolve_seed(sub.get_option("--seed"), a.seed, config);
  if (a.stride == 0) throw ConfigError("--stride must be positive");
  const auto series = ingest::read_series_store(a.store);

  dataset::BuildOptions opts;
  opts.stride_days = a.stride;
  if (a.max_instances > 0) opts.max_instances = a.max_instances;
  const auto corpus = dataset::build_instances(series, type, opts);
  for (const auto& w : corpus.warnings) io.err << "warning: " << w << '\n';
  if (corpus.instances.empty()) throw EmptyInputError("no instances of " + a.type);
  const auto split = dataset::split_dataset(corpus.instances, a.ratio, seed);
  const auto manifest = dataset::make_manifest(corpus, split, a.ratio, seed);

  ensure_directory(a.output);
  const auto instances_path = a.output / "instances.jsonl";
  const auto manifest_path = a.output / "manifest.json";
  dataset::write_instances(instances_path, corpus.instances);
  dataset::write_manifest(manifest_path, manifest);

  RunManifest m;
  m.command = "dataset";
  m.config = effective_config(sub);
  m.seed = seed;
  m.inputs.push_back(a.store.string());
  m.outputs = {instances_path.string(), manifest_path.string()};
  m.catalog_hash = manifest.catalog_hash;
  write_run_manifest(m, a.output, true);
  io.out << a.type << ": " << corpus.instances.size() << " instances, " << split.train.size() << " train / "
         << split.test.size() << " test (" << split.train_users.size() << " / " << split.test_users.size()
         << " users)\n";
  return 0;
}

struct LoadedDataset {
  std::vector<dataset::TrainingInstance> instances;
  dataset::DatasetManifest manifest;
};

LoadedDataset load_dataset(const fs::path& dir) {
  LoadedDataset d;
  d.manifest = dataset::read_manifest(dir / "manifest.json");
  d.instances = dataset::read_instances(dir / "instances.jsonl");
  if (d.instances.size() != d.manifest.instance_count) {
    throw ConsistencyError(dir.string() + ": manifest lists " + std::to_string(d.manifest.instance_count) +
                           " instances, file holds " + std::to_string(d.instances.size()));
  }
  if (d.manifest.catalog_hash != protoform::catalog_hash()) {
    throw ConsistencyError(dir.string() + ": dataset was built with a different protoform catalog");
  }
  return d;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  fs::path data;
  std::string family;
  std::uint64_t seed = kDefaultSeed;
  double lr = 1e-4;
  std::size_t batch_size = 0;
  std::size_t epochs = 0;
  double clip = 5.0;
  double stop_at = 0.0;
  double dropout = -1.0;
  fs::path output;
};

int run_train(CLI::App& sub, const TrainArgs& a, const std::map<std::string, std::string>& config, Common io) {
  const auto family = nn::family_from_string(a.family);
  const auto data = load_dataset(a.data);
  auto tc = train::TrainConfig::defaults(family);
  tc.seed = resolve_seed(sub.get_option("--seed"), a.seed, config);
  tc.learning_rate = a.lr;
  tc.clip_norm = a.clip;
  if (a.batch_size > 0) tc.batch_size = a.batch_size;
  if (a.epochs > 0) tc.epochs = a.epochs;
  if (a.stop_at > 0.0) tc.stop_at_train_accuracy = a.stop_at;
  tc.validate();

  auto mc = train::model_config_for(family, data.instances, data.manifest.summary_vocab,
                                    data.manifest.template_vocab);
  mc.seed = tc.seed;
  if (a.dropout >= 0.0) mc.dropout = a.dropout;
  mc.validate();
  nn::Model model(mc, data.manifest.summary_vocab, data.manifest.template_vocab);
  const auto examples = train::to_examples(data.instances, data.manifest.user_stats, data.manifest.train);
  if (examples.empty()) throw EmptyInputError("dataset has no training instances");

  const auto result = train::train_model(model, examples, tc, [&](const train::EpochRecord& r) {
    io.err << "epoch " << r.epoch << " loss " << r.loss << " blanks " << r.mean_blanks;
    if (r.train_accuracy) io.err << " train_em " << *r.train_accuracy;
    io.err << '\n';
  });

  ensure_directory(a.output);
  json curve = json::array();
  std::string csv = "epoch,loss,summary_ce,template_ce,mean_blanks\n";
  for (const auto& r : result.curve) {
    curve.push_back(r.loss);
    std::ostringstream row;
    row.precision(10);
    row << r.epoch << ',' << r.loss << ',' << r.summary_ce << ',' << r.template_ce << ',' << r.mean_blanks << '\n';
    csv += row.str();
  }
  json meta;
  meta["summary_type"] = std::string(protoform::to_string(data.manifest.summary_type));
  meta["family"] = std::string(nn::to_string(family));
  meta["n_train"] = examples.size();
  meta["seed"] = tc.seed;
  meta["kept_epoch"] = result.kept_epoch;
  meta["stopped_early"] = result.stopped_early;
  meta["loss_curve"] = curve;
  meta["catalog_hash"] = data.manifest.catalog_hash;

  const auto ckpt = a.output / "model.ckpt";
  const auto curve_path = a.output / "loss_curve.csv";
  nn::save_checkpoint(ckpt, model, meta.dump());
  write_text(curve_path, csv);

  RunManifest m;
  m.command = "train";
  m.config = effective_config(sub);
  m.config["batch_size"] = std::to_string(tc.batch_size);
  m.config["epochs"] = std::to_string(tc.epochs);
  m.seed = tc.seed;
  m.inputs = {(a.data / "manifest.json").string(), (a.data / "instances.jsonl").string()};
  m.outputs = {ckpt.string(), curve_path.string()};
  m.catalog_hash = data.manifest.catalog_hash;
  write_run_manifest(m, a.output, true);
  io.out << "trained " << a.family << " on " << examples.size() << " instances for " << result.curve.size()
         << " epochs (kept epoch " << result.kept_epoch << "), checkpoint " << ckpt.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  fs::path checkpoint;
  fs::path data;
  std::size_t batch_size = 64;
  fs::path output;
};

json read_metadata(const fs::path& checkpoint) {
  try {
    return json::parse(nn::checkpoint_metadata(checkpoint));
  } catch (const json::exception& e) {
    throw CheckpointError(checkpoint.string() + ": bad metadata: " + e.what());
  }
}

int run_eval(CLI::App& sub, const EvalArgs& a, Common io) {
  const auto data = load_dataset(a.data);
  const auto model = nn::load_checkpoint(
      a.checkpoint, nn::ExpectedVocabs{data.manifest.summary_vocab.hash(), data.manifest.template_vocab.hash()});
  const auto meta = read_metadata(a.checkpoint);
  const auto type = data.manifest.summary_type;
  if (meta.contains("summary_type") && meta["summary_type"].get<std::string>() != protoform::to_string(type)) {
    throw CheckpointError("checkpoint was trained on " + meta["summary_type"].get<std::string>() +
                          ", dataset holds " + std::string(protoform::to_string(type)));
  }
  const auto test = train::to_examples(data.instances, data.manifest.user_stats, data.manifest.test);
  std::vector<train::Prediction> predictions;
  auto report = train::evaluate_model(model, test, type, &predictions, a.batch_size);
  report.model = std::string(nn::to_string(model.config().family));
  report.n_train = meta.value("n_train", data.manifest.train.size());
  if (meta.contains("loss_curve")) report.loss_curve = meta["loss_curve"].get<std::vector<double>>();

  ensure_directory(a.output);
  const auto report_path = a.output / "eval_report.json";
  const auto pred_path = a.output / "predictions.tsv";
  write_text(report_path, train::reports_json(std::span(&report, 1)) + "\n");
  std::string tsv = "predicted\tgold\n";
  for (const auto& p : predictions) tsv += text::detokenize(p.predicted) + '\t' + text::detokenize(p.gold) + '\n';
  write_text(pred_path, tsv);

  RunManifest m;
  m.command = "eval";
  m.config = effective_config(sub);
  m.seed = meta.value("seed", std::uint64_t{0});
  m.inputs = {a.checkpoint.string(), (a.data / "manifest.json").string(), (a.data / "instances.jsonl").string()};
  m.outputs = {report_path.string(), pred_path.string()};
  m.catalog_hash = data.manifest.catalog_hash;
  write_run_manifest(m, a.output, true);
  io.out << protoform::to_string(type) << ' ' << report.model << ": exact_match " << report.exact_match
         << " token_acc " << report.token_accuracy << " bleu " << report.bleu << " (n_test " << report.n_test
         << ")\n";
  return 0;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  fs::path checkpoint;
  std::string type;
  fs::path store;
  std::string user;
  std::string values;
  std::string start_date = "2015-01-01";
  std::string as_of;
  bool rules = false;
};

ingest::TimeSeries series_from_values(const std::string& csv, const std::string& start) {
  ingest::TimeSeries s;
  s.user_id = "input";
  s.start_date = parse_date(start);
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v) || v < 0.0) throw std::invalid_argument(item);
      s.values.push_back(v);
    } catch (const std::exception&) {
      throw DomainError("--values: not a non-negative number: '" + item + "'");
    }
  }
  if (s.values.empty()) throw EmptyInputError("--values holds no numbers");
  s.imputed_mask.assign(s.values.size(), false);
  return s;
}

int run_generate(const GenerateArgs& a, Common io) {
  if (a.checkpoint.empty() && !a.rules) throw ConfigError("give --checkpoint, --rules, or both");
  if (a.store.empty() == a.values.empty()) throw ConfigError("give exactly one of --series or --values");

  std::optional<nn::Model> model;
  std::optional<protoform::SummaryType> type;
  if (!a.type.empty()) type = protoform::summary_type_from_string(a.type);
  if (!a.checkpoint.empty()) {
    model.emplace(nn::load_checkpoint(a.checkpoint));
    const auto meta = read_metadata(a.checkpoint);
    if (meta.contains("summary_type")) {
      const auto trained = protoform::summary_type_from_string(meta["summary_type"].get<std::string>());
      if (type && *type != trained) {
        throw ConfigError("--type " + a.type + " differs from the checkpoint's " +
                          std::string(protoform::to_string(trained)));
      }
      type = trained;
    }
  }
  if (!type) throw ConfigError("--type is required");

  ingest::TimeSeries series;
  if (!a.store.empty()) {
    if (a.user.empty()) throw ConfigError("--series needs --user");
    const auto all = ingest::read_series_store(a.store);
    const auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) { return s.user_id == a.user; });
    if (it == all.end()) throw DomainError("user " + a.user + " not in " + a.store.string());
    series = *it;
  } else {
    series = series_from_values(a.values, a.start_date);
  }
  std::size_t as_of = series.size() - 1;
  if (!a.as_of.empty()) {
    const long idx = days_between(series.start_date, parse_date(a.as_of));
    if (idx < 0 || static_cast<std::size_t>(idx) >= series.size()) {
      throw DomainError("--as-of " + a.as_of + " is outside the series");
    }
    as_of = static_cast<std::size_t>(idx);
  }

  const protoform::SeriesContext ctx(series);
  std::vector<protoform::SummaryInstance> reference;
  try {
    reference = protoform::generate_summary(*type, ctx, as_of);
  } catch (const InsufficientHistoryError& e) {
    if (!model) throw;
    io.err << "note: " << e.what() << '\n';
  }

  if (model) {
    const auto short_len = static_cast<std::size_t>(model->config().short_len);
    std::vector<double> x_short;
    if (!reference.empty()) {
      for (const auto& seg : reference.front().segments) {
        x_short.insert(x_short.end(), series.values.begin() + static_cast<long>(seg.begin),
                       series.values.begin() + static_cast<long>(seg.end));
      }
    }
    if (x_short.size() != short_len) {
      if (as_of + 1 < short_len) {
        throw InsufficientHistoryError("the model reads " + std::to_string(short_len) + " days, only " +
                                       std::to_string(as_of + 1) + " available");
      }
      x_short.assign(series.values.begin() + static_cast<long>(as_of + 1 - short_len),
                     series.values.begin() + static_cast<long>(as_of + 1));
    }
    dataset::TrainingInstance inst;
    inst.x_short = x_short;
    inst.x_long = series.values;
    const auto z = dataset::normalize(inst, dataset::compute_stats(series.values));
    const auto gen = model->greedy_generate(z.x_short, z.x_long);
    io.out << text::detokenize(gen.summary) << '\n';
  }
  if (a.rules) {
    if (reference.empty()) io.err << "no rule-based summary for this window\n";
    for (const auto& r : reference) io.out << (model ? "reference: " : "") << text::detokenize(r.summary_tokens) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<fs::path> inputs;
  fs::path output;
};

int run_report(CLI::App& sub, const ReportArgs& a, Common io) {
  std::vector<train::EvalReport> reports;
  RunManifest m;
  m.command = "report";
  m.config = effective_config(sub);
  m.catalog_hash = protoform::catalog_hash();
  for (const auto& in : a.inputs) {
    const auto path = fs::is_directory(in) ? in / "eval_report.json" : in;
    auto loaded = train::reports_from_json(read_text(path));
    reports.insert(reports.end(), loaded.begin(), loaded.end());
    m.inputs.push_back(path.string());
  }
  if (reports.empty()) throw EmptyInputError("no evaluation reports given");
  ensure_directory(a.output);
  const auto files = train::emit_report(reports, a.output);
  m.outputs = {files.csv.string(), files.table.string(), files.json.string(), files.loss_plot.string(),
               files.metric_plot.string()};
  write_run_manifest(m, a.output, true);
  io.out << read_text(files.table);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Common io{out, err};
  CLI::App app{"Numeric-to-text summaries of personal food-log time series."};
  app.name("tempsum");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.failure_message(CLI::FailureMessage::help);

  const std::string seed_help = std::string("Random seed (falls back to $") + kSeedEnv + ", then 7)";

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic food-log CSV");
  synth_cmd->add_option("--config", synth.config, "Generator config file (key = value)")->check(CLI::ExistingFile);
  synth_cmd->add_option("--seed", synth.seed, seed_help);
  synth_cmd->add_option("--users", synth.users, "Number of users");
  synth_cmd->add_option("--days", synth.days, "Days per user");
  synth_cmd->add_option("--set", synth.sets, "Override one generator key (key=value), repeatable");
  synth_cmd->add_option("-o,--output", synth.output, "Output CSV")->required();

  IngestArgs ingest_args;
  std::string ingest_config;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a food-log CSV into a series store");
  ingest_cmd->add_option("input", ingest_args.input, "Food-log CSV")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("-o,--output", ingest_args.output, "Series store (JSON)");
  ingest_cmd->add_option("--min-days", ingest_args.min_days, "Drop users with fewer logged days");
  ingest_cmd->add_flag("--lenient", ingest_args.lenient, "Skip malformed rows instead of failing");
  ingest_cmd->add_option("--config", ingest_config, "Config file (key = value)")->check(CLI::ExistingFile);

  SummarizeArgs summarize;
  std::string summarize_config;
  auto* summarize_cmd = app.add_subcommand("summarize", "Write rule-based summaries per summary type");
  summarize_cmd->add_option("store", summarize.store, "Series store")->required()->check(CLI::ExistingFile);
  summarize_cmd->add_option("-t,--type", summarize.types, "Summary type, repeatable (default: all)");
  summarize_cmd->add_option("--stride", summarize.stride, "Days between as-of points");
  summarize_cmd->add_option("-o,--output", summarize.output, "Output directory")->required();
  summarize_cmd->add_option("--config", summarize_config, "Config file (key = value)")->check(CLI::ExistingFile);

  DatasetArgs dataset_args;
  std::string dataset_config;
  auto* dataset_cmd = app.add_subcommand("dataset", "Build a training corpus and user split for one type");
  dataset_cmd->add_option("store", dataset_args.store, "Series store")->required()->check(CLI::ExistingFile);
  dataset_cmd->add_option("-t,--type", dataset_args.type, "Summary type");
  dataset_cmd->add_option("--ratio", dataset_args.ratio, "Fraction of users in the training split");
  dataset_cmd->add_option("--seed", dataset_args.seed, seed_help);
  dataset_cmd->add_option("--stride", dataset_args.stride, "Days between as-of points");
  dataset_cmd->add_option("--max-instances", dataset_args.max_instances, "Cap on instances (0 = none)");
  dataset_cmd->add_option("-o,--output", dataset_args.output, "Output directory")->required();
  dataset_cmd->add_option("--config", dataset_config, "Config file (key = value)")->check(CLI::ExistingFile);

  TrainArgs train_args;
  std::string train_config;
  auto* train_cmd = app.add_subcommand("train", "Train one model family on a dataset directory");
  train_cmd->add_option("data", train_args.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  train_cmd->add_option("-f,--family", train_args.family, "cnn_lstm, tst_transformer or tst_lstm");
  train_cmd->add_option("--seed", train_args.seed, seed_help);
  train_cmd->add_option("--lr", train_args.lr, "Adam learning rate");
  train_cmd->add_option("--batch-size", train_args.batch_size, "Mini-batch size (0 = family default)");
  train_cmd->add_option("--epochs", train_args.epochs, "Epochs (0 = family default)");
  train_cmd->add_option("--clip", train_args.clip, "Gradient norm clip");
  train_cmd->add_option("--stop-at", train_args.stop_at, "Stop at this train exact match (0 = off)");
  train_cmd->add_option("--dropout", train_args.dropout, "Dropout rate (negative = model default)");
  train_cmd->add_option("-o,--output", train_args.output, "Output directory")->required();
  train_cmd->add_option("--config", train_config, "Config file (key = value)")->check(CLI::ExistingFile);

  EvalArgs eval_args;
  std::string eval_config;
  auto* eval_cmd = app.add_subcommand("eval", "Score a checkpoint on a dataset's test split");
  eval_cmd->add_option("checkpoint", eval_args.checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("data", eval_args.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--batch-size", eval_args.batch_size, "Decoding batch size");
  eval_cmd->add_option("-o,--output", eval_args.output, "Output directory")->required();
  eval_cmd->add_option("--config", eval_config, "Config file (key = value)")->check(CLI::ExistingFile);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Print a summary of one series window");
  gen_cmd->add_option("-c,--checkpoint", gen.checkpoint, "Trained checkpoint")->check(CLI::ExistingFile);
  gen_cmd->add_option("-t,--type", gen.type, "Summary type (default: the checkpoint's)");
  gen_cmd->add_option("--series", gen.store, "Series store")->check(CLI::ExistingFile);
  gen_cmd->add_option("--user", gen.user, "User id within --series");
  gen_cmd->add_option("--values", gen.values, "Comma-separated daily values, oldest first");
  gen_cmd->add_option("--start-date", gen.start_date, "Date of the first --values entry");
  gen_cmd->add_option("--as-of", gen.as_of, "Last day of the window (default: last day)");
  gen_cmd->add_flag("--rules", gen.rules, "Also print the rule-based summary");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Aggregate evaluation reports into tables and plots");
  report_cmd->add_option("inputs", report_args.inputs, "eval_report.json files or eval directories")
      ->required()
      ->check(CLI::ExistingPath);
  report_cmd->add_option("-o,--output", report_args.output, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  auto config_of = [](const std::string& path) {
    return path.empty() ? std::map<std::string, std::string>{} : read_key_values(path);
  };

  try {
    if (synth_cmd->parsed()) return run_synth(*synth_cmd, synth, io);
    if (ingest_cmd->parsed()) {
      apply_config(*ingest_cmd, config_of(ingest_config));
      return run_ingest(*ingest_cmd, ingest_args, io);
    }
    if (summarize_cmd->parsed()) {
      apply_config(*summarize_cmd, config_of(summarize_config));
      return run_summarize(*summarize_cmd, summarize, io);
    }
    if (dataset_cmd->parsed()) {
      const auto kv = config_of(dataset_config);
      apply_config(*dataset_cmd, kv);
      if (dataset_args.type.empty()) throw ConfigError("--type is required");
      return run_dataset(*dataset_cmd, dataset_args, kv, io);
    }
    if (train_cmd->parsed()) {
      const auto kv = config_of(train_config);
      apply_config(*train_cmd, kv);
      if (train_args.family.empty()) throw ConfigError("--family is required");
      return run_train(*train_cmd, train_args, kv, io);
    }
    if (eval_cmd->parsed()) {
      apply_config(*eval_cmd, config_of(eval_config));
      return run_eval(*eval_cmd, eval_args, io);
    }
    if (gen_cmd->parsed()) return run_generate(gen, io);
    if (report_cmd->parsed()) return run_report(*report_cmd, report_args, io);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace tempsum::cli
