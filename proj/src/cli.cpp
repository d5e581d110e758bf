#include "cmopla/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cmopla/csv.hpp"
#include "cmopla/features_global.hpp"
#include "cmopla/features_walk.hpp"
#include "cmopla/problems.hpp"
#include "cmopla/sample_io.hpp"
#include "cmopla/tables_io.hpp"

namespace cmopla::cli {
namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

ProblemEntry parse_problem(const nlohmann::json& j, const fs::path& base) {
  ProblemEntry e;
  if (j.is_string()) {
    e.builtin = j.get<std::string>();
  } else if (j.is_object()) {
    e.builtin = j.value("name", std::string{});
    e.n = j.value("n", std::size_t{2});
    if (j.contains("sampleFiles")) {
      for (const auto& f : j.at("sampleFiles")) e.sample_files.push_back(resolve(base, f.get<std::string>()));
    }
    if (j.contains("sampleFile")) e.sample_files.push_back(resolve(base, j.at("sampleFile").get<std::string>()));
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      try {
        if (m.is_string()) {
          e.meta = load_problem_meta(resolve(base, m.get<std::string>()));
        } else {
          e.meta = parse_problem_meta(m.dump());
        }
      } catch (const Error& err) {
        throw ConfigError(err.what());
      }
    }
    e.id = j.value("id", std::string{});
    e.source = j.value("source", std::string{});
  } else {
    throw ConfigError("problem entries must be names or objects");
  }

  if (!e.sample_files.empty()) {
    if (!e.meta) throw ConfigError("sample-file problem needs \"meta\"");
    if (e.id.empty()) e.id = e.meta->name;
    e.builtin.clear();
  } else {
    if (e.builtin.empty()) throw ConfigError("problem entry without name or sample files");
    if (!make_builtin(e.builtin, std::max<std::size_t>(e.n, 1))) {
      throw ConfigError("unknown problem '" + e.builtin + "'");
    }
    if (e.n < 1) throw ConfigError("problem '" + e.builtin + "' needs n >= 1");
    if (e.builtin == "BNH") e.n = 2;
    if (e.id.empty()) e.id = e.builtin == "BNH" ? e.builtin : e.builtin + "_n" + std::to_string(e.n);
  }
  if (e.source.empty()) e.source = default_source(e.id);
  return e;
}

// Fixed-size worker pool over an index range; results are written by index.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

std::optional<ProblemSpec> spec_for(const ProblemEntry& e) {
  if (e.builtin.empty()) return std::nullopt;
  return make_builtin(e.builtin, e.n);
}

FeatureVector missing_walk_features() {
  FeatureVector fv;
  for (auto name : walk_feature_names()) fv.set_missing(name);
  return fv;
}

void print_warnings(const Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string threads;
  std::string projection;
  std::string validate_path;
  std::string validate_meta;
};

RunConfig effective_config(const Options& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.seed) c.walk_seed_base = *o.seed;
  std::string threads = o.threads;
  if (threads.empty()) {
    if (const char* env = std::getenv("CMOP_LA_THREADS")) threads = env;
  }
  if (!threads.empty()) {
    auto t = parse_threads(threads);
    if (!t) throw ConfigError("invalid thread count '" + threads + "'");
    c.threads = *t;
  }
  if (!o.projection.empty()) c.projection = o.projection;
  return c;
}

ProjectionMatrix projection_for(const RunConfig& c) {
  if (c.projection == "builtin") return ProjectionMatrix::builtin();
  try {
    return load_projection(c.projection);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

void ensure_out_dir(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + c.out_dir.string() + ": " + ec.message());
}

// Feature table from featuresPath, or computed and saved under outDir.
// Returns false when feature extraction reported errors.
bool obtain_features(const RunConfig& c, FeatureTable& table, std::ostream& out, std::ostream& err) {
  if (c.features_path) {
    table = read_feature_csv(*c.features_path);
    out << "read " << table.rows.size() << " feature rows from " << c.features_path->string() << '\n';
    return true;
  }
  auto run = compute_features(c);
  for (const auto& e : run.errors) err << "error: " << e << '\n';
  const auto path = c.out_dir / "features.csv";
  write_feature_csv(path, run.table);
  out << "wrote " << run.table.rows.size() << " feature rows to " << path.string() << '\n';
  table = std::move(run.table);
  return run.errors.empty();
}

std::map<std::string, std::string> source_tags(const RunConfig& c) {
  std::map<std::string, std::string> tags;
  for (const auto& p : c.problems) tags[p.id] = p.source;
  return tags;
}

int cmd_features(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.problems.empty()) throw ConfigError("config lists no problems");
  check_paths(c, false);
  ensure_out_dir(c);
  RunConfig local = c;
  local.features_path.reset();
  FeatureTable table;
  const bool clean = obtain_features(local, table, out, err);
  return clean ? kOk : kValidationFailure;
}

int cmd_walk(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.problems.empty()) throw ConfigError("config lists no problems");
  check_paths(c, false);
  ensure_out_dir(c);
  fs::create_directories(c.out_dir / "walks");
  FeatureTable table;
  for (auto n : walk_feature_names()) table.names.emplace_back(n);
  int code = kOk;
  for (const auto& p : c.problems) {
    const auto spec = spec_for(p);
    if (!spec) {
      err << "warning: " << p.id << ": walks need an evaluator; sample-file problem skipped\n";
      continue;
    }
    try {
      const auto walk = random_walk(*spec, c.walk_seed_base);
      const auto trace_path = c.out_dir / "walks" / (p.id + ".csv");
      std::ofstream trace(trace_path, std::ios::binary);
      auto header = sample_header(spec->meta);
      header.insert(header.begin(), {"step", "role"});
      header.push_back("cv");
      trace << csv::join(header) << '\n';
      for (std::size_t t = 0; t < walk.steps.size(); ++t) {
        auto emit = [&](const EvaluatedSolution& s, const char* role) {
          std::vector<std::string> cells{std::to_string(t), role};
          for (auto* v : {&s.x, &s.f, &s.g, &s.h}) {
            for (double d : *v) cells.push_back(csv::format_double(d));
          }
          cells.push_back(csv::format_double(s.cv));
          trace << csv::join(cells) << '\n';
        };
        emit(walk.steps[t].current, "current");
        for (const auto& nb : walk.steps[t].neighbors) emit(nb, "neighbor");
      }
      table.rows.push_back({p.id, 0, walk_features(walk)});
      out << p.id << ": " << walk.steps.size() << " steps, N = " << walk.neighborhood_size << '\n';
    } catch (const Error& e) {
      err << "error: " << p.id << ": " << e.what() << '\n';
      code = kValidationFailure;
    }
  }
  write_feature_csv(c.out_dir / "walk_features.csv", table);
  return code;
}

void print_lambdas(const InstanceTable& t, std::ostream& out) {
  if (t.lambdas.empty()) return;
  out << "Yeo-Johnson lambda per feature:\n";
  for (std::size_t j = 0; j < t.features.size(); ++j) {
    out << "  " << t.features[j] << " " << csv::format_double(t.lambdas[j]) << '\n';
  }
}

void write_lambdas(const fs::path& path, const InstanceTable& t) {
  std::ofstream f(path, std::ios::binary);
  f << "feature,lambda\n";
  for (std::size_t j = 0; j < t.features.size() && j < t.lambdas.size(); ++j) {
    f << t.features[j] << ',' << csv::format_double(t.lambdas[j]) << '\n';
  }
}

int project_or_fail(const InstanceTable& table, const ProjectionMatrix& matrix, const PerformanceLabels* labels,
                    const RunConfig& c, Diagnostics& diag, InstanceSpace& space, std::ostream& err) {
  const auto missing = missing_projection_features(table, matrix);
  if (!missing.empty()) {
    err << "error: projection features missing:";
    for (const auto& m : missing) err << ' ' << m;
    err << '\n';
    return kPreconditionFailure;
  }
  space = project(table, matrix, labels, source_tags(c), &diag);
  return kOk;
}

int cmd_pipeline(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_paths(c, true);
  if (!c.features_path && c.problems.empty()) throw ConfigError("config lists neither problems nor featuresPath");
  const auto matrix = projection_for(c);
  ensure_out_dir(c);

  FeatureTable features;
  const bool clean = obtain_features(c, features, out, err);
  const auto records = read_performance_csv(*c.performance_path);
  const auto labels = normalize_and_binarize(records);

  Diagnostics diag;
  auto aggregated = aggregate_features(features);
  std::vector<std::string> keep;
  const auto perf_ids = labels.instances();
  const std::set<std::string> with_perf(perf_ids.begin(), perf_ids.end());
  for (const auto& id : aggregated.instances) {
    if (with_perf.count(id)) {
      keep.push_back(id);
    } else {
      diag.warn("instance " + id + " has no performance records; dropped");
    }
  }
  for (const auto& id : perf_ids) {
    if (!std::binary_search(aggregated.instances.begin(), aggregated.instances.end(), id)) {
      diag.warn("performance records for " + id + " have no features; ignored");
    }
  }
  aggregated = aggregated.subset(keep);
  if (aggregated.instances.empty()) {
    print_warnings(diag, err);
    err << "error: no instance has both features and performance records\n";
    return kPreconditionFailure;
  }

  const auto transformed = transform_features(aggregated, &diag);

  FilterResult filter;
  if (transformed.instances.size() >= 3) {
    filter = correlation_filter(transformed, labels);
  } else {
    diag.warn("correlation filter skipped: fewer than 3 instances");
  }
  if (c.retained_features) filter.retained = *c.retained_features;

  InstanceSpace space;
  if (int code = project_or_fail(transformed, matrix, &labels, c, diag, space, err); code != kOk) {
    print_warnings(diag, err);
    return code;
  }
  const auto files = export_space(space, c.out_dir);
  write_metadata_csv(c.out_dir / "metadata.csv", transformed, labels);
  write_lambdas(c.out_dir / "lambdas.csv", transformed);
  {
    std::ofstream f(c.out_dir / "retained_features.txt", std::ios::binary);
    for (const auto& name : filter.retained) f << name << '\n';
  }

  print_warnings(diag, err);
  out << "instances: " << space.points.size() << ", algorithms: " << space.algorithms.size() << '\n';
  out << "retained features (" << filter.retained.size() << "):";
  for (const auto& r : filter.retained) out << ' ' << r;
  out << '\n';
  out << "good instances per algorithm:\n";
  for (std::size_t a = 0; a < space.algorithms.size(); ++a) {
    std::size_t n = 0;
    for (const auto& p : space.points) n += p.good[a] ? 1 : 0;
    out << "  " << space.algorithms[a] << " " << n << '\n';
  }
  print_lambdas(transformed, out);
  out << "wrote " << files.size() << " instance-space files to " << c.out_dir.string() << '\n';
  return clean ? kOk : kValidationFailure;
}

int cmd_project(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_paths(c, false);
  if (!c.features_path && c.problems.empty()) throw ConfigError("config lists neither problems nor featuresPath");
  const auto matrix = projection_for(c);
  ensure_out_dir(c);
  FeatureTable features;
  const bool clean = obtain_features(c, features, out, err);
  Diagnostics diag;
  const auto transformed = transform_features(aggregate_features(features), &diag);
  InstanceSpace space;
  if (int code = project_or_fail(transformed, matrix, nullptr, c, diag, space, err); code != kOk) {
    print_warnings(diag, err);
    return code;
  }
  const auto files = export_space(space, c.out_dir);
  write_lambdas(c.out_dir / "lambdas.csv", transformed);
  print_warnings(diag, err);
  out << "projected " << space.points.size() << " instances; wrote " << files.size() << " files to "
      << c.out_dir.string() << '\n';
  return clean ? kOk : kValidationFailure;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path path(o.validate_path);
  if (!fs::exists(path)) {
    err << "error: " << path.string() << " does not exist\n";
    return kConfigError;
  }
  std::vector<Finding> findings;
  std::string kind;
  if (path.extension() == ".json") {
    kind = "projection";
    findings = validate_projection_json(path);
  } else {
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    const auto cells = csv::split(header);
    if (cells == std::vector<std::string>{"instance", "algorithm", "run", "hv"}) {
      kind = "performance";
      findings = validate_performance_csv(path);
    } else if (!cells.empty() && cells[0] == "x1") {
      kind = "sample";
      std::optional<ProblemMeta> meta;
      if (!o.validate_meta.empty()) {
        try {
          meta = load_problem_meta(o.validate_meta);
        } catch (const Error& e) {
          err << "error: " << e.what() << '\n';
          return kConfigError;
        }
      }
      findings = validate_sample_csv(path, meta);
    } else {
      findings.push_back({1, "unrecognized header; expected a sample or performance CSV"});
    }
  }
  std::size_t failures = 0;
  for (const auto& f : findings) {
    auto& stream = f.warning ? out : err;
    stream << (f.warning ? "warning: " : "error: ");
    if (f.row > 0) stream << "row " << f.row << ": ";
    stream << f.message << '\n';
    failures += f.warning ? 0 : 1;
  }
  if (failures == 0) {
    out << path.string() << ": valid " << (kind.empty() ? "file" : kind) << '\n';
    return kOk;
  }
  return kValidationFailure;
}

}  // namespace

std::optional<std::size_t> parse_threads(const std::string& text) {
  if (text == "auto") return std::max(1u, std::thread::hardware_concurrency());
  const auto v = csv::parse_double(text);
  if (!v || *v < 1 || *v != std::floor(*v) || *v > 4096) return std::nullopt;
  return static_cast<std::size_t>(*v);
}

RunConfig parse_config(const std::string& json_text, const fs::path& base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("problems")) {
      std::set<std::string> ids;
      for (const auto& p : j.at("problems")) {
        c.problems.push_back(parse_problem(p, base));
        if (!ids.insert(c.problems.back().id).second) throw ConfigError("duplicate problem id " + c.problems.back().id);
      }
    }
    c.sample_sets = j.value("sampleSets", c.sample_sets);
    if (c.sample_sets < 1) throw ConfigError("sampleSets must be >= 1");
    if (j.contains("sampleSize")) {
      const auto& s = j.at("sampleSize");
      if (s.is_string()) {
        if (s.get<std::string>() != "auto") throw ConfigError("sampleSize must be an integer or \"auto\"");
      } else {
        c.sample_size = s.get<std::size_t>();
        if (*c.sample_size < 1) throw ConfigError("sampleSize must be >= 1");
      }
    }
    c.walk_seed_base = j.value("walkSeedBase", c.walk_seed_base);
    if (j.contains("performancePath")) c.performance_path = resolve(base, j.at("performancePath").get<std::string>());
    if (j.contains("featuresPath")) c.features_path = resolve(base, j.at("featuresPath").get<std::string>());
    if (j.contains("projectionPath")) {
      const auto p = j.at("projectionPath").get<std::string>();
      c.projection = p == "builtin" ? p : resolve(base, p).string();
    }
    if (j.contains("outDir")) c.out_dir = resolve(base, j.at("outDir").get<std::string>());
    if (j.contains("threads")) {
      const auto& t = j.at("threads");
      const auto parsed = parse_threads(t.is_string() ? t.get<std::string>() : t.dump());
      if (!parsed) throw ConfigError("invalid threads value " + t.dump());
      c.threads = *parsed;
    }
    if (j.contains("retainedFeatures")) c.retained_features = j.at("retainedFeatures").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

void check_paths(const RunConfig& c, bool need_performance) {
  for (const auto& p : c.problems) {
    for (const auto& f : p.sample_files) {
      if (!fs::exists(f)) throw ConfigError("sample file not found: " + f.string());
    }
  }
  if (need_performance) {
    if (!c.performance_path) throw ConfigError("performancePath is required");
    if (!fs::exists(*c.performance_path)) throw ConfigError("performance file not found: " + c.performance_path->string());
  }
  if (c.features_path && !fs::exists(*c.features_path)) {
    throw ConfigError("feature file not found: " + c.features_path->string());
  }
  if (c.projection != "builtin" && !fs::exists(c.projection)) {
    throw ConfigError("projection file not found: " + c.projection);
  }
}

FeatureRun compute_features(const RunConfig& c) {
  struct Item {
    std::size_t problem;
    std::size_t set;
  };
  std::vector<Item> items;
  for (std::size_t p = 0; p < c.problems.size(); ++p) {
    const auto& e = c.problems[p];
    const std::size_t sets = e.sample_files.empty() ? c.sample_sets : e.sample_files.size();
    for (std::size_t s = 0; s < sets; ++s) items.push_back({p, s});
  }

  std::vector<std::optional<FeatureVector>> results(items.size());
  std::vector<std::string> failures(items.size());
  parallel_for(items.size(), c.threads, [&](std::size_t k) {
    const auto& e = c.problems[items[k].problem];
    const auto s = items[k].set;
    try {
      FeatureVector fv;
      if (const auto spec = spec_for(e)) {
        const std::uint64_t seed = c.walk_seed_base + s;
        const auto size = c.sample_size.value_or(default_sample_size(spec->meta));
        fv = global_features(uniform_sample(*spec, size, seed));
        fv.merge(walk_features(random_walk(*spec, seed)));
      } else {
        fv = global_features(load_sample_file(e.sample_files[s], *e.meta));
        fv.merge(missing_walk_features());
      }
      results[k] = std::move(fv);
    } catch (const std::exception& ex) {
      failures[k] = ex.what();
    }
  });

  FeatureRun run;
  run.table.names = all_feature_names();
  std::set<std::size_t> failed;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!results[k]) {
      failed.insert(items[k].problem);
      run.errors.push_back(c.problems[items[k].problem].id + " set " + std::to_string(items[k].set) + ": " +
                           failures[k]);
    }
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (failed.count(items[k].problem)) continue;
    FeatureVector ordered;
    for (const auto& name : run.table.names) {
      const auto* e = results[k]->find(name);
      ordered.set(name, e->value, e->degenerate);
    }
    run.table.rows.push_back({c.problems[items[k].problem].id, static_cast<int>(items[k].set), std::move(ordered)});
  }
  return run;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landscape features and instance-space projection for constrained multi-objective problems",
               "cmop-la"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration (JSON)");
    sub->add_option("--out", o.out, "Output directory (overrides outDir)");
    sub->add_option("--seed", o.seed, "Seed base (overrides walkSeedBase)");
    sub->add_option("--threads", o.threads, "Worker threads or 'auto' (default: $CMOP_LA_THREADS or config)");
    sub->add_option("--projection", o.projection, "'builtin' or a projection JSON");
  };
  auto* features = app.add_subcommand("features", "Compute global and random-walk features");
  auto* walk = app.add_subcommand("walk", "Run one random walk per problem and dump traces");
  auto* pipeline = app.add_subcommand("pipeline", "Aggregate, transform, binarize, filter, project, export");
  auto* project_cmd = app.add_subcommand("project", "Project instances without performance data");
  auto* validate = app.add_subcommand("validate", "Check a sample, performance or projection file");
  for (auto* sub : {features, walk, pipeline, project_cmd}) add_common(sub);
  validate->add_option("path", o.validate_path, "File to check")->required();
  validate->add_option("--meta", o.validate_meta, "Problem metadata JSON for sample files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    const RunConfig c = effective_config(o);
    if (features->parsed()) return cmd_features(c, out, err);
    if (walk->parsed()) return cmd_walk(c, out, err);
    if (pipeline->parsed()) return cmd_pipeline(c, out, err);
    if (project_cmd->parsed()) return cmd_project(c, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kConfigError;
}

}  // namespace cmopla::cli
