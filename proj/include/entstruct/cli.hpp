#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entstruct/analysis.hpp"
#include "entstruct/dataset.hpp"
#include "entstruct/errors.hpp"
#include "entstruct/mlp.hpp"
#include "entstruct/version.hpp"

namespace entstruct {

namespace clidetail {

// Every run leaves exactly one manifest next to its outputs; a run is
// reproducible from the manifest alone.
class Manifest {
 public:
  Manifest(std::string command, const std::filesystem::path& out_dir)
      : out_dir_(out_dir), start_(std::chrono::steady_clock::now()) {
    j_["command"] = std::move(command);
    j_["version"] = kVersion;
    j_["parameters"] = nlohmann::ordered_json::object();
    j_["inputs"] = nlohmann::ordered_json::array();
    j_["outputs"] = nlohmann::ordered_json::array();
    j_["results"] = nlohmann::ordered_json::object();
  }

  template <typename T>
  void param(const std::string& key, const T& value) {
    j_["parameters"][key] = value;
  }
  void input(const std::filesystem::path& p) { j_["inputs"].push_back(p.string()); }
  void output(const std::filesystem::path& p) { j_["outputs"].push_back(p.string()); }
  template <typename T>
  void result(const std::string& key, const T& value) {
    j_["results"][key] = value;
  }

  void write() {
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start_);
    j_["duration_seconds"] = elapsed.count();
    const auto path = out_dir_ / "manifest.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << j_.dump(2) << "\n";
    if (!out) throw IoError("write failed for " + path.string());
  }

 private:
  nlohmann::ordered_json j_;
  std::filesystem::path out_dir_;
  std::chrono::steady_clock::time_point start_;
};

inline std::filesystem::path ensure_out_dir(const std::string& out) {
  std::filesystem::path dir(out.empty() ? "." : out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

inline void check_model_dataset(const MlpModel& model, const Dataset& ds) {
  if (model.n != ds.meta.n)
    throw CompatibilityError("model is for n = " + std::to_string(model.n) +
                             " but dataset has n = " + std::to_string(ds.meta.n));
  if (model.table_hash != class_table_hash(ds.meta.n))
    throw CompatibilityError("model class-table hash disagrees with this build");
}

struct GenArgs {
  int n = 4;
  int per_comp = 15000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = ".";
};

inline void run_gen(const GenArgs& a) {
  const auto dir = ensure_out_dir(a.out);
  Manifest manifest("gen", dir);
  manifest.param("n", a.n);
  manifest.param("per_comp", a.per_comp);
  manifest.param("seed", a.seed);
  manifest.param("threads", a.threads);
  manifest.param("out", dir.string());

  const Dataset ds = generate(a.n, a.per_comp, a.seed, a.threads);
  const auto path = dir / "dataset.txt";
  save(ds, path);
  manifest.output(path);
  manifest.result("records", ds.records.size());
  manifest.result("classes", ds.classes.size());
  manifest.write();
  std::cout << "wrote " << ds.records.size() << " records (" << ds.classes.size()
            << " classes) to " << path.string() << "\n";
}

struct TrainArgs {
  std::string data;
  std::string arch = "base";
  std::uint64_t seed = 1;
  int epochs = 0;  // 0 = architecture default
  int threads = 0;
  int val_points = 1001;
  std::string out = ".";
};

inline void run_train(const TrainArgs& a) {
  const auto dir = ensure_out_dir(a.out);
  Manifest manifest("train", dir);
  manifest.param("data", a.data);
  manifest.param("arch", a.arch);
  manifest.param("seed", a.seed);
  manifest.param("epochs", a.epochs);
  manifest.param("threads", a.threads);
  manifest.param("val_points", a.val_points);
  manifest.param("out", dir.string());
  manifest.input(a.data);

  const Dataset ds = load(a.data);
  const int n = ds.meta.n;
  ModelConfig cfg = (a.arch == "ghz") ? build_ghz_config(n) : build_base_config(n);
  if (a.epochs > 0) cfg.train.epochs = a.epochs;
  cfg.train.seed = a.seed;
  cfg.train.threads = a.threads;

  const auto train_set = split_examples(ds, kTrain);
  std::vector<LabeledFeature> val_set;
  if (cfg.train.selection_set == SelectionSet::SweepValidation)
    val_set = build_sweep_validation(n, a.val_points);
  else
    val_set = split_examples(ds, kValidation);

  MlpModel model = init(cfg.layer_dims, a.seed);
  model.n = n;
  model.table_hash = class_table_hash(n);

  TrainResult result = train(model, train_set, val_set, cfg.train);

  const auto model_path = dir / "model.txt";
  const auto history_path = dir / "history.csv";
  save_model(result.model, model_path);
  save_history(result.history, history_path);
  manifest.output(model_path);
  manifest.output(history_path);

  const auto test_set = split_examples(ds, kTest);
  const double test_acc = evaluate(result.model, test_set);
  const EpochStats& last = result.history.back();
  manifest.result("train_acc", last.train_acc);
  manifest.result("val_acc", last.val_acc);
  manifest.result("test_acc", test_acc);
  manifest.result("best_epoch", result.best_epoch);
  manifest.write();
  std::cout << "trained " << a.arch << " model for n = " << n << ": train_acc "
            << last.train_acc << ", val_acc " << last.val_acc << ", test_acc " << test_acc
            << "\n";
}

struct EvalArgs {
  std::string model;
  std::string data;
  std::string split = "test";
  std::string out = ".";
};

inline void run_eval(const EvalArgs& a) {
  const auto dir = ensure_out_dir(a.out);
  Manifest manifest("eval", dir);
  manifest.param("model", a.model);
  manifest.param("data", a.data);
  manifest.param("split", a.split);
  manifest.param("out", dir.string());
  manifest.input(a.model);
  manifest.input(a.data);

  const MlpModel model = load_model(a.model);
  const Dataset ds = load(a.data);
  check_model_dataset(model, ds);
  const int split = a.split == "train" ? kTrain : a.split == "val" ? kValidation : kTest;
  const double acc = evaluate(model, split_examples(ds, split));
  manifest.result("accuracy", acc);
  manifest.write();
  std::cout << a.split << " accuracy " << acc << "\n";
}

struct SweepArgs {
  std::string model;
  std::string kind = "noised-ghz";
  int points = 10001;
  int threads = 0;
  std::string out = ".";
};

inline void run_sweep(const SweepArgs& a) {
  const auto dir = ensure_out_dir(a.out);
  Manifest manifest("sweep", dir);
  manifest.param("model", a.model);
  manifest.param("kind", a.kind);
  manifest.param("points", a.points);
  manifest.param("threads", a.threads);
  manifest.param("out", dir.string());
  manifest.input(a.model);

  const MlpModel model = load_model(a.model);
  if (model.table_hash != class_table_hash(model.n))
    throw CompatibilityError("model class-table hash disagrees with this build");

  const auto path = dir / "sweep.csv";
  if (a.kind == "gen-ghz") {
    const auto [sweep, acc] = sweep_gen_ghz(model, model.n, a.points, a.threads);
    save_sweep_csv(sweep, path);
    manifest.result("accuracy", acc);
    std::cout << "gen-ghz sweep accuracy " << acc << "\n";
  } else {
    const SweepResult sweep = sweep_noised_ghz(model, model.n, a.points, a.threads);
    save_sweep_csv(sweep, path);
    const double acc = noised_sweep_accuracy(sweep);
    manifest.result("accuracy", acc);
    std::cout << "noised-ghz sweep accuracy " << acc << " (redefined-correctness rule)\n";
  }
  manifest.output(path);
  manifest.write();
}

struct BoundsArgs {
  std::string sweep;
  int n = 0;
  std::string out = ".";
};

inline void run_bounds(const BoundsArgs& a) {
  const auto dir = ensure_out_dir(a.out);
  Manifest manifest("bounds", dir);
  manifest.param("sweep", a.sweep);
  manifest.param("n", a.n);
  manifest.param("out", dir.string());
  manifest.input(a.sweep);

  const SweepResult sweep = load_sweep_csv(a.sweep, a.n);
  const BoundReport report = extract_bounds(sweep);
  const auto path = dir / "bounds.csv";
  save_bounds_csv(report, path);
  manifest.output(path);
  manifest.write();
  std::cout << "wrote bound table to " << path.string() << "\n";
}

struct PredictArgs {
  std::string model;
  std::string input;
  std::string out = ".";
};

inline void run_predict(const PredictArgs& a) {
  const auto dir = ensure_out_dir(a.out);
  Manifest manifest("predict", dir);
  manifest.param("model", a.model);
  manifest.param("input", a.input);
  manifest.param("out", dir.string());
  manifest.input(a.model);
  manifest.input(a.input);

  const MlpModel model = load_model(a.model);
  if (model.table_hash != class_table_hash(model.n))
    throw CompatibilityError("model class-table hash disagrees with this build");
  const auto records = load_measurements(a.input);
  const auto preds = predict_measurements(model, records);
  const auto path = dir / "predictions.csv";
  save_predictions_csv(preds, path);
  manifest.output(path);
  manifest.result("records", preds.size());
  manifest.write();
  for (const auto& p : preds)
    std::cout << p.state_id << ": predicted (m, d) = (" << p.pred_m << ", " << p.pred_d
              << ")\n";
}

}  // namespace clidetail

// Exit codes: 0 success, 1 runtime/IO failure, 2 usage error.
inline int run_cli(std::vector<std::string> args) {
  CLI::App app{"entanglement-structure classification pipeline"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  clidetail::GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a labeled feature dataset");
  gen->add_option("--n", gen_args.n, "qubit count")->required();
  gen->add_option("--per-comp", gen_args.per_comp, "samples per composition (default 15000)");
  gen->add_option("--seed", gen_args.seed, "master seed");
  gen->add_option("--threads", gen_args.threads, "worker cap, 0 = all cores");
  gen->add_option("--out", gen_args.out, "output directory");

  clidetail::TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train a classifier on a dataset");
  train->add_option("--data", train_args.data, "dataset file")->required();
  train->add_option("--arch", train_args.arch, "base or ghz")
      ->check(CLI::IsMember({"base", "ghz"}));
  train->add_option("--seed", train_args.seed, "training seed");
  train->add_option("--epochs", train_args.epochs, "override the architecture epoch default");
  train->add_option("--threads", train_args.threads, "worker cap, 0 = all cores");
  train->add_option("--val-points", train_args.val_points,
                    "grid size of the sweep-validation set (ghz arch)");
  train->add_option("--out", train_args.out, "output directory");

  clidetail::EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate a model on a dataset split");
  eval->add_option("--model", eval_args.model, "model file")->required();
  eval->add_option("--data", eval_args.data, "dataset file")->required();
  eval->add_option("--split", eval_args.split, "train, val or test")
      ->check(CLI::IsMember({"train", "val", "test"}));
  eval->add_option("--out", eval_args.out, "output directory");

  clidetail::SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "classify a parameterized state family");
  sweep->add_option("--model", sweep_args.model, "model file")->required();
  sweep->add_option("--kind", sweep_args.kind, "gen-ghz or noised-ghz")
      ->check(CLI::IsMember({"gen-ghz", "noised-ghz"}));
  sweep->add_option("--points", sweep_args.points, "grid size (default 10001)");
  sweep->add_option("--threads", sweep_args.threads, "worker cap, 0 = all cores");
  sweep->add_option("--out", sweep_args.out, "output directory");

  clidetail::BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "extract per-class bounds from a sweep CSV");
  bounds->add_option("--sweep", bounds_args.sweep, "sweep CSV file")->required();
  bounds->add_option("--n", bounds_args.n, "qubit count of the sweep")->required();
  bounds->add_option("--out", bounds_args.out, "output directory");

  clidetail::PredictArgs predict_args;
  auto* predict = app.add_subcommand("predict", "classify measured feature records");
  predict->add_option("--model", predict_args.model, "model file")->required();
  predict->add_option("--input", predict_args.input, "measurement CSV")->required();
  predict->add_option("--out", predict_args.out, "output directory");

  std::vector<const char*> argv;
  argv.push_back("entstruct");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) clidetail::run_gen(gen_args);
    if (train->parsed()) clidetail::run_train(train_args);
    if (eval->parsed()) clidetail::run_eval(eval_args);
    if (sweep->parsed()) clidetail::run_sweep(sweep_args);
    if (bounds->parsed()) clidetail::run_bounds(bounds_args);
    if (predict->parsed()) clidetail::run_predict(predict_args);
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace entstruct
