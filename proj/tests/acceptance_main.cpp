// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Heavier criteria reuse the models trained by earlier ones,
// so the binary runs the criteria in order.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entstruct/analysis.hpp"
#include "entstruct/dataset.hpp"
#include "entstruct/mlp.hpp"
#include "entstruct/qcore.hpp"
#include "entstruct/structure.hpp"
#include "oracle_util.hpp"

using namespace entstruct;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

struct DrawnState {
  Composition comp;
  std::vector<SeedParams> params;
};

DrawnState draw_state(int n, SplitMix64& rng) {
  DrawnState d;
  d.comp.n = n;
  int run = 1;
  for (int gap = 0; gap < n - 1; ++gap) {
    if (rng.next_u64() & 1) {
      d.comp.blocks.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  d.comp.blocks.push_back(run);
  for (int block : d.comp.blocks) d.params.push_back(sample_seed_params(block, rng));
  return d;
}

double feature_gap(const FeatureVector& a, const FeatureVector& b) {
  return std::max(std::max(std::abs(a.mz - b.mz), std::abs(a.mx - b.mx)),
                  std::max(std::abs(a.az - b.az), std::abs(a.ax - b.ax)));
}

// ---- criterion 1: closed forms vs the dense oracle ----
Check criterion_oracle_equivalence() {
  Check c;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    SplitMix64 rng(derive_seed(0xacce97, n));
    for (int trial = 0; trial < 100; ++trial) {
      const DrawnState d = draw_state(n, rng);
      std::vector<DenseState> blocks;
      for (std::size_t i = 0; i < d.comp.blocks.size(); ++i)
        blocks.push_back(dense_seed_state(d.comp.blocks[i], d.params[i]));
      const double gap = feature_gap(features_composed(n, d.comp, d.params),
                                     features_dense(dense_compose(blocks)));
      worst = std::max(worst, gap);
    }
    for (int i = 0; i <= 20; ++i) {
      const double p = i / 20.0;
      worst = std::max(worst, feature_gap(features_noised_ghz(n, p),
                                          features_dense(dense_seed_state(n, {0.0, 1.0 - p}))));
      const double theta = (i / 20.0) * std::numbers::pi / 4.0;
      worst = std::max(worst, feature_gap(features_pure_gen_ghz(n, theta),
                                          features_dense(dense_pure_gen_ghz(n, theta))));
    }
  }
  c.require(worst <= 1e-10, "max deviation above 1e-10");
  c.note("max |closed-form - dense| = " + format_double17(worst) + " over n = 2..8");
  return c;
}

// ---- criterion 2: combinatorics ----
Check criterion_combinatorics() {
  Check c;
  for (int n = 1; n <= 16; ++n)
    c.require(enumerate_compositions(n).size() == (std::size_t(1) << (n - 1)),
              "|compositions(" + std::to_string(n) + ")| != 2^(n-1)");

  const auto shapes = testoracle::partition_shape_pairs(4);
  const auto table = class_table(4);
  c.require(table.size() == 5, "class_table(4) size != 5");
  c.require(std::set<std::pair<int, int>>(table.begin(), table.end()) == shapes,
            "class_table(4) disagrees with set-partition brute force");
  c.require(class_count_closed_form(4) == 4, "closed-form count at n = 4 != 4");
  for (int n = 1; n <= 12; ++n)
    c.require(std::size_t(class_count_closed_form(n)) + 1 == class_table(n).size(),
              "closed-form off-by-one broken at n = " + std::to_string(n));
  c.note("2^(n-1) pinned for n <= 16, table(4) = 5 by brute force, closed form gives 4");
  return c;
}

// ---- criterion 3: analytic bound table ----
Check criterion_analytic_bounds() {
  Check c;
  auto expect_fraction = [&](int n, int k, long long num, long long den) {
    const auto f = analytic_bound_fraction(n, k);
    c.require(f.has_value(), "missing bound for (n, k) = (" + std::to_string(n) + ", " +
                                 std::to_string(k) + ")");
    if (f) c.require(f->first * den == num * f->second, "wrong bound at k = " + std::to_string(k));
  };
  expect_fraction(4, 2, 7, 15);
  expect_fraction(4, 4, 1, 9);
  expect_fraction(4, 3, 1, 5);
  for (int n = 2; n <= 12; ++n) {
    const long long half_dim = 1LL << (n - 1);
    const long long generic_num = n, generic_den = n + n * half_dim;
    const auto dedicated = analytic_bound_fraction(n, n);
    c.require(dedicated && generic_num * dedicated->second == dedicated->first * generic_den,
              "generic k = n formula inconsistent at n = " + std::to_string(n));
  }
  c.note("7/15, 1/9, 1/5 exact; generic and dedicated k = n forms agree for n <= 12");
  return c;
}

// ---- criterion 4: gradient correctness ----
std::vector<LabeledFeature> random_batch(int count, int classes, SplitMix64& rng) {
  std::vector<LabeledFeature> out;
  for (int i = 0; i < count; ++i)
    out.push_back(LabeledFeature{FeatureVector{rng.next_double(), 2 * rng.next_double() - 1,
                                               2 * rng.next_double() - 1, 2 * rng.next_double() - 1},
                                 int(rng.next_u64() % classes)});
  return out;
}

double gradient_relative_error(const std::vector<int>& dims, std::uint64_t seed) {
  MlpModel m = init(dims, seed);
  SplitMix64 rng(derive_seed(seed, 0x9c));
  const auto batch = random_batch(12, dims.back(), rng);
  const auto lg = loss_and_gradients(m, batch, 0.0);
  const double eps = 1e-5;
  double num2 = 0, ana2 = 0, diff2 = 0;
  auto probe = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + eps;
    const double up = loss_and_gradients(m, batch, 0.0).loss;
    param = saved - eps;
    const double down = loss_and_gradients(m, batch, 0.0).loss;
    param = saved;
    const double numeric = (up - down) / (2 * eps);
    num2 += numeric * numeric;
    ana2 += analytic * analytic;
    diff2 += (numeric - analytic) * (numeric - analytic);
  };
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    for (std::size_t i = 0; i < m.layers[l].w.size(); ++i) probe(m.layers[l].w[i], lg.grads.w[l][i]);
    for (std::size_t i = 0; i < m.layers[l].b.size(); ++i) probe(m.layers[l].b[i], lg.grads.b[l][i]);
  }
  return std::sqrt(diff2) / std::max(std::sqrt(num2), std::sqrt(ana2));
}

Check criterion_gradients() {
  Check c;
  double worst = 0.0;
  worst = std::max(worst, gradient_relative_error({4, 8, 5}, 211));
  worst = std::max(worst, gradient_relative_error({4, 32, 32, 5}, 212));
  worst = std::max(worst, gradient_relative_error({4, 64, 13}, 213));
  c.require(worst <= 1e-6, "finite-difference relative error above 1e-6");
  c.note("worst relative error " + format_double17(worst) + " across three architectures");
  return c;
}

// ---- criteria 5-7 share datasets and models ----
struct TrainedStack {
  Dataset dataset;
  TrainResult base;
  TrainResult ghz;
};

TrainedStack train_stack(int n) {
  TrainedStack s{generate(n, 2000, 2024 + std::uint64_t(n), 0), {}, {}};

  ModelConfig base_cfg = build_base_config(n);
  base_cfg.train.seed = 1;
  base_cfg.train.threads = 0;
  MlpModel base_model = init(base_cfg.layer_dims, base_cfg.train.seed);
  base_model.n = n;
  base_model.table_hash = class_table_hash(n);
  s.base = train(base_model, split_examples(s.dataset, kTrain),
                 split_examples(s.dataset, kValidation), base_cfg.train);

  ModelConfig ghz_cfg = build_ghz_config(n);
  ghz_cfg.train.seed = 1;
  ghz_cfg.train.threads = 0;
  MlpModel ghz_model = init(ghz_cfg.layer_dims, ghz_cfg.train.seed);
  ghz_model.n = n;
  ghz_model.table_hash = class_table_hash(n);
  s.ghz = train(ghz_model, split_examples(s.dataset, kTrain), build_sweep_validation(n, 1001),
                ghz_cfg.train);
  return s;
}

Check criterion_base_accuracy(const TrainedStack& s4, const TrainedStack& s5) {
  Check c;
  const double acc4 = evaluate(s4.base.model, split_examples(s4.dataset, kTest));
  const double acc5 = evaluate(s5.base.model, split_examples(s5.dataset, kTest));
  c.require(acc4 >= 0.95, "n = 4 test accuracy below 0.95");
  c.require(acc5 >= 0.95, "n = 5 test accuracy below 0.95");
  char buf[120];
  std::snprintf(buf, sizeof(buf), "test accuracy n=4: %.4f, n=5: %.4f (gate 0.95)", acc4, acc5);
  c.note(buf);
  return c;
}

Check criterion_gen_ghz_sweep(const TrainedStack& s4, const TrainedStack& s5) {
  Check c;
  for (const auto* s : {&s4, &s5}) {
    const int n = s->dataset.meta.n;
    const int points = 1001;
    const auto [sweep, acc] = sweep_gen_ghz(s->base.model, n, points, 0);
    c.require(acc >= 0.99, "n = " + std::to_string(n) + " sweep accuracy below 0.99");
    const int first_percent = (points - 1) / 100;  // indices 0..10
    int worst_error_index = -1;
    for (int i = 0; i < points; ++i) {
      const auto& pt = sweep.points[i];
      const int true_m = (i == 0) ? n : 1;
      const int true_d = (i == 0) ? 1 : n;
      if ((pt.pred_m != true_m || pt.pred_d != true_d) && i > first_percent)
        worst_error_index = i;
    }
    c.require(worst_error_index < 0, "n = " + std::to_string(n) + " error at grid index " +
                                         std::to_string(worst_error_index));
    char buf[80];
    std::snprintf(buf, sizeof(buf), "n=%d: accuracy %.4f", n, acc);
    c.note(buf);
  }
  return c;
}

Check criterion_ghz_bounds(const TrainedStack& s4, const TrainedStack& s5) {
  Check c;
  for (const auto* s : {&s4, &s5}) {
    const int n = s->dataset.meta.n;
    const auto sweep = sweep_noised_ghz(s->ghz.model, n, 1001, 0);
    const auto report = extract_bounds(sweep);
    const double want2 = *analytic_bounds(n, 2);
    const double wantn = *analytic_bounds(n, n);
    const auto got2 = report.intactness_bound[1];
    const auto gotn = report.intactness_bound[n - 1];
    c.require(got2.has_value(), "n = " + std::to_string(n) + ": intactness 2 never predicted");
    c.require(gotn.has_value(), "n = " + std::to_string(n) + ": intactness n never predicted");
    if (got2)
      c.require(std::abs(*got2 - want2) <= 0.05,
                "n = " + std::to_string(n) + ": 2-separability bound " + format_double17(*got2) +
                    " not within 0.05 of " + format_double17(want2));
    if (gotn)
      c.require(std::abs(*gotn - wantn) <= 0.05,
                "n = " + std::to_string(n) + ": full-separability bound " +
                    format_double17(*gotn) + " not within 0.05 of " + format_double17(wantn));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "n=%d: b2 %.3f (analytic %.3f), bn %.3f (analytic %.3f)", n,
                  got2.value_or(-1.0), want2, gotn.value_or(-1.0), wantn);
    c.note(buf);
  }
  return c;
}

// ---- criterion 8: determinism ----
std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check criterion_determinism(const fs::path& dir) {
  Check c;
  const Dataset serial = generate(4, 300, 99, 1);
  const Dataset threaded = generate(4, 300, 99, 4);
  save(serial, dir / "serial.txt");
  save(threaded, dir / "threaded.txt");
  c.require(file_bytes(dir / "serial.txt") == file_bytes(dir / "threaded.txt"),
            "dataset bytes differ across thread counts");

  const auto train_set = split_examples(serial, kTrain);
  const auto val_set = split_examples(serial, kValidation);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 64;
  cfg.seed = 5;
  auto make = [&](int threads) {
    cfg.threads = threads;
    MlpModel m = init({4, 16, 5}, cfg.seed);
    m.n = 4;
    m.table_hash = class_table_hash(4);
    return train(m, train_set, val_set, cfg).model;
  };
  save_model(make(1), dir / "m1.txt");
  save_model(make(1), dir / "m1_again.txt");
  save_model(make(2), dir / "m2.txt");
  c.require(file_bytes(dir / "m1.txt") == file_bytes(dir / "m1_again.txt"),
            "model bytes differ across repeated runs");
  c.require(file_bytes(dir / "m1.txt") == file_bytes(dir / "m2.txt"),
            "model bytes differ across thread counts");
  c.note("dataset and model files byte-identical across runs and thread counts");
  return c;
}

// ---- criterion 9: experimental-data path ----
Check criterion_measurement_path(const TrainedStack& s4, const fs::path& dir) {
  Check c;
  const int n = 4;
  const auto pure = features_noised_ghz(n, 1.0);
  const auto mid = features_noised_ghz(n, 0.3);
  SplitMix64 rng(31337);
  const DrawnState d = draw_state(n, rng);
  const auto composed = features_composed(n, d.comp, d.params);
  const auto composed_label = label_of(d.comp);

  const auto path = dir / "synthetic_measurements.csv";
  {
    std::ofstream out(path);
    out << "state_id,n,mz,mx,az,ax,true_m,true_d\n";
    auto row = [&](const std::string& id, const FeatureVector& f,
                   std::optional<int> m, std::optional<int> dd) {
      out << id << ',' << n << ',' << format_double17(f.mz) << ',' << format_double17(f.mx)
          << ',' << format_double17(f.az) << ',' << format_double17(f.ax) << ','
          << (m ? std::to_string(*m) : "") << ',' << (dd ? std::to_string(*dd) : "") << "\n";
    };
    row("noised_p1", pure, 1, n);
    row("noised_p03", mid, std::nullopt, std::nullopt);
    row("composed_sample", composed, composed_label.intactness, composed_label.depth);
  }

  const auto records = load_measurements(path);
  c.require(records.size() == 3, "record count mismatch");
  if (records.size() == 3) {
    c.require(records[0].features.mz == pure.mz && records[0].features.mx == pure.mx &&
                  records[0].features.az == pure.az && records[0].features.ax == pure.ax,
              "row 1 features did not round-trip bit-exactly");
    c.require(records[1].features.az == mid.az, "row 2 features did not round-trip");
    c.require(records[2].features.ax == composed.ax, "row 3 features did not round-trip");
    c.require(records[0].true_m == 1 && records[0].true_d == n, "row 1 truth fields wrong");
    c.require(!records[1].true_m && !records[1].true_d, "row 2 truth fields should be empty");
  }

  const auto preds = predict_measurements(s4.base.model, records);
  c.require(preds.size() == records.size(), "prediction count mismatch");
  c.require(preds[0].pred_m == 1 && preds[0].pred_d == n,
            "p = 1 record not predicted as (1, n)");
  save_predictions_csv(preds, dir / "synthetic_predictions.csv");
  c.note("3-row synthetic CSV round-tripped bit-exactly; p = 1 row predicted (1, " +
         std::to_string(n) + ")");
  return c;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "entstruct_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  int failures = 0;
  int id = 0;
  auto report = [&](const std::string& name, const std::function<Check()>& fn) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.pass = false;
      c.note(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", c.pass ? "PASS" : "FAIL", id,
                name.c_str(), c.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!c.pass) ++failures;
  };

  report("oracle equivalence", criterion_oracle_equivalence);
  report("combinatorics", criterion_combinatorics);
  report("analytic bound table", criterion_analytic_bounds);
  report("gradient correctness", criterion_gradients);

  std::printf("-- training desk-scale models (n = 4, 5), this is the slow part --\n");
  std::fflush(stdout);
  const auto train_start = std::chrono::steady_clock::now();
  TrainedStack s4, s5;
  try {
    s4 = train_stack(4);
    s5 = train_stack(5);
  } catch (const std::exception& e) {
    std::printf("[FAIL] criteria 5-7: training stack failed: %s\n", e.what());
    return 4;
  }
  std::printf("-- models ready after %.0fs --\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - train_start)
                  .count());

  report("base-model desk-scale accuracy", [&] { return criterion_base_accuracy(s4, s5); });
  report("generalized-GHZ sweep", [&] { return criterion_gen_ghz_sweep(s4, s5); });
  report("GHZ-model bound recovery", [&] { return criterion_ghz_bounds(s4, s5); });
  report("determinism", [&] { return criterion_determinism(work); });
  report("experimental-data path", [&] { return criterion_measurement_path(s4, work); });

  if (failures == 0)
    std::printf("acceptance: all %d criteria passed\n", id);
  else
    std::printf("acceptance: %d of %d criteria FAILED\n", failures, id);
  return failures == 0 ? 0 : 1;
}
