#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "entstruct/errors.hpp"
#include "entstruct/features.hpp"
#include "entstruct/parallel.hpp"
#include "entstruct/rng.hpp"
#include "entstruct/structure.hpp"
#include "entstruct/textio.hpp"

namespace entstruct {

enum class Selection { Final, BestValidation };
enum class SelectionSet { RandomValidation, SweepValidation };

inline const char* to_string(Selection s) {
  return s == Selection::Final ? "final" : "best-validation";
}
inline const char* to_string(SelectionSet s) {
  return s == SelectionSet::RandomValidation ? "random-validation" : "sweep-validation";
}

struct TrainConfig {
  int epochs = 1;
  int batch_size = 256;
  double learning_rate = 1e-3;
  double weight_decay = 0.0;
  std::uint64_t seed = 1;
  Selection selection = Selection::Final;
  SelectionSet selection_set = SelectionSet::RandomValidation;
  int threads = 1;
};

struct Layer {
  int in = 0, out = 0;
  std::vector<double> w;  // out x in, row-major
  std::vector<double> b;  // out
};

struct TrainMeta {
  std::uint64_t seed = 0;
  int epochs_run = 0;
  int best_epoch = -1;  // -1 when selection == Final
  double weight_decay = 0.0;
  double learning_rate = 0.0;
  int batch_size = 0;
  std::string selection = "final";
  std::string selection_set = "random-validation";
};

// Rectified-linear hidden layers, softmax output. Input is always the
// 4-component feature vector for pipeline models; tests use other dims.
struct MlpModel {
  int n = 0;  // qubit count; 0 for generic test models
  std::vector<int> layer_dims;
  std::vector<Layer> layers;
  std::uint64_t table_hash = 0;
  TrainMeta meta;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
};

// He initialization: weights ~ N(0, 2/fan_in), zero biases. Deterministic
// per seed.
inline MlpModel init(const std::vector<int>& layer_dims, std::uint64_t seed) {
  if (layer_dims.size() < 2) throw ParameterError("init: need at least input and output dims");
  for (int d : layer_dims)
    if (d < 1) throw ParameterError("init: layer dims must be >= 1");
  MlpModel m;
  m.layer_dims = layer_dims;
  m.meta.seed = seed;
  SplitMix64 rng(derive_seed(seed, 0x1217));
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    Layer layer;
    layer.in = layer_dims[l];
    layer.out = layer_dims[l + 1];
    layer.w.resize(std::size_t(layer.in) * layer.out);
    layer.b.assign(layer.out, 0.0);
    const double stddev = std::sqrt(2.0 / layer.in);
    for (double& w : layer.w) w = stddev * rng.next_normal();
    m.layers.push_back(std::move(layer));
  }
  return m;
}

namespace mlpdetail {

// z = W x + b
inline void affine(const Layer& l, const double* x, double* z) {
  for (int o = 0; o < l.out; ++o) {
    double acc = l.b[o];
    const double* row = l.w.data() + std::size_t(o) * l.in;
    for (int i = 0; i < l.in; ++i) acc += row[i] * x[i];
    z[o] = acc;
  }
}

// In-place max-shifted softmax.
inline void softmax_inplace(std::vector<double>& z) {
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

struct Scratch {
  std::vector<std::vector<double>> acts;   // activations per layer (post-nonlinearity)
  std::vector<std::vector<double>> delta;  // gradients wrt pre-activations
};

inline Scratch make_scratch(const MlpModel& m) {
  Scratch s;
  s.acts.resize(m.layer_dims.size());
  s.delta.resize(m.layers.size());
  for (std::size_t i = 0; i < m.layer_dims.size(); ++i) s.acts[i].resize(m.layer_dims[i]);
  for (std::size_t i = 0; i < m.layers.size(); ++i) s.delta[i].resize(m.layers[i].out);
  return s;
}

}  // namespace mlpdetail

inline std::vector<double> forward(const MlpModel& m, std::span<const double> x) {
  if (int(x.size()) != m.input_dim()) throw ParameterError("forward: input dim mismatch");
  for (double v : x)
    if (!std::isfinite(v)) throw NumericError("forward: non-finite input component");
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    next.assign(m.layers[l].out, 0.0);
    mlpdetail::affine(m.layers[l], cur.data(), next.data());
    if (l + 1 < m.layers.size())
      for (double& v : next) v = std::max(0.0, v);  // ReLU
    cur.swap(next);
  }
  mlpdetail::softmax_inplace(cur);
  return cur;
}

inline std::vector<double> forward(const MlpModel& m, const FeatureVector& f) {
  const auto a = f.to_array();
  return forward(m, std::span<const double>(a.data(), a.size()));
}

inline int predict_class(const MlpModel& m, const FeatureVector& f) {
  const auto p = forward(m, f);
  return int(std::max_element(p.begin(), p.end()) - p.begin());
}

struct Gradients {
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;

  explicit Gradients(const MlpModel& m) {
    for (const Layer& l : m.layers) {
      w.emplace_back(l.w.size(), 0.0);
      b.emplace_back(l.b.size(), 0.0);
    }
  }
  void add(const Gradients& other) {
    for (std::size_t l = 0; l < w.size(); ++l) {
      for (std::size_t i = 0; i < w[l].size(); ++i) w[l][i] += other.w[l][i];
      for (std::size_t i = 0; i < b[l].size(); ++i) b[l][i] += other.b[l][i];
    }
  }
  void scale(double s) {
    for (auto& lw : w)
      for (double& v : lw) v *= s;
    for (auto& lb : b)
      for (double& v : lb) v *= s;
  }
};

namespace mlpdetail {

// Accumulates summed cross-entropy, correct-prediction count and summed
// gradients of one example into g/scratch. Softmax + cross-entropy gives
// delta = p - onehot at the output.
inline double backprop_one(const MlpModel& m, const LabeledFeature& ex, Scratch& s,
                           Gradients& g, int* correct) {
  const auto in = ex.x.to_array();
  std::copy(in.begin(), in.end(), s.acts[0].begin());
  const std::size_t L = m.layers.size();
  for (std::size_t l = 0; l < L; ++l) {
    affine(m.layers[l], s.acts[l].data(), s.acts[l + 1].data());
    if (l + 1 < L)
      for (double& v : s.acts[l + 1]) v = std::max(0.0, v);
  }
  std::vector<double>& out = s.acts[L];
  softmax_inplace(out);

  if (ex.label < 0 || ex.label >= int(out.size()))
    throw TrainingError("label " + std::to_string(ex.label) + " outside model output range");
  const double loss = -std::log(std::max(out[ex.label], 1e-300));
  const int argmax = int(std::max_element(out.begin(), out.end()) - out.begin());
  if (argmax == ex.label) ++*correct;

  // output delta
  for (std::size_t i = 0; i < out.size(); ++i) s.delta[L - 1][i] = out[i];
  s.delta[L - 1][ex.label] -= 1.0;

  for (std::size_t l = L; l-- > 0;) {
    const Layer& layer = m.layers[l];
    const std::vector<double>& a_in = s.acts[l];
    const std::vector<double>& d_out = s.delta[l];
    double* gw = g.w[l].data();
    for (int o = 0; o < layer.out; ++o) {
      const double d = d_out[o];
      if (d == 0.0) continue;
      double* row = gw + std::size_t(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) row[i] += d * a_in[i];
      g.b[l][o] += d;
    }
    if (l > 0) {
      std::vector<double>& d_in = s.delta[l - 1];
      std::fill(d_in.begin(), d_in.end(), 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const double d = d_out[o];
        if (d == 0.0) continue;
        const double* row = layer.w.data() + std::size_t(o) * layer.in;
        for (int i = 0; i < layer.in; ++i) d_in[i] += d * row[i];
      }
      // ReLU gate: a_in is the post-ReLU activation of layer l-1
      for (int i = 0; i < layer.in; ++i)
        if (a_in[i] <= 0.0) d_in[i] = 0.0;
    }
  }
  return loss;
}

inline double decay_penalty(const MlpModel& m, double weight_decay) {
  if (weight_decay == 0.0) return 0.0;
  double sq = 0.0;
  for (const Layer& l : m.layers)
    for (double w : l.w) sq += w * w;
  return 0.5 * weight_decay * sq;
}

}  // namespace mlpdetail

struct LossAndGradients {
  double loss = 0.0;
  int correct = 0;
  Gradients grads;
};

// Mean cross-entropy over the batch plus weight_decay/2 * sum ||W||^2, with
// analytic gradients. Samples are reduced in fixed chunk order, so the
// result is identical for any thread count.
inline LossAndGradients loss_and_gradients(const MlpModel& m,
                                           std::span<const LabeledFeature> batch,
                                           double weight_decay = 0.0, int threads = 1) {
  if (batch.empty()) throw ParameterError("loss_and_gradients: empty batch");
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (batch.size() + kChunk - 1) / kChunk;

  std::vector<Gradients> partial(chunks, Gradients(m));
  std::vector<double> partial_loss(chunks, 0.0);
  std::vector<int> partial_correct(chunks, 0);

  parallel_for(chunks, threads, [&](std::size_t c) {
    mlpdetail::Scratch scratch = mlpdetail::make_scratch(m);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(begin + kChunk, batch.size());
    for (std::size_t i = begin; i < end; ++i)
      partial_loss[c] +=
          mlpdetail::backprop_one(m, batch[i], scratch, partial[c], &partial_correct[c]);
  });

  LossAndGradients result{0.0, 0, Gradients(m)};
  for (std::size_t c = 0; c < chunks; ++c) {
    result.loss += partial_loss[c];
    result.correct += partial_correct[c];
    result.grads.add(partial[c]);
  }
  result.loss /= double(batch.size());
  result.grads.scale(1.0 / double(batch.size()));

  result.loss += mlpdetail::decay_penalty(m, weight_decay);
  if (weight_decay != 0.0)
    for (std::size_t l = 0; l < m.layers.size(); ++l)
      for (std::size_t i = 0; i < m.layers[l].w.size(); ++i)
        result.grads.w[l][i] += weight_decay * m.layers[l].w[i];
  return result;
}

inline double evaluate(const MlpModel& m, std::span<const LabeledFeature> records) {
  if (records.empty()) throw ParameterError("evaluate: empty record set");
  int correct = 0;
  for (const LabeledFeature& r : records)
    if (predict_class(m, r.x) == r.label) ++correct;
  return double(correct) / double(records.size());
}

// Mean cross-entropy (plus the decay penalty, for comparability with the
// training objective) and accuracy without gradients.
inline std::pair<double, double> evaluate_loss_acc(const MlpModel& m,
                                                   std::span<const LabeledFeature> records,
                                                   double weight_decay = 0.0) {
  if (records.empty()) throw ParameterError("evaluate_loss_acc: empty record set");
  double loss = 0.0;
  int correct = 0;
  for (const LabeledFeature& r : records) {
    const auto p = forward(m, r.x);
    loss += -std::log(std::max(p[r.label], 1e-300));
    if (int(std::max_element(p.begin(), p.end()) - p.begin()) == r.label) ++correct;
  }
  return {loss / double(records.size()) + mlpdetail::decay_penalty(m, weight_decay),
          double(correct) / double(records.size())};
}

struct EpochStats {
  double train_loss = 0.0;
  double train_acc = 0.0;
  double val_loss = 0.0;
  double val_acc = 0.0;
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochStats> history;
  int best_epoch = -1;
};

// Mini-batch training with adaptive moment estimation (beta1 0.9, beta2
// 0.999, eps 1e-8). Shuffling, batching and the update loop are a pure
// function of (train set, cfg), so two runs give bit-identical weights.
// selection == BestValidation returns the epoch snapshot with the highest
// validation accuracy (earliest wins ties) instead of the final weights.
inline TrainResult train(const MlpModel& start, std::span<const LabeledFeature> train_set,
                         std::span<const LabeledFeature> validation_set,
                         const TrainConfig& cfg) {
  if (cfg.epochs < 1) throw ParameterError("train: epochs must be >= 1");
  if (cfg.batch_size < 1) throw ParameterError("train: batch_size must be >= 1");
  if (cfg.weight_decay < 0.0) throw ParameterError("train: weight_decay must be >= 0");
  if (train_set.empty()) throw ParameterError("train: empty training set");
  if (validation_set.empty()) throw ParameterError("train: empty validation set");

  TrainResult result;
  result.model = start;
  MlpModel& model = result.model;

  Gradients adam_m(model), adam_v(model);
  long step = 0;
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  SplitMix64 shuffle_rng(derive_seed(cfg.seed, 0x5481ff1e));
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<LabeledFeature> batch;
  batch.reserve(cfg.batch_size);

  MlpModel best;
  double best_acc = -1.0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates on the persistent stream
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = std::size_t(shuffle_rng.next_u64() % i);
      std::swap(order[i - 1], order[j]);
    }

    double epoch_loss = 0.0;
    long epoch_correct = 0;
    std::size_t batches = 0;
    for (std::size_t pos = 0; pos < order.size(); pos += cfg.batch_size) {
      batch.clear();
      const std::size_t end = std::min(pos + std::size_t(cfg.batch_size), order.size());
      for (std::size_t i = pos; i < end; ++i) batch.push_back(train_set[order[i]]);

      LossAndGradients lg =
          loss_and_gradients(model, batch, cfg.weight_decay, cfg.threads);
      if (!std::isfinite(lg.loss))
        throw TrainingError("divergence: non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(batches));
      epoch_loss += lg.loss;
      epoch_correct += lg.correct;
      ++batches;

      ++step;
      const double corr1 = 1.0 - std::pow(beta1, double(step));
      const double corr2 = 1.0 - std::pow(beta2, double(step));
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        Layer& layer = model.layers[l];
        for (std::size_t i = 0; i < layer.w.size(); ++i) {
          const double g = lg.grads.w[l][i];
          adam_m.w[l][i] = beta1 * adam_m.w[l][i] + (1.0 - beta1) * g;
          adam_v.w[l][i] = beta2 * adam_v.w[l][i] + (1.0 - beta2) * g * g;
          layer.w[i] -= cfg.learning_rate * (adam_m.w[l][i] / corr1) /
                        (std::sqrt(adam_v.w[l][i] / corr2) + eps);
        }
        for (std::size_t i = 0; i < layer.b.size(); ++i) {
          const double g = lg.grads.b[l][i];
          adam_m.b[l][i] = beta1 * adam_m.b[l][i] + (1.0 - beta1) * g;
          adam_v.b[l][i] = beta2 * adam_v.b[l][i] + (1.0 - beta2) * g * g;
          layer.b[i] -= cfg.learning_rate * (adam_m.b[l][i] / corr1) /
                        (std::sqrt(adam_v.b[l][i] / corr2) + eps);
        }
      }
    }

    EpochStats stats;
    stats.train_loss = epoch_loss / double(batches);
    stats.train_acc = double(epoch_correct) / double(train_set.size());
    const auto [vl, va] = evaluate_loss_acc(model, validation_set, cfg.weight_decay);
    stats.val_loss = vl;
    stats.val_acc = va;
    result.history.push_back(stats);

    if (cfg.selection == Selection::BestValidation && va > best_acc) {
      best_acc = va;
      best = model;
      result.best_epoch = epoch;
    }
  }

  if (cfg.selection == Selection::BestValidation) model = std::move(best);

  model.meta.seed = cfg.seed;
  model.meta.epochs_run = cfg.epochs;
  model.meta.best_epoch = result.best_epoch;
  model.meta.weight_decay = cfg.weight_decay;
  model.meta.learning_rate = cfg.learning_rate;
  model.meta.batch_size = cfg.batch_size;
  model.meta.selection = to_string(cfg.selection);
  model.meta.selection_set = to_string(cfg.selection_set);
  return result;
}

struct ModelConfig {
  std::vector<int> layer_dims;
  TrainConfig train;
};

// Base multiclassifier for the random composed-state data. The architecture
// grows mildly with n (depth clamp(n-2, 2, 6), width min(2^(n+1), 512));
// epoch budget 500 at n = 4 rising to ~1000 at n = 12. Only the accuracy is
// contractual, never the architecture.
inline ModelConfig build_base_config(int n) {
  if (n < 4 || n > 12) throw ParameterError("build_base_config: n must lie in [4, 12]");
  ModelConfig cfg;
  const int depth = std::clamp(n - 2, 2, 6);
  const int width = std::min(1 << (n + 1), 512);
  cfg.layer_dims.push_back(4);
  for (int i = 0; i < depth; ++i) cfg.layer_dims.push_back(width);
  cfg.layer_dims.push_back(int(class_table(n).size()));
  cfg.train.epochs = 500 + 62 * (n - 4);
  cfg.train.selection = Selection::Final;
  cfg.train.selection_set = SelectionSet::RandomValidation;
  cfg.train.weight_decay = 0.0;
  return cfg;
}

// GHZ-model: one hidden layer of 2^(n+1) units, weight decay 0.1^(n-1),
// snapshot selection by highest accuracy on a noised-GHZ-distributed
// validation set (built by the analysis layer).
inline ModelConfig build_ghz_config(int n) {
  if (n < 4 || n > 12) throw ParameterError("build_ghz_config: n must lie in [4, 12]");
  ModelConfig cfg;
  cfg.layer_dims = {4, 1 << (n + 1), int(class_table(n).size())};
  cfg.train.epochs = 500 + 62 * (n - 4);
  cfg.train.weight_decay = std::pow(0.1, n - 1);
  cfg.train.selection = Selection::BestValidation;
  cfg.train.selection_set = SelectionSet::SweepValidation;
  return cfg;
}

// Text model file: one JSON header line, then per layer one "layer" line,
// `out` weight rows and one bias row, all floats with 17 significant digits.
inline void save_model(const MlpModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  nlohmann::ordered_json header;
  header["format"] = "entstruct-model-v1";
  header["n"] = m.n;
  header["layer_dims"] = m.layer_dims;
  std::vector<std::string> acts(m.layers.size(), "relu");
  if (!acts.empty()) acts.back() = "softmax";
  header["activations"] = acts;
  header["class_table_hash"] = m.table_hash;
  header["training"] = {
      {"seed", m.meta.seed},
      {"epochs_run", m.meta.epochs_run},
      {"best_epoch", m.meta.best_epoch},
      {"weight_decay", m.meta.weight_decay},
      {"learning_rate", m.meta.learning_rate},
      {"batch_size", m.meta.batch_size},
      {"selection", m.meta.selection},
      {"selection_set", m.meta.selection_set},
      {"optimizer", "adam"},
  };
  out << header.dump() << "\n";
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const Layer& layer = m.layers[l];
    out << "layer " << l << ' ' << layer.out << ' ' << layer.in << "\n";
    for (int o = 0; o < layer.out; ++o) {
      for (int i = 0; i < layer.in; ++i) {
        if (i) out << ' ';
        out << format_double17(layer.w[std::size_t(o) * layer.in + i]);
      }
      out << "\n";
    }
    for (int o = 0; o < layer.out; ++o) {
      if (o) out << ' ';
      out << format_double17(layer.b[o]);
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

inline MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "missing header");
  MlpModel m;
  try {
    const auto header = nlohmann::json::parse(strip_cr(line));
    if (header.at("format") != "entstruct-model-v1")
      throw CompatibilityError(path.string() + ": unknown model format");
    m.n = header.at("n").get<int>();
    m.layer_dims = header.at("layer_dims").get<std::vector<int>>();
    m.table_hash = header.at("class_table_hash").get<std::uint64_t>();
    const auto& t = header.at("training");
    m.meta.seed = t.at("seed").get<std::uint64_t>();
    m.meta.epochs_run = t.at("epochs_run").get<int>();
    m.meta.best_epoch = t.at("best_epoch").get<int>();
    m.meta.weight_decay = t.at("weight_decay").get<double>();
    m.meta.learning_rate = t.at("learning_rate").get<double>();
    m.meta.batch_size = t.at("batch_size").get<int>();
    m.meta.selection = t.at("selection").get<std::string>();
    m.meta.selection_set = t.at("selection_set").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 1, std::string("bad header: ") + e.what());
  }
  if (m.layer_dims.size() < 2) throw ParseError(path.string(), 1, "bad layer_dims");

  std::size_t line_no = 1;
  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) throw ParseError(path.string(), line_no + 1, "unexpected end of file");
    ++line_no;
    return strip_cr(line);
  };
  for (std::size_t l = 0; l + 1 < m.layer_dims.size(); ++l) {
    const std::string head = next_line();
    Layer layer;
    layer.in = m.layer_dims[l];
    layer.out = m.layer_dims[l + 1];
    char tag[16];
    int idx = -1, out_dim = -1, in_dim = -1;
    if (std::sscanf(head.c_str(), "%15s %d %d %d", tag, &idx, &out_dim, &in_dim) != 4 ||
        std::string(tag) != "layer" || idx != int(l) || out_dim != layer.out ||
        in_dim != layer.in)
      throw ParseError(path.string(), line_no, "bad layer line '" + head + "'");
    layer.w.reserve(std::size_t(layer.in) * layer.out);
    for (int o = 0; o < layer.out; ++o) {
      const auto row = next_line();
      std::size_t start = 0;
      for (int i = 0; i < layer.in; ++i) {
        const std::size_t space = row.find(' ', start);
        const std::string tok =
            row.substr(start, space == std::string::npos ? std::string::npos : space - start);
        layer.w.push_back(parse_double_strict(tok, "weight"));
        if (space == std::string::npos && i + 1 < layer.in)
          throw ParseError(path.string(), line_no, "short weight row");
        start = space + 1;
      }
    }
    const auto brow = next_line();
    std::size_t start = 0;
    for (int o = 0; o < layer.out; ++o) {
      const std::size_t space = brow.find(' ', start);
      const std::string tok =
          brow.substr(start, space == std::string::npos ? std::string::npos : space - start);
      layer.b.push_back(parse_double_strict(tok, "bias"));
      if (space == std::string::npos && o + 1 < layer.out)
        throw ParseError(path.string(), line_no, "short bias row");
      start = space + 1;
    }
    m.layers.push_back(std::move(layer));
  }
  return m;
}

inline void save_history(const std::vector<EpochStats>& history,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
  for (std::size_t e = 0; e < history.size(); ++e) {
    out << e << ',' << format_double17(history[e].train_loss) << ','
        << format_double17(history[e].train_acc) << ',' << format_double17(history[e].val_loss)
        << ',' << format_double17(history[e].val_acc) << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace entstruct
