#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entstruct/errors.hpp"
#include "entstruct/features.hpp"
#include "entstruct/parallel.hpp"
#include "entstruct/rng.hpp"
#include "entstruct/seeds.hpp"
#include "entstruct/structure.hpp"
#include "entstruct/textio.hpp"

namespace entstruct {

enum Split : int { kTrain = 0, kValidation = 1, kTest = 2 };

struct DatasetMeta {
  int n = 0;
  std::uint64_t master_seed = 0;
  int per_composition = 0;
  std::string sampler = kSamplerId;
};

struct Record {
  int split = kTrain;
  int composition_id = 0;
  FeatureVector features;
  int label = 0;
};

struct Dataset {
  DatasetMeta meta;
  std::vector<std::pair<int, int>> classes;  // class_table snapshot
  std::vector<Record> records;               // composition-major, sample-minor
};

namespace detail {

// First 2/3 of each composition's samples train, next 1/6 validation, rest
// test. floor-based so k = 15000 splits exactly 10000/2500/2500.
inline int split_of_index(int sample_index, int per_composition) {
  const int train_end = 2 * per_composition / 3;
  const int val_end = train_end + per_composition / 6;
  if (sample_index < train_end) return kTrain;
  if (sample_index < val_end) return kValidation;
  return kTest;
}

}  // namespace detail

// Labeled feature records for every composition of n. Record r of
// composition c draws from a stream seeded by (master_seed, c, r), so the
// output is identical for any thread count and any chunking.
inline Dataset generate(int n, int per_composition, std::uint64_t master_seed,
                        int threads = 0) {
  if (n < 2) throw ParameterError("generate: n must be >= 2");
  if (per_composition < 6) throw ParameterError("generate: per_composition must be >= 6");

  const auto comps = enumerate_compositions(n);
  std::vector<StructureLabel> labels(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) labels[i] = label_of(comps[i]);

  Dataset ds;
  ds.meta = DatasetMeta{n, master_seed, per_composition, kSamplerId};
  ds.classes = class_table(n);
  ds.records.resize(comps.size() * std::size_t(per_composition));

  constexpr std::size_t kChunk = 1024;
  const std::size_t total = ds.records.size();
  const std::size_t chunks = (total + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(begin + kChunk, total);
    std::vector<SeedParams> params;
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t ci = r / std::size_t(per_composition);
      const std::size_t si = r % std::size_t(per_composition);
      SplitMix64 rng(derive_seed(master_seed, ci, si));
      const Composition& comp = comps[ci];
      params.clear();
      for (int block : comp.blocks) params.push_back(sample_seed_params(block, rng));
      ds.records[r] = Record{
          detail::split_of_index(int(si), per_composition),
          int(ci),
          features_composed(n, comp, params),
          labels[ci].class_index,
      };
    }
  });
  return ds;
}

inline std::vector<LabeledFeature> split_examples(const Dataset& ds, int split) {
  std::vector<LabeledFeature> out;
  for (const Record& r : ds.records)
    if (r.split == split) out.push_back(LabeledFeature{r.features, r.label});
  return out;
}

// One JSON header line, then one record per line:
//   split,composition_id,mz,mx,az,ax,label
// Floats carry 17 significant digits so save/load round-trips bit-exactly.
inline void save(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  nlohmann::ordered_json header;
  header["format"] = "entstruct-dataset-v1";
  header["n"] = ds.meta.n;
  header["master_seed"] = ds.meta.master_seed;
  header["per_composition"] = ds.meta.per_composition;
  header["sampler"] = ds.meta.sampler;
  header["class_table"] = ds.classes;
  out << header.dump() << "\n";
  for (const Record& r : ds.records) {
    out << r.split << ',' << r.composition_id << ',' << format_double17(r.features.mz)
        << ',' << format_double17(r.features.mx) << ',' << format_double17(r.features.az)
        << ',' << format_double17(r.features.ax) << ',' << r.label << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

inline Dataset load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "missing header");

  Dataset ds;
  try {
    const auto header = nlohmann::json::parse(strip_cr(line));
    if (header.at("format") != "entstruct-dataset-v1")
      throw CompatibilityError(path.string() + ": unknown dataset format");
    ds.meta.n = header.at("n").get<int>();
    ds.meta.master_seed = header.at("master_seed").get<std::uint64_t>();
    ds.meta.per_composition = header.at("per_composition").get<int>();
    ds.meta.sampler = header.at("sampler").get<std::string>();
    ds.classes = header.at("class_table").get<std::vector<std::pair<int, int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 1, std::string("bad header: ") + e.what());
  }
  if (ds.classes != class_table(ds.meta.n))
    throw CompatibilityError(path.string() +
                             ": stored class table disagrees with this build for n = " +
                             std::to_string(ds.meta.n));

  const int class_count = int(ds.classes.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 7)
      throw ParseError(path.string(), line_no,
                       "expected 7 fields, got " + std::to_string(fields.size()));
    Record r;
    try {
      r.split = int(parse_int_strict(fields[0], "split"));
      r.composition_id = int(parse_int_strict(fields[1], "composition_id"));
      r.features.mz = parse_double_strict(fields[2], "mz");
      r.features.mx = parse_double_strict(fields[3], "mx");
      r.features.az = parse_double_strict(fields[4], "az");
      r.features.ax = parse_double_strict(fields[5], "ax");
      r.label = int(parse_int_strict(fields[6], "label"));
    } catch (const ParseError& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    if (r.split < kTrain || r.split > kTest)
      throw ParseError(path.string(), line_no, "split must be 0, 1 or 2");
    if (r.label < 0 || r.label >= class_count)
      throw ParseError(path.string(), line_no, "label out of range");
    ds.records.push_back(r);
  }
  return ds;
}

}  // namespace entstruct
