// Copyright 2026 The synids Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// synids: command-line driver for generation, rendering, training,
// prediction, evaluation and the desk-scale experiment.
//
// Exit codes: 0 success, 1 other failure, 2 empty or missing input class,
// 3 insufficient data, 4 format or parse error.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synids/capture.h"
#include "synids/error.h"
#include "synids/experiment.h"
#include "synids/file_io.h"
#include "synids/jsonl.h"
#include "synids/kv_config.h"
#include "synids/model.h"
#include "synids/parallel.h"
#include "synids/pipeline.h"
#include "synids/png_io.h"
#include "synids/synth.h"

namespace fs = std::filesystem;

namespace synids {
namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string config;
  double window_s = kDefaultWindowSeconds;
  int size = 1000;
  bool diff = false;
  std::string local_addr;
};

void AddRenderFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key=value config (basis.a, basis.b)");
  cmd->add_option("--window", f.window_s, "frame window in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--size", f.size, "canvas width and height in pixels")
      ->check(CLI::Range(32, 8192));
  cmd->add_flag("--diff", f.diff, "render differences of consecutive frames");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 256));
  cmd->add_option("--local-addr", f.local_addr,
                  "address of the monitored host (sets packet direction)");
}

RenderOptions RenderOptionsFrom(const CommonFlags& f) {
  RenderOptions r;
  r.window_s = f.window_s;
  r.width = f.size;
  r.height = f.size;
  r.diff = f.diff;
  if (!f.config.empty()) {
    r.basis = BasisFromConfig(KvConfig::FromFile(f.config), kFeatureDim);
  }
  return r;
}

RenderOptions RenderOptionsOf(const TrainedModel& m) {
  RenderOptions r;
  r.window_s = m.window_s;
  r.width = m.calibration.width;
  r.height = m.calibration.height;
  r.diff = m.diff_frames;
  r.basis = m.basis;
  return r;
}

bool IsJsonl(const fs::path& p) { return p.extension() == ".jsonl"; }

std::vector<PacketMeta> LoadPackets(const fs::path& path,
                                    const std::string& local_addr) {
  if (IsJsonl(path)) {
    JsonlParseResult r = ReadMetadataJsonlFile(path);
    for (const LineError& e : r.errors) {
      spdlog::warn("{}:{}: skipped: {}", path.string(), e.line, e.message);
    }
    return std::move(r.packets);
  }
  CaptureOptions opts;
  if (!local_addr.empty()) opts.local_addr = ParseIpv4(local_addr);
  CaptureParseResult r = ReadCaptureFile(path, opts);
  if (r.skipped > 0) spdlog::warn("{}: skipped {} non-IPv4/TCP/UDP records", path.string(), r.skipped);
  if (r.error) {
    spdlog::warn("{}: {} (kept {} packets read before it)", path.string(),
                 r.error_message, r.packets.size());
  }
  return std::move(r.packets);
}

void WritePngAtomic(const fs::path& path, const RgbaImage& image) {
  fs::path tmp = path;
  tmp += ".tmp";
  WritePng(tmp, image);
  fs::rename(tmp, path);
}

// --- gen -------------------------------------------------------------------

struct GenFlags {
  std::string spec, out, format = "capture", truth;
  std::optional<std::uint64_t> seed;
};

int RunGen(const GenFlags& f) {
  const KvConfig cfg = f.spec.empty() ? KvConfig() : KvConfig::FromFile(f.spec);
  ScenarioSpec spec = ScenarioFromConfig(cfg);
  if (f.seed) spec.seed = *f.seed;
  const GeneratedTraffic g = Generate(spec);
  WriteTraffic(g.packets, f.out, ParseTrafficFormat(f.format));
  if (!f.truth.empty()) WriteTruthJson(g.truth, f.truth);
  std::size_t attack = 0;
  for (std::uint8_t m : g.attack_mask) attack += m;
  spdlog::info("wrote {} packets ({} attack) to {}", g.packets.size(), attack, f.out);
  return 0;
}

// --- render ----------------------------------------------------------------

struct RenderFlags {
  CommonFlags common;
  std::string input, truth, out;
};

int RunRender(const RenderFlags& f) {
  const RenderOptions opts = RenderOptionsFrom(f.common);
  const std::vector<PacketMeta> packets = LoadPackets(f.input, f.common.local_addr);
  std::optional<std::vector<TimeInterval>> truth;
  if (!f.truth.empty()) truth = ReadTruthJson(f.truth);
  fs::create_directories(f.out);
  const fs::path dir(f.out);
  const auto records = RenderTraffic(
      packets, truth ? &*truth : nullptr, opts, f.common.jobs,
      [&](const FrameRecord& r, const RgbaImage& image) {
        WritePngAtomic(dir / FrameFileName(r), image);
      });
  std::string manifest;
  for (const FrameRecord& r : records) manifest += ManifestLine(r) + "\n";
  WriteFileAtomic(dir / "frames.jsonl", manifest);
  WriteFileAtomic(dir / "render.json", RenderSidecarJson(opts));
  spdlog::info("rendered {} frames into {}", records.size(), f.out);
  return 0;
}

// --- train -----------------------------------------------------------------

struct TrainFlags {
  CommonFlags common;
  std::string legit_dir, ddos_dir, input, truth, out, log;
  std::size_t clusters = 1000;
  int rounds = 10;
};

std::vector<LabeledDescriptors> DirectoryDescriptors(
    const fs::path& dir, FrameLabel label, const SiftOptions& sift, int jobs) {
  const std::vector<fs::path> files = ListPngFrames(dir);
  std::vector<LabeledDescriptors> out(files.size());
  ParallelFor(files.size(), jobs, [&](std::size_t i) {
    out[i].frame.index = i;
    out[i].frame.label = label;
    out[i].descriptors = ImageDescriptors(ReadPng(files[i]), sift);
  });
  return out;
}

int RunTrain(const TrainFlags& f) {
  RenderOptions render = RenderOptionsFrom(f.common);
  const SiftOptions sift;
  std::vector<LabeledDescriptors> frames;
  if (!f.input.empty()) {
    if (f.truth.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--input needs --truth");
    }
    frames = TrafficDescriptors(LoadPackets(f.input, f.common.local_addr),
                                ReadTruthJson(f.truth), render, sift,
                                f.common.jobs);
    std::erase_if(frames, [](const LabeledDescriptors& d) {
      return d.frame.label == FrameLabel::kUnlabeled;
    });
  } else {
    if (f.legit_dir.empty() || f.ddos_dir.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "give --legit and --ddos frame directories, or --input and --truth");
    }
    const fs::path sidecar = fs::path(f.legit_dir) / "render.json";
    if (fs::exists(sidecar)) render = ReadRenderSidecar(sidecar);
    frames = DirectoryDescriptors(f.legit_dir, FrameLabel::kLegitimate, sift,
                                  f.common.jobs);
    for (LabeledDescriptors& d : DirectoryDescriptors(
             f.ddos_dir, FrameLabel::kDdos, sift, f.common.jobs)) {
      frames.push_back(std::move(d));
    }
  }
  TrainOptions opts;
  opts.clusters = f.clusters;
  opts.rounds = f.rounds;
  opts.seed = f.common.seed;
  opts.jobs = f.common.jobs;
  const TrainReport report = TrainFromDescriptors(frames, render, sift, opts);
  SaveModel(report.model, f.out);
  const std::string log = f.log.empty() ? f.out + ".log.json" : f.log;
  WriteFileAtomic(log, TrainLogJson(report));
  spdlog::info("model written to {} ({} learners), log {}", f.out,
               report.model.ensemble.learners.size(), log);
  return 0;
}

// --- predict / eval ----------------------------------------------------------

struct ScoredFrame {
  std::string name;
  FrameLabel truth = FrameLabel::kUnlabeled;
  Prediction prediction;
};

std::vector<ScoredFrame> ScoreFrameFiles(const TrainedModel& model,
                                         const std::vector<fs::path>& files,
                                         int jobs) {
  std::vector<ScoredFrame> out(files.size());
  ParallelFor(files.size(), jobs, [&](std::size_t i) {
    out[i].name = files[i].filename().string();
    out[i].prediction = PredictImage(model, ReadPng(files[i]));
  });
  return out;
}

std::vector<ScoredFrame> ScoreTraffic(const TrainedModel& model,
                                      const std::string& input,
                                      const std::string& truth_path,
                                      const std::string& local_addr, int jobs) {
  std::vector<TimeInterval> truth;
  if (!truth_path.empty()) truth = ReadTruthJson(truth_path);
  std::vector<LabeledDescriptors> frames =
      TrafficDescriptors(LoadPackets(input, local_addr), truth,
                         RenderOptionsOf(model), model.sift, jobs);
  if (truth_path.empty()) {
    for (LabeledDescriptors& d : frames) d.frame.label = FrameLabel::kUnlabeled;
  }
  const std::vector<Prediction> preds = PredictDescriptors(model, frames, jobs);
  std::vector<ScoredFrame> out(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    out[i].name = FrameFileName(frames[i].frame);
    out[i].truth = frames[i].frame.label;
    out[i].prediction = preds[i];
  }
  return out;
}

std::string PredictionLine(const ScoredFrame& s) {
  nlohmann::ordered_json j;
  j["frame"] = s.name;
  j["label"] = s.prediction.label == kDdos ? "ddos" : "legitimate";
  j["score"] = s.prediction.score;
  j["confidence"] = s.prediction.confidence;
  return j.dump();
}

struct PredictFlags {
  std::string model, frames, input, out, local_addr;
  int jobs = 1;
};

int RunPredict(const PredictFlags& f) {
  const TrainedModel model = LoadModel(f.model);
  std::vector<ScoredFrame> scored;
  if (!f.input.empty()) {
    scored = ScoreTraffic(model, f.input, "", f.local_addr, f.jobs);
  } else {
    scored = ScoreFrameFiles(model, ListPngFrames(f.frames), f.jobs);
  }
  if (scored.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no frames to predict");
  }
  std::string lines;
  for (const ScoredFrame& s : scored) lines += PredictionLine(s) + "\n";
  if (f.out.empty()) {
    std::cout << lines;
  } else {
    WriteFileAtomic(f.out, lines);
  }
  return 0;
}

struct EvalFlags {
  std::string model, frames, manifest, input, truth, out, local_addr;
  int jobs = 1;
};

int RunEval(const EvalFlags& f) {
  const TrainedModel model = LoadModel(f.model);
  std::vector<ScoredFrame> scored;
  std::string dataset;
  if (!f.input.empty()) {
    if (f.truth.empty()) throw Error(ErrorCode::kInvalidArgument, "--input needs --truth");
    scored = ScoreTraffic(model, f.input, f.truth, f.local_addr, f.jobs);
    dataset = f.input;
  } else {
    const fs::path dir(f.frames);
    const fs::path manifest = f.manifest.empty() ? dir / "frames.jsonl" : fs::path(f.manifest);
    std::vector<fs::path> files;
    std::vector<FrameLabel> labels;
    for (const ManifestEntry& e : ReadManifest(manifest)) {
      if (e.record.label == FrameLabel::kUnlabeled) continue;
      files.push_back(dir / e.frame);
      labels.push_back(e.record.label);
    }
    scored = ScoreFrameFiles(model, files, f.jobs);
    for (std::size_t i = 0; i < scored.size(); ++i) scored[i].truth = labels[i];
    dataset = f.frames;
  }
  std::vector<int> truth, predicted;
  for (const ScoredFrame& s : scored) {
    if (s.truth == FrameLabel::kUnlabeled) continue;
    truth.push_back(s.truth == FrameLabel::kDdos ? kDdos : kLegitimate);
    predicted.push_back(s.prediction.label);
  }
  const EvalReport report = MakeReport(Tally(truth, predicted), dataset, MetadataText(model));
  std::cout << ReportText(report);
  if (!f.out.empty()) WriteFileAtomic(f.out, ReportJson(report));
  return 0;
}

// --- experiment --------------------------------------------------------------

struct ExperimentFlags {
  CommonFlags common;
  double scale = 0.1;
  std::size_t clusters = 1000;
  int rounds = 10;
  std::string out;
};

int RunExperimentCommand(const ExperimentFlags& f) {
  ExperimentOptions opts;
  opts.scale = f.scale;
  opts.seed = f.common.seed;
  opts.jobs = f.common.jobs;
  opts.clusters = f.clusters;
  opts.rounds = f.rounds;
  opts.render = RenderOptionsFrom(f.common);
  const ExperimentReport report = RunExperiment(opts);
  std::cout << ExperimentText(report);
  if (!f.out.empty()) {
    fs::create_directories(f.out);
    WriteFileAtomic(fs::path(f.out) / "report.json", ExperimentJson(report));
    WriteFileAtomic(fs::path(f.out) / "report.txt", ExperimentText(report));
  }
  return 0;
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("synids");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] [%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("SYNIDS_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

int Main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"synids: image-based DDoS detection over packet metadata"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a labelled synthetic capture");
  gen_cmd->add_option("--spec", gen.spec, "scenario key=value file");
  gen_cmd->add_option("--out", gen.out, "output capture or jsonl")->required();
  gen_cmd->add_option("--format", gen.format, "capture|jsonl")
      ->check(CLI::IsMember({"capture", "pcap", "jsonl"}));
  gen_cmd->add_option("--truth", gen.truth, "ground-truth JSON output");
  gen_cmd->add_option("--seed", gen.seed, "override the scenario seed");

  RenderFlags render;
  auto* render_cmd = app.add_subcommand("render", "render traffic into frames");
  render_cmd->add_option("--input", render.input, "capture or .jsonl")->required();
  render_cmd->add_option("--truth", render.truth, "ground truth for labels");
  render_cmd->add_option("--out", render.out, "output directory")->required();
  AddRenderFlags(render_cmd, render.common);

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "train a model");
  train_cmd->add_option("--legit", train.legit_dir, "legitimate frame directory");
  train_cmd->add_option("--ddos", train.ddos_dir, "ddos frame directory");
  train_cmd->add_option("--input", train.input, "capture or .jsonl (with --truth)");
  train_cmd->add_option("--truth", train.truth, "ground truth JSON");
  train_cmd->add_option("--out", train.out, "model file")->required();
  train_cmd->add_option("--log", train.log, "training log (default <out>.log.json)");
  train_cmd->add_option("--clusters", train.clusters, "vocabulary size k")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--rounds", train.rounds, "boosting rounds T")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.common.seed, "master seed");
  AddRenderFlags(train_cmd, train.common);

  PredictFlags predict;
  auto* predict_cmd = app.add_subcommand("predict", "classify frames");
  predict_cmd->add_option("--model", predict.model, "model file")->required();
  predict_cmd->add_option("--frames", predict.frames, "PNG frame directory");
  predict_cmd->add_option("--input", predict.input, "capture or .jsonl");
  predict_cmd->add_option("--out", predict.out, "JSONL output (default stdout)");
  predict_cmd->add_option("--jobs", predict.jobs, "worker threads")->check(CLI::Range(1, 256));
  predict_cmd->add_option("--local-addr", predict.local_addr, "address of the monitored host");

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on labelled frames");
  eval_cmd->add_option("--model", eval.model, "model file")->required();
  eval_cmd->add_option("--frames", eval.frames, "PNG frame directory");
  eval_cmd->add_option("--manifest", eval.manifest, "frames.jsonl (default <frames>/frames.jsonl)");
  eval_cmd->add_option("--input", eval.input, "capture or .jsonl");
  eval_cmd->add_option("--truth", eval.truth, "ground truth JSON");
  eval_cmd->add_option("--out", eval.out, "JSON report");
  eval_cmd->add_option("--jobs", eval.jobs, "worker threads")->check(CLI::Range(1, 256));
  eval_cmd->add_option("--local-addr", eval.local_addr, "address of the monitored host");

  ExperimentFlags exp;
  exp.common.seed = 1;
  auto* exp_cmd = app.add_subcommand("experiment", "small vs large training set experiment");
  exp_cmd->add_option("--scale", exp.scale, "dataset scale factor")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--clusters", exp.clusters, "vocabulary size k")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--rounds", exp.rounds, "boosting rounds T")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp.common.seed, "master seed");
  exp_cmd->add_option("--out", exp.out, "report directory");
  AddRenderFlags(exp_cmd, exp.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*render_cmd) return RunRender(render);
    if (*train_cmd) return RunTrain(train);
    if (*predict_cmd) return RunPredict(predict);
    if (*eval_cmd) return RunEval(eval);
    if (*exp_cmd) return RunExperimentCommand(exp);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace synids

int main(int argc, char** argv) { return synids::Main(argc, argv); }
