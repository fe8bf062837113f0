// tests/test_runtime.cc

// Copyright 2026 fasnet project contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fasnet/runtime/adam.h"
#include "fasnet/runtime/checkpoint.h"
#include "fasnet/runtime/config_file.h"
#include "fasnet/runtime/datagen.h"
#include "fasnet/runtime/dataset.h"
#include "fasnet/runtime/evaluate.h"
#include "fasnet/runtime/manifest.h"
#include "fasnet/runtime/train.h"
#include "fasnet/runtime/wav_io.h"
#include "support/oracles.h"

namespace fs = std::filesystem;
using namespace fasnet;

namespace {

// Fresh scratch directory per test case name.
std::string scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fasnet_runtime_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

// Small corpus shared by the dataset / train / evaluate cases. 8 kHz is the
// lowest rate the synthetic speaker bands allow.
std::string tiny_corpus(const std::string& dir, int num_utterances, uint64_t seed) {
  runtime::DatagenOptions opt;
  opt.num_utterances = num_utterances;
  opt.utterance_seconds = 0.25;
  opt.sample_rate = 8000.0;
  opt.geometry = sim::Geometry::kAdhoc;
  opt.min_mics = 2;
  opt.max_mics = 3;
  opt.seed = seed;
  return runtime::generate_dataset(opt, dir);
}

// Model small enough that a handful of train steps finish in seconds.
model::FasnetConfig tiny_8k_config() {
  model::FasnetConfig cfg;
  cfg.variant = model::Variant::kSingleStageTac;
  cfg.num_sources = 2;
  cfg.sample_rate = 8000.0;
  cfg.frame_ms = 4.0;
  cfg.context_ms = 4.0;
  cfg.encoder_dim = 8;
  cfg.tac_hidden = 6;
  cfg.sep_width = 10;
  cfg.sep_hidden = 6;
  cfg.sep_blocks = 1;
  cfg.chunk_len = 10;
  cfg.max_channels = 6;
  cfg.validate();
  return cfg;
}

void put_u16(std::ofstream& out, uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(bytes, 2);
}

void put_u32(std::ofstream& out, uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>(v >> 24)};
  out.write(bytes, 4);
}

bool params_equal(const std::vector<nn::Param*>& a, const std::vector<nn::Param*>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i]->name != b[i]->name) return false;
    if (a[i]->value.rows() != b[i]->value.rows()) return false;
    if (a[i]->value.cols() != b[i]->value.cols()) return false;
    if (std::memcmp(a[i]->value.data(), b[i]->value.data(),
                    sizeof(double) * static_cast<size_t>(a[i]->value.size())) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("wav_io: float samples survive the round trip bit for bit") {
  const std::string dir = scratch_dir("wav_round_trip");
  Rng rng(71);
  Vec x = oracle::random_vec(rng, 777, 0.9);
  // The container stores 32-bit floats; pre-quantize so equality is exact.
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(static_cast<float>(x[i]));
  }
  const std::string path = dir + "/x.wav";
  runtime::write_wav(path, x, 16000.0);

  double fs = 0.0;
  const Vec back = runtime::read_wav_mono(path, &fs);
  CHECK(fs == 16000.0);
  REQUIRE(back.size() == x.size());
  CHECK(std::memcmp(back.data(), x.data(), sizeof(double) * 777) == 0);
}

TEST_CASE("wav_io: reads interleaved 16-bit PCM") {
  const std::string dir = scratch_dir("wav_pcm16");
  const std::string path = dir + "/pcm.wav";
  {
    std::ofstream out(path, std::ios::binary);
    const int16_t frames[4][2] = {{0, 100}, {16384, -200}, {-32768, 300}, {32767, -400}};
    const uint32_t data_bytes = 4 * 2 * 2;
    out.write("RIFF", 4);
    put_u32(out, 4 + 8 + 16 + 8 + 6 + 8 + data_bytes);
    out.write("WAVE", 4);
    // An unknown chunk first; readers must skip it.
    out.write("LIST", 4);
    put_u32(out, 6);
    out.write("junk\0\0", 6);
    out.write("fmt ", 4);
    put_u32(out, 16);
    put_u16(out, 1);      // PCM
    put_u16(out, 2);      // stereo
    put_u32(out, 8000);
    put_u32(out, 8000 * 2 * 2);
    put_u16(out, 4);
    put_u16(out, 16);
    out.write("data", 4);
    put_u32(out, data_bytes);
    for (const auto& f : frames) {
      put_u16(out, static_cast<uint16_t>(f[0]));
      put_u16(out, static_cast<uint16_t>(f[1]));
    }
  }
  double fs = 0.0;
  const std::vector<Vec> ch = runtime::read_wav(path, &fs);
  CHECK(fs == 8000.0);
  REQUIRE(ch.size() == 2);
  REQUIRE(ch[0].size() == 4);
  CHECK(ch[0][0] == 0.0);
  CHECK(ch[0][1] == 16384.0 / 32768.0);
  CHECK(ch[0][2] == -1.0);
  CHECK(ch[0][3] == 32767.0 / 32768.0);
  CHECK(ch[1][0] == 100.0 / 32768.0);
  CHECK(ch[1][3] == -400.0 / 32768.0);
  CHECK_THROWS_AS(runtime::read_wav_mono(path, &fs), std::runtime_error);
}

TEST_CASE("wav_io: error paths") {
  const std::string dir = scratch_dir("wav_errors");
  double fs = 0.0;
  CHECK_THROWS_AS(runtime::read_wav(dir + "/missing.wav", &fs), std::runtime_error);
  CHECK_THROWS_AS(runtime::write_wav(dir + "/bad.wav", Vec(), 8000.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(runtime::write_wav(dir + "/bad.wav", Vec::Ones(4), 0.0),
                  std::invalid_argument);
  {
    std::ofstream out(dir + "/notwav.wav", std::ios::binary);
    out.write("NOPE", 4);
  }
  CHECK_THROWS_AS(runtime::read_wav(dir + "/notwav.wav", &fs), std::runtime_error);
}

TEST_CASE("config_file: parsing, strict conversions, and round trip") {
  const auto kv = runtime::parse_key_values(
      "# comment\n"
      "\n"
      "alpha = 1.5\n"
      "name= model \n"
      "  steps =200\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv.at("alpha") == "1.5");
  CHECK(kv.at("name") == "model");
  CHECK(kv.at("steps") == "200");

  CHECK_THROWS_AS(runtime::parse_key_values("a = 1\na = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(runtime::parse_key_values("just words\n"), std::invalid_argument);

  CHECK(runtime::parse_double("k", "2.5") == 2.5);
  CHECK(runtime::parse_long("k", "42") == 42);
  CHECK(runtime::parse_bool("k", "true"));
  CHECK_FALSE(runtime::parse_bool("k", "false"));
  CHECK_THROWS_AS(runtime::parse_double("k", "1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(runtime::parse_long("k", "7.5"), std::invalid_argument);
  CHECK_THROWS_AS(runtime::parse_long("k", ""), std::invalid_argument);
  CHECK_THROWS_AS(runtime::parse_bool("k", "yes"), std::invalid_argument);

  const std::string dir = scratch_dir("config_round_trip");
  const std::string path = dir + "/cfg.txt";
  runtime::write_key_value_file(path, {{"b", "2"}, {"a", "one two"}});
  const auto back = runtime::read_key_value_file(path);
  REQUIRE(back.size() == 2);
  CHECK(back.at("a") == "one two");
  CHECK(back.at("b") == "2");
}

TEST_CASE("manifest: records round trip through JSON lines") {
  const std::string dir = scratch_dir("manifest_round_trip");
  runtime::UtteranceRecord rec;
  rec.id = "utt_00000";
  rec.mixture = {"utt_00000/mix_ch0.wav", "utt_00000/mix_ch1.wav"};
  rec.sources = {{"utt_00000/src0_ch0.wav", "utt_00000/src0_ch1.wav"},
                 {"utt_00000/src1_ch0.wav", "utt_00000/src1_ch1.wav"}};
  rec.noise = {"utt_00000/noise_ch0.wav", "utt_00000/noise_ch1.wav"};
  rec.num_mics = 2;
  rec.geometry = "adhoc";
  rec.overlap_ratio = 0.625;
  rec.overlap_bucket = 2;
  rec.speech_snr_db = 2.25;
  rec.noise_snr_db = 13.5;
  rec.t60 = 0.3125;
  rec.room_dims = {5.5, 4.25, 3.0};
  rec.sample_rate = 8000.0;
  rec.num_samples = 2000;

  const std::string path = dir + "/manifest.jsonl";
  runtime::write_manifest(path, {rec, rec});
  const auto back = runtime::read_manifest(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == rec.id);
  CHECK(back[0].mixture == rec.mixture);
  CHECK(back[0].sources == rec.sources);
  CHECK(back[0].noise == rec.noise);
  CHECK(back[0].overlap_ratio == rec.overlap_ratio);
  CHECK(back[0].room_dims == rec.room_dims);
  CHECK(back[0].num_samples == rec.num_samples);
  CHECK(back[0].speaker_angle_deg == -1.0);

  CHECK(runtime::resolve_manifest_path(path, "utt_00000/mix_ch0.wav") ==
        dir + "/utt_00000/mix_ch0.wav");

  // A record whose channel lists disagree with num_mics must be rejected.
  runtime::UtteranceRecord bad = rec;
  bad.mixture.pop_back();
  runtime::write_manifest(dir + "/bad.jsonl", {bad});
  CHECK_THROWS_AS(runtime::read_manifest(dir + "/bad.jsonl"), std::runtime_error);
  CHECK_THROWS_AS(runtime::read_manifest(dir + "/missing.jsonl"), std::runtime_error);
}

TEST_CASE("adam: one step matches the update rule by hand") {
  nn::Param p("p", 1, 2);
  p.value << 1.0, -2.0;
  p.grad << 0.5, -1.5;
  runtime::AdamOptions opt;
  opt.clip_norm = 0.0;  // no clipping
  runtime::AdamOptimizer adam({&p}, opt);
  adam.step();

  for (int i = 0; i < 2; ++i) {
    const double g = i == 0 ? 0.5 : -1.5;
    const double m = (1.0 - opt.beta1) * g;
    const double v = (1.0 - opt.beta2) * g * g;
    const double mh = m / (1.0 - opt.beta1);
    const double vh = v / (1.0 - opt.beta2);
    const double want = (i == 0 ? 1.0 : -2.0) -
                        opt.learning_rate * mh / (std::sqrt(vh) + opt.epsilon);
    CHECK(p.value(0, i) == doctest::Approx(want).epsilon(1e-15));
  }
  CHECK(adam.steps_taken() == 1);
}

TEST_CASE("adam: clipping rescales to the global norm bound") {
  nn::Param a("a", 1, 1);
  nn::Param b("b", 1, 1);
  a.value << 0.0;
  b.value << 0.0;
  a.grad << 3.0;
  b.grad << 4.0;  // global norm 5
  runtime::AdamOptions opt;
  opt.clip_norm = 1.0;
  runtime::AdamOptimizer adam({&a, &b}, opt);
  adam.step();
  // Clipped gradients are (0.6, 0.8); both first moments follow.
  CHECK(adam.first_moments()[0](0, 0) == doctest::Approx(0.1 * 0.6).epsilon(1e-12));
  CHECK(adam.first_moments()[1](0, 0) == doctest::Approx(0.1 * 0.8).epsilon(1e-12));
}

TEST_CASE("adam: zero learning rate leaves parameters bit-identical") {
  Rng rng(72);
  nn::Param p("p", 3, 4);
  p.value = oracle::random_mat(rng, 3, 4, 1.0);
  const Mat before = p.value;
  runtime::AdamOptions opt;
  opt.learning_rate = 0.0;
  runtime::AdamOptimizer adam({&p}, opt);
  for (int s = 0; s < 5; ++s) {
    p.grad = oracle::random_mat(rng, 3, 4, 1.0);
    adam.step();
  }
  CHECK(std::memcmp(p.value.data(), before.data(), sizeof(double) * 12) == 0);
}

TEST_CASE("adam: non-finite gradients raise a numeric error") {
  nn::Param p("p", 1, 1);
  p.value << 0.0;
  p.grad << std::numeric_limits<double>::quiet_NaN();
  runtime::AdamOptimizer adam({&p}, runtime::AdamOptions{});
  CHECK_THROWS_AS(adam.step(), NumericError);
}

TEST_CASE("checkpoint: save, reload, and byte-identical rewrite") {
  const std::string dir = scratch_dir("checkpoint_round_trip");
  const model::FasnetConfig cfg = tiny_8k_config();
  Rng rng(73);
  model::FasnetModel a(cfg, rng);
  runtime::AdamOptions aopt;
  runtime::AdamOptimizer adam(a.params(), aopt);
  // One real step so the moments are not all zero.
  for (nn::Param* p : a.params()) {
    p->grad = oracle::random_mat(rng, p->value.rows(), p->value.cols(), 0.1);
  }
  adam.step();

  const std::string path = dir + "/ckpt.fnt";
  // The stored step doubles as the Adam counter, so they must agree.
  CHECK_THROWS_AS(runtime::save_checkpoint(path, cfg, 17, a.params(), &adam),
                  std::invalid_argument);
  runtime::save_checkpoint(path, cfg, 1, a.params(), &adam);

  const runtime::CheckpointData back = runtime::read_checkpoint(path);
  CHECK(back.step == 1);
  CHECK(model::to_key_values(back.config) == model::to_key_values(cfg));

  Rng rng2(99);
  model::FasnetModel b(cfg, rng2);
  runtime::AdamOptimizer adam_b(b.params(), aopt);
  REQUIRE_FALSE(params_equal(a.params(), b.params()));
  runtime::apply_checkpoint(back, &b, &adam_b);
  CHECK(params_equal(a.params(), b.params()));
  CHECK(adam_b.steps_taken() == adam.steps_taken());

  const std::string rewrite = dir + "/ckpt2.fnt";
  runtime::save_checkpoint(rewrite, cfg, 1, b.params(), &adam_b);
  CHECK(oracle::hash_file(rewrite) == oracle::hash_file(path));
}

TEST_CASE("checkpoint: mismatches leave the model untouched") {
  const std::string dir = scratch_dir("checkpoint_mismatch");
  const model::FasnetConfig cfg = tiny_8k_config();
  Rng rng(74);
  model::FasnetModel a(cfg, rng);
  const std::string path = dir + "/ckpt.fnt";
  runtime::save_checkpoint(path, cfg, 3, a.params(), nullptr);
  const runtime::CheckpointData data = runtime::read_checkpoint(path);

  // Different architecture: config comparison fails before any copy.
  model::FasnetConfig other = cfg;
  other.encoder_dim = 16;
  Rng rng2(75);
  model::FasnetModel b(other, rng2);
  std::vector<Mat> before;
  for (nn::Param* p : b.params()) before.push_back(p->value);
  CHECK_THROWS_AS(runtime::apply_checkpoint(data, &b, nullptr), std::runtime_error);
  size_t i = 0;
  for (nn::Param* p : b.params()) {
    CHECK(p->value == before[i]);
    ++i;
  }

  // No optimizer moments in the file: applying with an optimizer fails.
  Rng rng3(76);
  model::FasnetModel c(cfg, rng3);
  runtime::AdamOptimizer adam_c(c.params(), runtime::AdamOptions{});
  CHECK_THROWS_AS(runtime::apply_checkpoint(data, &c, &adam_c), std::runtime_error);
}

TEST_CASE("datagen: corpus layout, cycling mic counts, and reproducibility") {
  const std::string dir_a = scratch_dir("datagen_a");
  const std::string dir_b = scratch_dir("datagen_b");
  const std::string manifest_a = tiny_corpus(dir_a, 6, 11);
  const std::string manifest_b = tiny_corpus(dir_b, 6, 11);

  const auto records = runtime::read_manifest(manifest_a);
  REQUIRE(records.size() == 6);
  for (size_t u = 0; u < records.size(); ++u) {
    const auto& r = records[u];
    CHECK(r.num_mics == 2 + static_cast<int>(u) % 2);
    CHECK(r.sample_rate == 8000.0);
    CHECK(r.num_samples == 2000);
    CHECK(r.sources.size() == 2);
    for (const std::string& rel : r.mixture) {
      CHECK(fs::exists(runtime::resolve_manifest_path(manifest_a, rel)));
    }
    CHECK(r.overlap_bucket == oracle::overlap_bucket(r.overlap_ratio));
  }

  // Same seed, different directory: the corpus is byte-identical.
  CHECK(oracle::hash_tree(dir_a) == oracle::hash_tree(dir_b));

  const std::string dir_c = scratch_dir("datagen_c");
  const std::string manifest_c = tiny_corpus(dir_c, 6, 12);
  CHECK(oracle::hash_tree(dir_a) != oracle::hash_tree(dir_c));
}

TEST_CASE("dataset: equal-mic batches cover every utterance exactly once") {
  const std::string dir = scratch_dir("dataset_batches");
  runtime::Dataset data(tiny_corpus(dir, 10, 13));
  REQUIRE(data.size() == 10);

  const auto batches = data.epoch_batches(5, 0, 3);
  std::set<size_t> seen;
  for (const auto& batch : batches) {
    REQUIRE_FALSE(batch.empty());
    const int mics = data.records()[batch[0]].num_mics;
    for (const size_t idx : batch) {
      CHECK(data.records()[idx].num_mics == mics);
      CHECK(seen.insert(idx).second);
    }
  }
  CHECK(seen.size() == 10);

  // Pure functions of (seed, epoch/step).
  CHECK(data.epoch_batches(5, 0, 3) == batches);
  CHECK(data.epoch_batches(5, 1, 3) != batches);
  const int64_t per_epoch = data.batches_per_epoch(3);
  REQUIRE(per_epoch == static_cast<int64_t>(batches.size()));
  for (int64_t step = 0; step < 2 * per_epoch; ++step) {
    const auto want = data.epoch_batches(5, step / per_epoch, 3)
        [static_cast<size_t>(step % per_epoch)];
    CHECK(data.batch_for_step(5, step, 3) == want);
  }

  const runtime::LoadedUtterance utt = data.load(0);
  CHECK(utt.mixture.num_channels() == data.records()[0].num_mics);
  CHECK(utt.mixture.num_samples() == 2000);
  REQUIRE(utt.targets.size() == 2);
  CHECK(utt.targets[0].size() == 2000);
}

TEST_CASE("train: two same-seed runs and a split resume all agree bit for bit") {
  const std::string data_dir = scratch_dir("train_data");
  const std::string manifest = tiny_corpus(data_dir, 8, 14);
  const model::FasnetConfig cfg = tiny_8k_config();

  runtime::TrainOptions opt;
  opt.seed = 3;
  opt.batch_size = 4;
  opt.max_steps = 6;
  opt.learning_rate = 1e-3;
  opt.train_manifest = manifest;

  const std::string run_a = scratch_dir("train_run_a");
  const runtime::TrainResult res_a = runtime::train(cfg, opt, run_a);
  CHECK(res_a.steps_run == 6);
  CHECK(std::isfinite(res_a.final_loss));
  CHECK(fs::exists(run_a + "/loss.csv"));
  REQUIRE(fs::exists(res_a.final_checkpoint));

  const std::string run_b = scratch_dir("train_run_b");
  const runtime::TrainResult res_b = runtime::train(cfg, opt, run_b);
  CHECK(oracle::hash_file(res_a.final_checkpoint) ==
        oracle::hash_file(res_b.final_checkpoint));

  // Stop at step 3, resume to 6: the end state matches the straight run.
  runtime::TrainOptions first_half = opt;
  first_half.max_steps = 3;
  const std::string run_c1 = scratch_dir("train_run_c1");
  const runtime::TrainResult res_c1 = runtime::train(cfg, first_half, run_c1);
  CHECK(res_c1.steps_run == 3);

  runtime::TrainOptions second_half = opt;
  second_half.resume_checkpoint = res_c1.final_checkpoint;
  const std::string run_c2 = scratch_dir("train_run_c2");
  const runtime::TrainResult res_c2 = runtime::train(cfg, second_half, run_c2);
  CHECK(res_c2.steps_run == 6);  // max_steps is the global step target
  CHECK(oracle::hash_file(res_c2.final_checkpoint) ==
        oracle::hash_file(res_a.final_checkpoint));
}

TEST_CASE("train: held-out early stopping") {
  const std::string data_dir = scratch_dir("train_stop_data");
  const std::string manifest = tiny_corpus(data_dir, 6, 15);
  runtime::TrainOptions opt;
  opt.seed = 4;
  opt.batch_size = 3;
  opt.max_steps = 50;
  opt.train_manifest = manifest;
  opt.valid_interval = 2;
  opt.valid_manifest = manifest;
  opt.stop_sisnri_db = -100.0;  // any finite score triggers the stop
  const std::string run = scratch_dir("train_stop_run");
  const runtime::TrainResult res = runtime::train(tiny_8k_config(), opt, run);
  CHECK(res.stopped_early);
  CHECK(res.steps_run == 2);
  REQUIRE_FALSE(res.valid_history.empty());
  CHECK(res.valid_history[0].first == 2);
}

TEST_CASE("train: option validation") {
  runtime::TrainOptions opt;
  opt.train_manifest = "";
  CHECK_THROWS_AS(opt.validate(), std::invalid_argument);
  opt.train_manifest = "m.jsonl";
  opt.batch_size = 0;
  CHECK_THROWS_AS(opt.validate(), std::invalid_argument);
  opt.batch_size = 2;
  opt.valid_interval = 5;
  CHECK_THROWS_AS(opt.validate(), std::invalid_argument);  // no valid manifest
}

TEST_CASE("evaluate: the report is identical for any thread count") {
  const std::string dir = scratch_dir("evaluate_threads");
  runtime::Dataset data(tiny_corpus(dir, 7, 16));
  data.preload();
  Rng rng(77);
  model::FasnetModel net(tiny_8k_config(), rng);

  const runtime::EvalReport r1 = runtime::evaluate_dataset(net, data, 1);
  const runtime::EvalReport r3 = runtime::evaluate_dataset(net, data, 3);
  const runtime::EvalReport r8 = runtime::evaluate_dataset(net, data, 8);
  CHECK(r1.num_utterances == 7);
  CHECK(r1.mean_sisnri_db == r3.mean_sisnri_db);
  CHECK(r1.mean_sisnri_db == r8.mean_sisnri_db);
  for (int b = 0; b < 4; ++b) {
    CHECK(r1.by_overlap[static_cast<size_t>(b)].count ==
          r3.by_overlap[static_cast<size_t>(b)].count);
    CHECK(r1.by_overlap[static_cast<size_t>(b)].mean_sisnri_db ==
          r3.by_overlap[static_cast<size_t>(b)].mean_sisnri_db);
  }
  REQUIRE(r1.by_mics.size() == r3.by_mics.size());
  for (const auto& [mics, bucket] : r1.by_mics) {
    REQUIRE(r3.by_mics.count(mics) == 1);
    CHECK(bucket.count == r3.by_mics.at(mics).count);
    CHECK(bucket.mean_sisnri_db == r3.by_mics.at(mics).mean_sisnri_db);
  }

  const std::string text = runtime::format_report(r1);
  CHECK(text.find("mean si-snri") != std::string::npos);
  const std::string json_path = dir + "/report.json";
  runtime::write_report_json(json_path, r1);
  CHECK(fs::exists(json_path));
}
