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

#include "synids/model.h"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <sstream>

#include "synids/error.h"
#include "synids/file_io.h"

namespace synids {
namespace {

class ByteWriter {
 public:
  void U8(std::uint8_t v) { out_.push_back(v); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void I32(std::int32_t v) { U32(static_cast<std::uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void F64s(std::span<const double> v) {
    for (double x : v) F64(x);
  }
  void Bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  std::vector<std::uint8_t>& bytes() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t U8() { return Take(1)[0]; }
  std::uint32_t U32() {
    auto b = Take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t U64() {
    auto b = Take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::int32_t I32() { return static_cast<std::int32_t>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }
  // Count read from the file, checked against the bytes left.
  std::size_t Count(std::size_t element_size) {
    const std::uint64_t n = U64();
    if (element_size != 0 && n > remaining() / element_size) {
      throw Error(ErrorCode::kFormatError, "model payload count out of range");
    }
    return static_cast<std::size_t>(n);
  }
  std::vector<double> F64s(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = F64();
    return v;
  }
  std::span<const std::uint8_t> Take(std::size_t n) {
    if (n > remaining()) {
      throw Error(ErrorCode::kFormatError, "model payload ends early");
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t done = 0;
  while (done < bytes.size()) {
    const uInt chunk = static_cast<uInt>(
        std::min<std::size_t>(bytes.size() - done, 1u << 30));
    crc = crc32(crc, bytes.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

void WriteLearner(ByteWriter& w, const NaiveBayesModel& nb, double alpha) {
  w.F64(alpha);
  w.U64(nb.dim());
  w.F64(nb.prior[0]);
  w.F64(nb.prior[1]);
  for (int c = 0; c < 2; ++c) {
    w.F64s(nb.mean[c]);
    w.F64s(nb.variance[c]);
  }
}

NaiveBayesModel ReadLearner(ByteReader& r, double& alpha) {
  alpha = r.F64();
  const std::size_t dim = r.Count(8 * 4);
  NaiveBayesModel nb;
  nb.prior[0] = r.F64();
  nb.prior[1] = r.F64();
  for (int c = 0; c < 2; ++c) {
    nb.mean[c] = r.F64s(dim);
    nb.variance[c] = r.F64s(dim);
  }
  return nb;
}

std::vector<std::uint8_t> EncodePayload(const TrainedModel& m) {
  ByteWriter w;
  const Matrix& cent = m.vocabulary.centroids;
  w.U64(cent.rows());
  w.U64(cent.cols());
  w.F64s(cent.data());
  if (m.vocabulary.idf.size() != cent.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "idf length differs from k");
  }
  w.F64s(m.vocabulary.idf);
  w.F64(m.idf_log_base);
  w.U64(m.vocabulary.seed);

  const PlaneBounds& bd = m.calibration.bounds;
  w.F64(bd.u_min);
  w.F64(bd.u_max);
  w.F64(bd.v_min);
  w.F64(bd.v_max);
  w.I32(m.calibration.width);
  w.I32(m.calibration.height);

  w.U64(m.basis.dim());
  w.F64s(m.basis.a);
  w.F64s(m.basis.b);

  w.F64(m.window_s);
  w.U8(m.diff_frames ? 1 : 0);

  w.I32(m.sift.octaves);
  w.I32(m.sift.scales_per_octave);
  w.F64(m.sift.sigma0);
  w.F64(m.sift.assumed_blur);
  w.F64(m.sift.contrast_threshold);
  w.F64(m.sift.edge_ratio);
  w.U64(m.sift.max_descriptors);

  w.F64(m.threshold);
  w.U64(m.ensemble.learners.size());
  for (std::size_t t = 0; t < m.ensemble.learners.size(); ++t) {
    WriteLearner(w, m.ensemble.learners[t], m.ensemble.alphas[t]);
  }

  const std::string meta = MetadataText(m);
  w.U64(meta.size());
  w.Bytes({reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()});
  return std::move(w.bytes());
}

TrainingMetadata ParseMetadata(std::string_view text) {
  TrainingMetadata md;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    std::uint64_t* field = nullptr;
    if (key == "seed") field = &md.seed;
    else if (key == "k") field = &md.k;
    else if (key == "rounds") field = &md.rounds;
    else if (key == "legitimate_images") field = &md.legitimate_images;
    else if (key == "ddos_images") field = &md.ddos_images;
    else if (key == "descriptor_count") field = &md.descriptor_count;
    if (field == nullptr) continue;
    try {
      *field = std::stoull(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kFormatError, "bad metadata value for " + key);
    }
  }
  return md;
}

}  // namespace

bool SameModel(const TrainedModel& a, const TrainedModel& b) {
  return EncodeModel(a) == EncodeModel(b);
}

std::string MetadataText(const TrainedModel& m) {
  std::ostringstream out;
  out << "format_version=" << kModelFormatVersion << '\n'
      << "seed=" << m.metadata.seed << '\n'
      << "k=" << m.metadata.k << '\n'
      << "rounds=" << m.metadata.rounds << '\n'
      << "learners=" << m.ensemble.learners.size() << '\n'
      << "legitimate_images=" << m.metadata.legitimate_images << '\n'
      << "ddos_images=" << m.metadata.ddos_images << '\n'
      << "descriptor_count=" << m.metadata.descriptor_count << '\n'
      << "canvas=" << m.calibration.width << 'x' << m.calibration.height
      << '\n';
  return out.str();
}

std::vector<std::uint8_t> EncodeModel(const TrainedModel& model) {
  const std::vector<std::uint8_t> payload = EncodePayload(model);
  ByteWriter w;
  w.Bytes({reinterpret_cast<const std::uint8_t*>(kModelMagic), 8});
  w.U32(kModelFormatVersion);
  w.U64(payload.size());
  w.Bytes(payload);
  w.U32(Crc32(payload));
  return std::move(w.bytes());
}

TrainedModel DecodeModel(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 ||
      std::memcmp(bytes.data(), kModelMagic, 6) != 0) {
    throw Error(ErrorCode::kFormatError, "not a model file (bad magic)");
  }
  if (std::memcmp(bytes.data(), kModelMagic, 8) != 0) {
    throw Error(ErrorCode::kFormatVersionMismatch,
                "unsupported model format " +
                    std::string(reinterpret_cast<const char*>(bytes.data()), 8));
  }
  ByteReader header(bytes.subspan(8));
  const std::uint32_t version = header.U32();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kFormatVersionMismatch,
                "model format version " + std::to_string(version) +
                    ", expected " + std::to_string(kModelFormatVersion));
  }
  const std::uint64_t len = header.U64();
  if (len > header.remaining() || header.remaining() - len != 4) {
    throw Error(ErrorCode::kFormatError, "model payload length mismatch");
  }
  const auto payload = header.Take(static_cast<std::size_t>(len));
  if (header.U32() != Crc32(payload)) {
    throw Error(ErrorCode::kChecksumMismatch, "model checksum mismatch");
  }

  ByteReader r(payload);
  TrainedModel m;
  const std::size_t k = r.Count(0);
  const std::size_t dim = r.Count(0);
  if (dim != 0 && k > r.remaining() / 8 / dim) {
    throw Error(ErrorCode::kFormatError, "vocabulary size out of range");
  }
  m.vocabulary.centroids = Matrix(k, dim);
  for (std::size_t i = 0; i < k; ++i) {
    for (double& x : m.vocabulary.centroids.row(i)) x = r.F64();
  }
  m.vocabulary.idf = r.F64s(k);
  m.idf_log_base = r.F64();
  m.vocabulary.seed = r.U64();

  PlaneBounds bd;
  bd.u_min = r.F64();
  bd.u_max = r.F64();
  bd.v_min = r.F64();
  bd.v_max = r.F64();
  const int width = r.I32();
  const int height = r.I32();
  m.calibration = MakeCalibration(bd, width, height);

  const std::size_t n = r.Count(16);
  const std::vector<double> a = r.F64s(n);
  const std::vector<double> b = r.F64s(n);
  m.basis = MakeBasis(a, b, /*normalize=*/false);

  m.window_s = r.F64();
  m.diff_frames = r.U8() != 0;

  m.sift.octaves = r.I32();
  m.sift.scales_per_octave = r.I32();
  m.sift.sigma0 = r.F64();
  m.sift.assumed_blur = r.F64();
  m.sift.contrast_threshold = r.F64();
  m.sift.edge_ratio = r.F64();
  m.sift.max_descriptors = static_cast<std::size_t>(r.U64());

  m.threshold = r.F64();
  const std::size_t learners = r.Count(8 + 8 + 16);
  for (std::size_t t = 0; t < learners; ++t) {
    double alpha = 0.0;
    m.ensemble.learners.push_back(ReadLearner(r, alpha));
    m.ensemble.alphas.push_back(alpha);
    if (m.ensemble.learners.back().dim() != k) {
      throw Error(ErrorCode::kFormatError, "learner dimension differs from k");
    }
  }

  const std::size_t meta_len = r.Count(1);
  const auto meta = r.Take(meta_len);
  m.metadata = ParseMetadata(
      {reinterpret_cast<const char*>(meta.data()), meta.size()});
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kFormatError, "trailing bytes in model payload");
  }
  return m;
}

void SaveModel(const TrainedModel& model, const std::filesystem::path& path) {
  WriteFileAtomic(path, EncodeModel(model));
}

TrainedModel LoadModel(const std::filesystem::path& path) {
  return DecodeModel(ReadFileBytes(path));
}

std::vector<double> ModelBow(const TrainedModel& model,
                             const DescriptorSet& descriptors) {
  Matrix rows(descriptors.size(), kDescriptorDim);
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    auto dst = rows.row(i);
    for (std::size_t d = 0; d < kDescriptorDim; ++d) {
      dst[d] = descriptors.descriptors[i][d];
    }
  }
  return BowVector(rows, model.vocabulary);
}

Prediction Predict(const TrainedModel& model, std::span<const double> bow) {
  if (bow.size() != model.vocabulary.k()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector has " + std::to_string(bow.size()) +
                    " components, vocabulary has " +
                    std::to_string(model.vocabulary.k()));
  }
  return PredictVector(model.ensemble, bow, model.threshold);
}

Prediction PredictImage(const TrainedModel& model, const RgbaImage& image) {
  const DescriptorSet desc = ExtractDescriptors(ToGrayscale(image), model.sift);
  return Predict(model, ModelBow(model, desc));
}

}  // namespace synids
