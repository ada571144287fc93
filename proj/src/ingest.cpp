#include "dfma/ingest.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "dfma/errors.hpp"

namespace dfma {

namespace {

constexpr char kMagic[4] = {'D', 'F', 'M', 'A'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 31;

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u32(out, bits);
}

class ByteReader {
 public:
  ByteReader(const std::string& bytes, const std::string& path)
      : bytes_(bytes), path_(path) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }

  std::uint16_t u16() {
    const char* p = take(2);
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(p[0]) |
                                      (static_cast<std::uint8_t>(p[1]) << 8));
  }

  std::uint32_t u32() {
    const char* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(p[i])) << (8 * i);
    return v;
  }

  float f32() {
    const std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  const char* take(std::size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw FormatError("ingest: truncated tensor file '" + path_ + "'");
    }
    const char* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::string& bytes_;
  std::string path_;
  std::size_t pos_{0};
};

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("ingest: cannot open '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

}  // namespace

SampleTensor read_tensor(const std::filesystem::path& path) {
  const std::string bytes = read_file_bytes(path);
  ByteReader r(bytes, path.string());

  const char* magic = r.take(4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("ingest: bad magic in '" + path.string() + "'");
  }
  const std::uint16_t version = r.u16();
  if (version != kVersion) {
    throw FormatError("ingest: unsupported tensor version " + std::to_string(version));
  }
  const std::uint8_t rank = r.u8();
  if (rank < 1 || rank > 4) {
    throw FormatError("ingest: tensor rank must be 1..4, got " + std::to_string(rank));
  }

  std::uint32_t dims[4] = {1, 1, 1, 1};
  std::uint64_t total = 1;
  for (int i = 0; i < rank; ++i) {
    dims[i] = r.u32();
    if (dims[i] == 0) throw FormatError("ingest: zero dimension in '" + path.string() + "'");
    total *= dims[i];
    if (total > kMaxElements) {
      throw FormatError("ingest: dimension product overflow in '" + path.string() + "'");
    }
  }
  if (r.remaining() != 4 * total) {
    throw FormatError("ingest: payload of '" + path.string() + "' has " +
                      std::to_string(r.remaining()) + " bytes, expected " +
                      std::to_string(4 * total));
  }

  SampleTensor t;
  t.dims = {static_cast<int>(dims[0]), static_cast<int>(dims[1]), static_cast<int>(dims[2]),
            static_cast<int>(dims[3])};
  t.data.resize(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    const float v = r.f32();
    if (!std::isfinite(v)) {
      throw FormatError("ingest: non-finite payload value in '" + path.string() + "'");
    }
    t.data[i] = static_cast<double>(v);
  }
  return t;
}

void write_tensor(const SampleTensor& tensor, const std::filesystem::path& path) {
  tensor.validate();
  std::string out;
  out.reserve(11 + 16 + 4 * tensor.data.size());
  out.append(kMagic, 4);
  put_u16(out, kVersion);
  out.push_back(static_cast<char>(4));
  put_u32(out, static_cast<std::uint32_t>(tensor.dims.frames));
  put_u32(out, static_cast<std::uint32_t>(tensor.dims.channels));
  put_u32(out, static_cast<std::uint32_t>(tensor.dims.height));
  put_u32(out, static_cast<std::uint32_t>(tensor.dims.width));
  for (double v : tensor.data) put_f32(out, static_cast<float>(v));

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("ingest: cannot open '" + path.string() + "' for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw FormatError("ingest: short write to '" + path.string() + "'");
}

double& RadarPoint::channel(int c) {
  switch (c) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: return v;
  }
}

double RadarPoint::channel(int c) const {
  switch (c) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: return v;
  }
}

std::vector<int> subsample_indices(int count, int keep) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(keep));
  if (keep == 1) {
    idx.push_back(0);
    return idx;
  }
  for (int i = 0; i < keep; ++i) {
    const double pos = static_cast<double>(i) * static_cast<double>(count - 1) /
                       static_cast<double>(keep - 1);
    idx.push_back(static_cast<int>(std::lround(pos)));
  }
  return idx;
}

std::vector<PointFrame> align_frames(const std::vector<PointFrame>& frames, int f_max) {
  if (f_max < 1) throw ParameterError("ingest: f_max must be >= 1");
  const int count = static_cast<int>(frames.size());
  std::vector<PointFrame> out;
  out.reserve(static_cast<std::size_t>(f_max));
  if (count > f_max) {
    for (int i : subsample_indices(count, f_max)) out.push_back(frames[static_cast<std::size_t>(i)]);
  } else {
    out = frames;
    out.resize(static_cast<std::size_t>(f_max));  // pad with empty point sets
  }
  return out;
}

PointFrame align_points(const PointFrame& frame, int p_max) {
  if (p_max < 1) throw ParameterError("ingest: p_max must be >= 1");
  const int count = static_cast<int>(frame.points.size());
  PointFrame out;
  out.points.reserve(static_cast<std::size_t>(p_max));
  if (count > p_max) {
    for (int i : subsample_indices(count, p_max)) {
      out.points.push_back(frame.points[static_cast<std::size_t>(i)]);
    }
  } else {
    out.points = frame.points;
    out.points.resize(static_cast<std::size_t>(p_max));  // zero rows
  }
  return out;
}

std::vector<PointFrame> align_recording(const std::vector<PointFrame>& frames,
                                        const PreprocessConfig& config) {
  std::vector<PointFrame> out = align_frames(frames, config.f_max);
  for (auto& f : out) f = align_points(f, config.p_max);
  return out;
}

ChannelStats compute_norm_stats(const std::vector<PointFrame>& frames) {
  std::size_t n = 0;
  for (const auto& f : frames) n += f.points.size();
  if (n == 0) throw ParameterError("ingest: no points to compute normalization stats from");

  ChannelStats stats;
  for (int c = 0; c < 4; ++c) {
    double mean = 0.0;
    for (const auto& f : frames) {
      for (const auto& p : f.points) mean += p.channel(c);
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& f : frames) {
      for (const auto& p : f.points) {
        const double d = p.channel(c) - mean;
        var += d * d;
      }
    }
    var /= static_cast<double>(n);  // population divisor
    stats.mean[static_cast<std::size_t>(c)] = mean;
    stats.stddev[static_cast<std::size_t>(c)] = std::sqrt(var);
  }
  return stats;
}

PointFrame normalize_frame(const PointFrame& frame, const ChannelStats& stats) {
  PointFrame out = frame;
  for (auto& p : out.points) {
    for (int c = 0; c < 4; ++c) {
      const double sd = stats.stddev[static_cast<std::size_t>(c)];
      if (sd == 0.0) continue;  // constant channel passes through
      p.channel(c) = (p.channel(c) - stats.mean[static_cast<std::size_t>(c)]) / sd;
    }
  }
  return out;
}

std::vector<double> flatten_frame(const PointFrame& frame) {
  std::vector<double> out;
  out.reserve(frame.points.size() * 4);
  for (const auto& p : frame.points) {
    out.push_back(p.x);
    out.push_back(p.y);
    out.push_back(p.z);
    out.push_back(p.v);
  }
  return out;
}

std::vector<double> shape_features(std::span<const double> features, FeatureLayout layout) {
  if (features.size() != 256) {
    throw FormatError("ingest: feature vector must have 256 values, got " +
                      std::to_string(features.size()));
  }
  std::vector<double> map(64 * 64, 0.0);
  switch (layout) {
    case FeatureLayout::rowmajor:
      // Zero-padded 4096 vector reshaped row-major: entry i lands at
      // (i / 64, i % 64), so the 256 features fill rows 0..3.
      for (std::size_t i = 0; i < 256; ++i) map[i] = features[i];
      break;
    case FeatureLayout::block16:
      for (int h = 0; h < 16; ++h) {
        for (int w = 0; w < 16; ++w) {
          map[static_cast<std::size_t>(h) * 64 + w] = features[static_cast<std::size_t>(h) * 16 + w];
        }
      }
      break;
  }
  return map;
}

namespace {

// fftfreq convention: nonnegative frequencies first, then the negative half;
// 0.5 is the Nyquist limit.
double normalized_frequency(int k, int n) {
  return (k < (n + 1) / 2) ? static_cast<double>(k) / n
                           : static_cast<double>(k - n) / n;
}

using Cplx = std::complex<double>;

// Naive separable 2D DFT; sign = -1 forward, +1 inverse (unscaled).
std::vector<Cplx> dft2(const std::vector<Cplx>& in, int height, int width, int sign) {
  std::vector<Cplx> tmp(in.size());
  std::vector<Cplx> out(in.size());
  // rows
  for (int y = 0; y < height; ++y) {
    for (int kx = 0; kx < width; ++kx) {
      Cplx acc{0.0, 0.0};
      for (int x = 0; x < width; ++x) {
        const double angle =
            sign * 2.0 * std::numbers::pi * static_cast<double>(kx) * x / width;
        acc += in[static_cast<std::size_t>(y) * width + x] * Cplx{std::cos(angle), std::sin(angle)};
      }
      tmp[static_cast<std::size_t>(y) * width + kx] = acc;
    }
  }
  // columns
  for (int kx = 0; kx < width; ++kx) {
    for (int ky = 0; ky < height; ++ky) {
      Cplx acc{0.0, 0.0};
      for (int y = 0; y < height; ++y) {
        const double angle =
            sign * 2.0 * std::numbers::pi * static_cast<double>(ky) * y / height;
        acc += tmp[static_cast<std::size_t>(y) * width + kx] * Cplx{std::cos(angle), std::sin(angle)};
      }
      out[static_cast<std::size_t>(ky) * width + kx] = acc;
    }
  }
  return out;
}

}  // namespace

std::vector<double> radial_lowpass(std::span<const double> map, int height, int width, double nu) {
  if (height < 2 || width < 2) {
    throw ParameterError("ingest: radial lowpass needs height, width >= 2");
  }
  if (!(nu >= 0.0 && nu <= 0.7072)) {
    throw ParameterError("ingest: nu must lie in [0, 0.7072]");
  }
  if (map.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
    throw FormatError("ingest: map size does not match height*width");
  }

  std::vector<Cplx> freq(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) freq[i] = Cplx{map[i], 0.0};
  freq = dft2(freq, height, width, -1);

  for (int ky = 0; ky < height; ++ky) {
    const double eta = normalized_frequency(ky, height);
    for (int kx = 0; kx < width; ++kx) {
      const double xi = normalized_frequency(kx, width);
      const double rho = std::sqrt(xi * xi + eta * eta);
      if (rho > nu) freq[static_cast<std::size_t>(ky) * width + kx] = Cplx{0.0, 0.0};
    }
  }

  freq = dft2(freq, height, width, +1);
  const double scale = 1.0 / (static_cast<double>(height) * static_cast<double>(width));
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = freq[i].real() * scale;
  return out;
}

SampleTensor radial_lowpass_tensor(const SampleTensor& tensor, double nu) {
  tensor.validate();
  SampleTensor out = tensor;
  const int plane = tensor.dims.height * tensor.dims.width;
  for (int l = 0; l < tensor.dims.frames; ++l) {
    for (int c = 0; c < tensor.dims.channels; ++c) {
      const std::size_t offset =
          (static_cast<std::size_t>(l) * tensor.dims.channels + c) * static_cast<std::size_t>(plane);
      const std::span<const double> view(tensor.data.data() + offset,
                                         static_cast<std::size_t>(plane));
      const std::vector<double> filtered =
          radial_lowpass(view, tensor.dims.height, tensor.dims.width, nu);
      std::copy(filtered.begin(), filtered.end(), out.data.begin() + static_cast<std::ptrdiff_t>(offset));
    }
  }
  return out;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("ingest: cannot open manifest '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("ingest: manifest parse error: " + std::string(e.what()));
  }

  DatasetManifest m;
  try {
    m.classes = doc.at("classes").get<std::vector<std::string>>();
    for (const auto& s : doc.at("samples")) {
      ManifestSample ms;
      ms.path = s.at("path").get<std::string>();
      ms.label = s.at("label").get<int>();
      ms.split = s.at("split").get<std::string>();
      m.samples.push_back(std::move(ms));
    }
    if (doc.contains("norm_stats") && !doc["norm_stats"].is_null()) {
      ChannelStats st;
      const auto& ns = doc["norm_stats"];
      const auto mean = ns.at("mean").get<std::vector<double>>();
      const auto sd = ns.at("std").get<std::vector<double>>();
      if (mean.size() != 4 || sd.size() != 4) {
        throw FormatError("ingest: norm_stats must have 4 channels");
      }
      std::copy(mean.begin(), mean.end(), st.mean.begin());
      std::copy(sd.begin(), sd.end(), st.stddev.begin());
      m.norm_stats = st;
    }
    m.normalize = doc.value("normalize", true);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("ingest: malformed manifest: " + std::string(e.what()));
  }

  if (m.classes.empty()) throw FormatError("ingest: manifest declares no classes");
  for (const auto& s : m.samples) {
    if (s.label < 1 || s.label > static_cast<int>(m.classes.size())) {
      throw FormatError("ingest: sample '" + s.path + "' label " + std::to_string(s.label) +
                        " outside declared classes");
    }
    if (s.split != "train" && s.split != "test") {
      throw FormatError("ingest: sample '" + s.path + "' has unknown split '" + s.split + "'");
    }
  }
  return m;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["classes"] = manifest.classes;
  doc["samples"] = nlohmann::json::array();
  for (const auto& s : manifest.samples) {
    doc["samples"].push_back({{"path", s.path}, {"label", s.label}, {"split", s.split}});
  }
  if (manifest.norm_stats.has_value()) {
    doc["norm_stats"] = {
        {"mean", std::vector<double>(manifest.norm_stats->mean.begin(),
                                     manifest.norm_stats->mean.end())},
        {"std", std::vector<double>(manifest.norm_stats->stddev.begin(),
                                    manifest.norm_stats->stddev.end())}};
  }
  doc["normalize"] = manifest.normalize;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("ingest: cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << "\n";
}

}  // namespace dfma
