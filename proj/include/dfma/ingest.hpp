#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfma/spectrum.hpp"

namespace dfma {

// Dataset plumbing: the bit-exact .dfma tensor format, the dataset manifest,
// point-cloud alignment / normalization / feature shaping, and the radial
// hard low-pass ablation filter.

// .dfma binary layout (all little-endian):
//   magic   4 ASCII bytes "DFMA"
//   version uint16 = 1
//   rank    uint8 (1..4)
//   dims    rank x uint32
//   payload product(dims) IEEE-754 binary32, row-major
// Dims fill (L, C, H, W) from the front; missing trailing dims read as 1.
// Payload values are quantized to binary32 on write.
SampleTensor read_tensor(const std::filesystem::path& path);
void write_tensor(const SampleTensor& tensor, const std::filesystem::path& path);

struct RadarPoint {
  double x{0.0};
  double y{0.0};
  double z{0.0};
  double v{0.0};  // radial velocity

  double& channel(int c);
  double channel(int c) const;
};

struct PointFrame {
  std::vector<RadarPoint> points;
};

struct PreprocessConfig {
  int f_max{4};   // frames kept per recording
  int p_max{64};  // points kept per frame
  // per-point channels are fixed to (x, y, z, v)
};

// Uniform subsample indices round(i*(count-1)/(keep-1)), i = 0..keep-1;
// endpoints included, strictly increasing. Used when count > keep.
std::vector<int> subsample_indices(int count, int keep);

// align_frames followed by align_points on every retained frame: a raw
// recording becomes exactly f_max frames of p_max points each.
std::vector<PointFrame> align_recording(const std::vector<PointFrame>& frames,
                                        const PreprocessConfig& config);

// Over budget: keep equally spaced frames (endpoints included). Under
// budget: append empty frames. Order preserved.
std::vector<PointFrame> align_frames(const std::vector<PointFrame>& frames, int f_max);

// Same rule over point order; padding rows are (0,0,0,0).
PointFrame align_points(const PointFrame& frame, int p_max);

struct ChannelStats {
  std::array<double, 4> mean{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> stddev{0.0, 0.0, 0.0, 0.0};
};

// Per-channel mean and population (divisor N) standard deviation over every
// point of the given frames. Empty input is a parameter error.
ChannelStats compute_norm_stats(const std::vector<PointFrame>& frames);

// (value - mean) / std per channel; channels with std == 0 pass through
// unscaled.
PointFrame normalize_frame(const PointFrame& frame, const ChannelStats& stats);

// Flattens an aligned frame to points * 4 values, point-major
// (x0,y0,z0,v0, x1,y1,...).
std::vector<double> flatten_frame(const PointFrame& frame);

enum class FeatureLayout {
  rowmajor,  // zero-pad 256 -> 4096, reshape row-major: rows 0..3 of width 64
  block16,   // out[h][w] = features[16h + w] for h,w < 16
};

// Embeds a 256-value frame vector into a 64x64 single-channel map
// (row-major). All cells outside the occupied region are exactly 0.
std::vector<double> shape_features(std::span<const double> features, FeatureLayout layout);

// Hard radial low-pass in the 2D frequency domain. Centered normalized
// frequencies per axis span [-0.5, 0.5); a bin is kept iff
// sqrt(xi^2 + eta^2) <= nu. Output is the real part of the inverse
// transform. Requires height, width >= 2 and nu in [0, 0.7072].
std::vector<double> radial_lowpass(std::span<const double> map, int height, int width, double nu);

// Applies radial_lowpass independently to every frame and channel of a
// tensor (never mixes the temporal axis).
SampleTensor radial_lowpass_tensor(const SampleTensor& tensor, double nu);

struct ManifestSample {
  std::string path;
  int label{0};       // 1-based index into classes
  std::string split;  // "train" or "test"
};

struct DatasetManifest {
  std::vector<std::string> classes;
  std::vector<ManifestSample> samples;
  std::optional<ChannelStats> norm_stats;
  bool normalize{true};
};

DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

}  // namespace dfma
