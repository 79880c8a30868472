#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "foveal/errors.hpp"

namespace foveal {

/// Dense multi-channel raster. Samples are stored row-major with channels
/// interleaved, as a `height x (width * channels)` row-major Eigen array, so a
/// raster row is one contiguous Eigen row and whole-image arithmetic can be
/// written directly on `samples()`.
///
/// Intensity images hold values in [0,1]; 2-channel images are optical flow
/// (horizontal, vertical displacement) and are unbounded.
template <typename Scalar>
class BasicImage {
 public:
  using Samples = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  BasicImage(int width, int height, int channels, Scalar fill = Scalar(0))
      : width_(width), height_(height), channels_(channels) {
    check_shape();
    data_.setConstant(height, static_cast<Eigen::Index>(width) * channels, fill);
  }

  BasicImage(int width, int height, int channels, Samples samples)
      : width_(width), height_(height), channels_(channels), data_(std::move(samples)) {
    check_shape();
    if (data_.rows() != height || data_.cols() != static_cast<Eigen::Index>(width) * channels)
      throw ValidationError("image sample array does not match its dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  Eigen::Index size() const { return data_.size(); }
  bool is_flow() const { return channels_ == 2; }

  Scalar& operator()(int x, int y, int c = 0) { return data_(y, static_cast<Eigen::Index>(x) * channels_ + c); }
  Scalar operator()(int x, int y, int c = 0) const {
    return data_(y, static_cast<Eigen::Index>(x) * channels_ + c);
  }

  const Samples& samples() const { return data_; }
  Samples& samples() { return data_; }

  std::span<const Scalar> data() const { return {data_.data(), static_cast<std::size_t>(data_.size())}; }
  std::span<Scalar> data() { return {data_.data(), static_cast<std::size_t>(data_.size())}; }

  bool same_shape(const BasicImage& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  /// Same geometry, new samples.
  template <typename Derived>
  BasicImage with_samples(const Eigen::ArrayBase<Derived>& samples) const {
    return BasicImage(width_, height_, channels_, Samples(samples));
  }

  template <typename Other>
  BasicImage<Other> cast() const {
    return BasicImage<Other>(width_, height_, channels_, data_.template cast<Other>());
  }

 private:
  void check_shape() const {
    if (width_ < 1 || height_ < 1) throw ValidationError("image dimensions must be at least 1x1");
    if (channels_ < 1 || channels_ > 3) throw ValidationError("image must have 1, 2 or 3 channels");
  }

  int width_;
  int height_;
  int channels_;
  Samples data_;
};

using Image = BasicImage<float>;

/// Ordered optical-flow frames sharing one geometry, 2 channels each.
struct FlowStack {
  std::vector<Image> frames;

  std::size_t length() const { return frames.size(); }
};

/// Throws ValidationError unless every frame is 2-channel and same-sized.
void validate_flow_stack(const FlowStack& stack);

template <typename Scalar>
Scalar max_abs_difference(const BasicImage<Scalar>& a, const BasicImage<Scalar>& b) {
  if (!a.same_shape(b)) throw ValidationError("image shapes differ");
  return (a.samples() - b.samples()).abs().maxCoeff();
}

}  // namespace foveal
