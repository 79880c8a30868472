#pragma once

#include <algorithm>
#include <ostream>
#include <string>

namespace foveal {

/// Axis-aligned box given by its top-left corner and extent. Pixel boxes use
/// `int`; evaluation code works on `double` (pixel or normalized units).
template <typename T>
struct Box {
  T x{};
  T y{};
  T w{};
  T h{};

  T right() const { return x + w; }
  T bottom() const { return y + h; }
  T area() const { return w * h; }
  bool valid() const { return w > T(0) && h > T(0); }

  bool contains(T u, T v) const { return u >= x && u < right() && v >= y && v < bottom(); }

  template <typename U>
  Box<U> cast() const {
    return {static_cast<U>(x), static_cast<U>(y), static_cast<U>(w), static_cast<U>(h)};
  }

  friend bool operator==(const Box&, const Box&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Box& b) {
    return os << '(' << b.x << ", " << b.y << ", " << b.w << ", " << b.h << ')';
  }
};

using BoundingBox = Box<int>;

/// Intersects `box` with a `width` x `height` image.
/// Throws BoxOutsideImage when the intersection is empty, ValidationError when
/// the box or image extent is degenerate.
BoundingBox clamp_box(const BoundingBox& box, int width, int height);

/// Converts AVA-style corner fractions to a pixel box. Width and height are at
/// least one pixel. The result is not clamped.
BoundingBox denormalize_box(double nx1, double ny1, double nx2, double ny2, int width, int height);

/// Parses "x,y,w,h".
BoundingBox parse_box(const std::string& text);

}  // namespace foveal
