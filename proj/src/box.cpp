#include "foveal/box.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "foveal/errors.hpp"
#include "foveal/text.hpp"

namespace foveal {

BoundingBox clamp_box(const BoundingBox& box, int width, int height) {
  if (!box.valid()) throw ValidationError("box must have positive width and height");
  if (width < 1 || height < 1) throw ValidationError("image extent must be at least 1x1");
  const int x0 = std::max(box.x, 0);
  const int y0 = std::max(box.y, 0);
  const int x1 = std::min(box.right(), width);
  const int y1 = std::min(box.bottom(), height);
  if (x1 <= x0 || y1 <= y0) {
    std::ostringstream msg;
    msg << "box " << box << " does not intersect the " << width << 'x' << height << " image";
    throw BoxOutsideImage(msg.str());
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

BoundingBox denormalize_box(double nx1, double ny1, double nx2, double ny2, int width, int height) {
  const bool ordered = 0.0 <= nx1 && nx1 < nx2 && nx2 <= 1.0 && 0.0 <= ny1 && ny1 < ny2 && ny2 <= 1.0;
  if (!ordered) throw InvalidNormalizedBox("normalized box corners must satisfy 0 <= x1 < x2 <= 1, 0 <= y1 < y2 <= 1");
  if (width < 1 || height < 1) throw ValidationError("image extent must be at least 1x1");
  const auto px = [](double v) { return static_cast<int>(std::lround(v)); };
  return {px(nx1 * width), px(ny1 * height), std::max(1, px((nx2 - nx1) * width)),
          std::max(1, px((ny2 - ny1) * height))};
}

BoundingBox parse_box(const std::string& s) {
  const auto f = text::split_csv(s);
  if (f.size() != 4) throw ValidationError("box must be x,y,w,h");
  BoundingBox b{text::parse_int(f[0]), text::parse_int(f[1]), text::parse_int(f[2]), text::parse_int(f[3])};
  if (!b.valid()) throw ValidationError("box width and height must be positive");
  return b;
}

}  // namespace foveal
