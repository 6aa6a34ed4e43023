#include "so3track/reference.hpp"

#include <cmath>

namespace so3track {

Vec3 sample(const ReferenceKind& kind, double t) {
  switch (kind.tag) {
    case ReferenceTag::paper_sim: {
      const double v = t * std::sin(3.0 * t);
      return Vec3(v, v, v);
    }
    case ReferenceTag::constant:
      return kind.amplitude;
    case ReferenceTag::sinusoid:
      return kind.amplitude.cwiseProduct(
          (kind.frequency * t + kind.phase).array().sin().matrix());
    case ReferenceTag::zero:
      return Vec3::Zero();
  }
  return Vec3::Zero();
}

}  // namespace so3track
