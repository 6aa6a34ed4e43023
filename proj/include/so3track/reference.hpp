#ifndef SO3TRACK_REFERENCE_HPP_
#define SO3TRACK_REFERENCE_HPP_

#include "so3track/so3.hpp"

namespace so3track {

enum class ReferenceTag { paper_sim, constant, sinusoid, zero };

// Target body angular velocity generator. paper_sim is the unbounded
// trajectory t*sin(3t) on every axis; the other tags exist so tests can
// decouple controller behavior from reference aggressiveness.
struct ReferenceKind {
  ReferenceTag tag = ReferenceTag::paper_sim;
  Vec3 amplitude = Vec3::Zero();  // rad/s
  Vec3 frequency = Vec3::Zero();  // rad/s
  Vec3 phase = Vec3::Zero();      // rad
};

Vec3 sample(const ReferenceKind& kind, double t);

}  // namespace so3track

#endif  // SO3TRACK_REFERENCE_HPP_
