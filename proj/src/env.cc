#include "advplan/env.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "advplan/error.h"

namespace advplan {

EnvironmentMap::EnvironmentMap(Bounds bounds, std::vector<Obstacle> obstacles,
                               std::optional<int> adversary_index)
    : bounds_(bounds),
      obstacles_(std::move(obstacles)),
      adversary_index_(adversary_index) {
  for (const Obstacle& o : obstacles_) {
    if (!(o.radius > 0.0) || !o.center.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "obstacle radius must be positive with a finite center");
    }
    if (!bounds_.Contains(o.center)) {
      throw Error(ErrorCode::kInvalidArgument, "obstacle center out of bounds");
    }
  }
  if (adversary_index_ &&
      (*adversary_index_ < 0 ||
       *adversary_index_ >= static_cast<int>(obstacles_.size()))) {
    throw Error(ErrorCode::kInvalidArgument, "adversary index out of range");
  }
}

EnvironmentMap EnvironmentMap::WithAdversary(const Obstacle& adversary) const {
  std::vector<Obstacle> obstacles = obstacles_;
  obstacles.push_back(adversary);
  const int index = static_cast<int>(obstacles.size()) - 1;
  return EnvironmentMap(bounds_, std::move(obstacles), index);
}

EnvironmentMap EnvironmentMap::Without(int index) const {
  std::vector<Obstacle> obstacles;
  obstacles.reserve(obstacles_.size());
  for (int i = 0; i < static_cast<int>(obstacles_.size()); ++i) {
    if (i != index) obstacles.push_back(obstacles_[i]);
  }
  std::optional<int> adversary;
  if (adversary_index_ && *adversary_index_ != index) {
    adversary = *adversary_index_ > index ? *adversary_index_ - 1
                                          : *adversary_index_;
  }
  return EnvironmentMap(bounds_, std::move(obstacles), adversary);
}

DistanceQuery SignedDistance(const EnvironmentMap& map, const Vec2& p) {
  DistanceQuery result;
  const auto& obstacles = map.obstacles();
  for (int i = 0; i < static_cast<int>(obstacles.size()); ++i) {
    const Vec2 delta = p - obstacles[i].center;
    const double rho = delta.norm();
    const double d = rho - obstacles[i].radius;
    // Strict comparison keeps the lowest index on ties.
    if (result.nearest < 0 || d < result.distance) {
      result.distance = d;
      result.nearest = i;
      // The field is not differentiable at a center; any unit vector is a
      // valid subgradient direction, +x is used.
      result.gradient = rho > 0.0 ? Vec2(delta / rho) : Vec2(1.0, 0.0);
    }
  }
  return result;
}

double SegmentClearance(const EnvironmentMap& map, const Vec2& a,
                        const Vec2& b) {
  double best = kDistanceSentinel;
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  for (const Obstacle& o : map.obstacles()) {
    const double s =
        len2 > 0.0 ? std::clamp((o.center - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + s * ab - o.center).norm() - o.radius);
  }
  return best;
}

double MinSeparation(const EnvironmentMap& map, const Vec2& p,
                     std::optional<int> exclude) {
  double best = kDistanceSentinel;
  bool found = false;
  const auto& obstacles = map.obstacles();
  for (int i = 0; i < static_cast<int>(obstacles.size()); ++i) {
    if (exclude && *exclude == i) continue;
    const double d = (p - obstacles[i].center).norm() - obstacles[i].radius;
    if (!found || d < best) {
      best = d;
      found = true;
    }
  }
  return best;
}

const char* ToString(MapKind kind) {
  return kind == MapKind::kSparse ? "sparse" : "dense";
}

MapKind ParseMapKind(const std::string& text) {
  if (text == "sparse") return MapKind::kSparse;
  if (text == "dense") return MapKind::kDense;
  throw Error(ErrorCode::kConfig, "unknown map kind '" + text + "'");
}

MapSpec DefaultMapSpec(MapKind kind, uint64_t seed) {
  MapSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  if (kind == MapKind::kSparse) {
    spec.obstacle_count = 4;
    spec.radius_range = {0.5, 0.8};
  } else {
    spec.obstacle_count = 30;
    spec.radius_range = {0.4, 0.7};
  }
  return spec;
}

EnvironmentMap GenerateMap(const MapSpec& spec) {
  const auto [r_min, r_max] = spec.radius_range;
  if (spec.obstacle_count < 0 || !(r_min > 0.0) || r_min > r_max) {
    throw Error(ErrorCode::kInvalidArgument, "invalid map spec");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ux(spec.bounds.min.x(),
                                            spec.bounds.max.x());
  std::uniform_real_distribution<double> uy(spec.bounds.min.y(),
                                            spec.bounds.max.y());
  std::uniform_real_distribution<double> ur(r_min, r_max);

  const double endpoint_clearance = 2.0 * r_max;
  std::vector<Obstacle> obstacles;
  obstacles.reserve(spec.obstacle_count);
  int attempts = 0;
  while (static_cast<int>(obstacles.size()) < spec.obstacle_count) {
    if (++attempts > kMaxGenerationAttempts) {
      throw Error(ErrorCode::kGenerationFailure,
                  "placed " + std::to_string(obstacles.size()) + " of " +
                      std::to_string(spec.obstacle_count) + " obstacles");
    }
    Obstacle candidate;
    candidate.center = Vec2(ux(rng), uy(rng));
    candidate.radius = r_min == r_max ? r_min : ur(rng);
    const auto surface_gap = [&](const Vec2& p) {
      return (p - candidate.center).norm() - candidate.radius;
    };
    if (surface_gap(spec.start) < endpoint_clearance ||
        surface_gap(spec.goal) < endpoint_clearance) {
      continue;
    }
    bool overlaps = false;
    for (const Obstacle& other : obstacles) {
      if ((other.center - candidate.center).norm() <
          other.radius + candidate.radius) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) obstacles.push_back(candidate);
  }
  return EnvironmentMap(spec.bounds, std::move(obstacles));
}

void WriteMap(std::ostream& out, const EnvironmentMap& map) {
  char line[160];
  const Bounds& b = map.bounds();
  std::snprintf(line, sizeof(line), "bounds %.17g %.17g %.17g %.17g\n",
                b.min.x(), b.min.y(), b.max.x(), b.max.y());
  out << line;
  for (const Obstacle& o : map.obstacles()) {
    std::snprintf(line, sizeof(line), "%.17g %.17g %.17g\n", o.center.x(),
                  o.center.y(), o.radius);
    out << line;
  }
}

EnvironmentMap ReadMap(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw Error(ErrorCode::kIo, "empty map stream");
  }
  std::istringstream hs(header);
  std::string tag;
  Bounds bounds;
  if (!(hs >> tag >> bounds.min.x() >> bounds.min.y() >> bounds.max.x() >>
        bounds.max.y()) ||
      tag != "bounds") {
    throw Error(ErrorCode::kIo, "malformed map header '" + header + "'");
  }
  std::vector<Obstacle> obstacles;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Obstacle o;
    if (!(ls >> o.center.x() >> o.center.y() >> o.radius)) {
      throw Error(ErrorCode::kIo, "malformed obstacle line '" + line + "'");
    }
    obstacles.push_back(o);
  }
  return EnvironmentMap(bounds, std::move(obstacles));
}

}  // namespace advplan
