#ifndef ADVPLAN_ENV_H_
#define ADVPLAN_ENV_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace advplan {

using Vec2 = Eigen::Vector2d;

// Distance reported when there is nothing to measure against.
inline constexpr double kDistanceSentinel = 1e9;

struct Obstacle {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
};

struct Bounds {
  Vec2 min = Vec2(0.0, 0.0);
  Vec2 max = Vec2(20.0, 20.0);

  bool Contains(const Vec2& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y();
  }
  Vec2 Clamp(const Vec2& p) const { return p.cwiseMax(min).cwiseMin(max); }
};

struct DistanceQuery {
  double distance = kDistanceSentinel;
  Vec2 gradient = Vec2::Zero();
  // Index of the obstacle that realises the minimum, -1 for an empty map.
  int nearest = -1;
};

// Circular obstacles inside a rectangle. The optional adversary index marks
// one obstacle as the (moving) adversary so that static-map checks can skip
// it.
class EnvironmentMap {
 public:
  EnvironmentMap() = default;
  explicit EnvironmentMap(Bounds bounds, std::vector<Obstacle> obstacles = {},
                          std::optional<int> adversary_index = std::nullopt);

  const Bounds& bounds() const { return bounds_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  std::optional<int> adversary_index() const { return adversary_index_; }

  // Copy of this map with one more obstacle appended and marked as the
  // adversary.
  EnvironmentMap WithAdversary(const Obstacle& adversary) const;

  // Copy of this map with the obstacle at `index` removed.
  EnvironmentMap Without(int index) const;

 private:
  Bounds bounds_;
  std::vector<Obstacle> obstacles_;
  std::optional<int> adversary_index_;
};

// Exact Euclidean signed distance to the union of circles, and its gradient.
// At equidistant points the lowest-index obstacle supplies the gradient.
DistanceQuery SignedDistance(const EnvironmentMap& map, const Vec2& p);

// Signed distance from the closed segment [a, b] to the nearest obstacle
// surface: negative when the segment passes through an obstacle. Returns
// kDistanceSentinel for an empty map.
double SegmentClearance(const EnvironmentMap& map, const Vec2& a,
                        const Vec2& b);

// Smallest surface distance to any obstacle except `exclude`.
double MinSeparation(const EnvironmentMap& map, const Vec2& p,
                     std::optional<int> exclude = std::nullopt);

enum class MapKind { kSparse, kDense };

const char* ToString(MapKind kind);
MapKind ParseMapKind(const std::string& text);

struct MapSpec {
  MapKind kind = MapKind::kDense;
  int obstacle_count = 30;
  std::pair<double, double> radius_range = {0.4, 0.7};
  uint64_t seed = 0;
  Bounds bounds;
  // Corridor endpoints kept free of obstacles.
  Vec2 start = Vec2(1.0, 10.0);
  Vec2 goal = Vec2(19.0, 10.0);
};

// Defaults for each map kind: 4 obstacles of radius 0.5-0.8 m for sparse
// maps, 30 obstacles of radius 0.4-0.7 m for dense maps.
MapSpec DefaultMapSpec(MapKind kind, uint64_t seed = 0);

inline constexpr int kMaxGenerationAttempts = 10000;

// Deterministic in `spec`. Throws Error(kGenerationFailure) when rejection
// sampling exceeds kMaxGenerationAttempts.
EnvironmentMap GenerateMap(const MapSpec& spec);

// Text form: "bounds xmin ymin xmax ymax" then one "cx cy r" line per
// obstacle.
void WriteMap(std::ostream& out, const EnvironmentMap& map);
EnvironmentMap ReadMap(std::istream& in);

}  // namespace advplan

#endif  // ADVPLAN_ENV_H_
