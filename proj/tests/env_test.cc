#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "advplan/env.h"
#include "advplan/error.h"
#include "oracles.h"

namespace advplan {
namespace {

EnvironmentMap OneCircle() {
  return EnvironmentMap(Bounds{Vec2(-10, -10), Vec2(10, 10)},
                        {Obstacle{Vec2(0, 0), 1.0}});
}

double BruteForceDistance(const std::vector<Obstacle>& obs, const Vec2& p,
                          int exclude = -1) {
  double best = kDistanceSentinel;
  for (size_t i = 0; i < obs.size(); ++i) {
    if (static_cast<int>(i) == exclude) continue;
    best = std::min(best, (p - obs[i].center).norm() - obs[i].radius);
  }
  return best;
}

TEST(SignedDistance, OutsideOneCircle) {
  const DistanceQuery q = SignedDistance(OneCircle(), Vec2(3, 0));
  EXPECT_DOUBLE_EQ(q.distance, 2.0);
  EXPECT_DOUBLE_EQ(q.gradient.x(), 1.0);
  EXPECT_DOUBLE_EQ(q.gradient.y(), 0.0);
  EXPECT_EQ(q.nearest, 0);
}

TEST(SignedDistance, InsideOneCircle) {
  const DistanceQuery q = SignedDistance(OneCircle(), Vec2(0.5, 0));
  EXPECT_DOUBLE_EQ(q.distance, -0.5);
  EXPECT_DOUBLE_EQ(q.gradient.x(), 1.0);
  EXPECT_DOUBLE_EQ(q.gradient.y(), 0.0);
}

TEST(SignedDistance, StrictlyNearerFirstObstacle) {
  const EnvironmentMap map(Bounds{Vec2(-10, -10), Vec2(10, 10)},
                           {Obstacle{Vec2(0, 0), 1.0}, Obstacle{Vec2(5, 0), 1.0}});
  const DistanceQuery q = SignedDistance(map, Vec2(2, 0));
  EXPECT_DOUBLE_EQ(q.distance, BruteForceDistance(map.obstacles(), Vec2(2, 0)));
  EXPECT_DOUBLE_EQ(q.distance, 1.0);
  EXPECT_DOUBLE_EQ(q.gradient.x(), 1.0);
  EXPECT_EQ(q.nearest, 0);
}

TEST(SignedDistance, TieGoesToLowestIndex) {
  const EnvironmentMap map(Bounds{Vec2(-10, -10), Vec2(10, 10)},
                           {Obstacle{Vec2(0, 0), 1.0}, Obstacle{Vec2(5, 0), 1.0}});
  const DistanceQuery q = SignedDistance(map, Vec2(2.5, 0));
  EXPECT_EQ(q.nearest, 0);
  EXPECT_DOUBLE_EQ(q.gradient.x(), 1.0);
  const EnvironmentMap swapped(
      Bounds{Vec2(-10, -10), Vec2(10, 10)},
      {Obstacle{Vec2(5, 0), 1.0}, Obstacle{Vec2(0, 0), 1.0}});
  const DistanceQuery r = SignedDistance(swapped, Vec2(2.5, 0));
  EXPECT_EQ(r.nearest, 0);
  EXPECT_DOUBLE_EQ(r.gradient.x(), -1.0);
}

TEST(SignedDistance, EmptyMapSentinel) {
  const DistanceQuery q = SignedDistance(EnvironmentMap(Bounds{}), Vec2(3, 4));
  EXPECT_EQ(q.distance, kDistanceSentinel);
  EXPECT_EQ(q.gradient, Vec2::Zero());
  EXPECT_EQ(q.nearest, -1);
}

class RandomMapTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(2.0, 18.0), r(0.3, 1.5);
    std::vector<Obstacle> obs;
    for (int i = 0; i < 12; ++i) obs.push_back({Vec2(c(rng), c(rng)), r(rng)});
    map_ = EnvironmentMap(Bounds{}, obs);
  }
  EnvironmentMap map_;
};

TEST_F(RandomMapTest, SignMatchesMembership) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 p(u(rng), u(rng));
    bool inside = false;
    for (const Obstacle& o : map_.obstacles()) {
      inside |= (p - o.center).norm() < o.radius;
    }
    const double d = SignedDistance(map_, p).distance;
    if (inside) {
      EXPECT_LT(d, 0.0);
    } else {
      EXPECT_GE(d, 0.0);
    }
    EXPECT_DOUBLE_EQ(d, BruteForceDistance(map_.obstacles(), p));
  }
}

TEST_F(RandomMapTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  const auto f = [&](const Eigen::VectorXd& x) {
    return SignedDistance(map_, Vec2(x[0], x[1])).distance;
  };
  int checked = 0;
  while (checked < 1000) {
    const Vec2 p(u(rng), u(rng));
    // Skip points near the equidistant set where the field has a kink.
    std::vector<double> d;
    for (const Obstacle& o : map_.obstacles()) {
      d.push_back((p - o.center).norm() - o.radius);
    }
    std::sort(d.begin(), d.end());
    if (d[1] - d[0] < 1e-3) continue;
    bool near_center = false;
    for (const Obstacle& o : map_.obstacles()) {
      near_center |= (p - o.center).norm() < 1e-3;
    }
    if (near_center) continue;
    const Eigen::VectorXd g = oracle::FdGradient(f, Eigen::Vector2d(p), 1e-5);
    const Vec2 analytic = SignedDistance(map_, p).gradient;
    EXPECT_LE((analytic - Vec2(g[0], g[1])).cwiseAbs().maxCoeff(), 1e-4);
    EXPECT_NEAR(analytic.norm(), 1.0, 1e-12);
    ++checked;
  }
}

TEST(MinSeparation, Examples) {
  EXPECT_DOUBLE_EQ(MinSeparation(OneCircle(), Vec2(2, 0)), 1.0);
  EXPECT_EQ(MinSeparation(OneCircle(), Vec2(2, 0), 0), kDistanceSentinel);
}

TEST(MinSeparation, MatchesBruteForceWithExclusion) {
  const std::vector<Obstacle> obs = {{Vec2(3, 3), 1.0},
                                     {Vec2(7, 4), 0.5},
                                     {Vec2(5, 9), 2.0}};
  const EnvironmentMap map(Bounds{}, obs);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const Vec2 p(u(rng), u(rng));
    EXPECT_DOUBLE_EQ(MinSeparation(map, p), BruteForceDistance(obs, p));
    for (int ex = 0; ex < 3; ++ex) {
      EXPECT_DOUBLE_EQ(MinSeparation(map, p, ex), BruteForceDistance(obs, p, ex));
    }
  }
}

TEST(EnvironmentMap, RejectsInvalidObstacles) {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNumerical;
  };
  EXPECT_EQ(code_of([] { EnvironmentMap(Bounds{}, {{Vec2(5, 5), 0.0}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { EnvironmentMap(Bounds{}, {{Vec2(25, 5), 1.0}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              EnvironmentMap(Bounds{}, {{Vec2(NAN, 5), 1.0}});
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { EnvironmentMap(Bounds{}, {{Vec2(5, 5), 1.0}}, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(EnvironmentMap, AdversaryCopies) {
  const EnvironmentMap base(Bounds{}, {{Vec2(5, 5), 1.0}});
  const EnvironmentMap with = base.WithAdversary({Vec2(8, 8), 0.3});
  ASSERT_EQ(with.obstacles().size(), 2u);
  EXPECT_EQ(with.adversary_index(), 1);
  EXPECT_EQ(base.obstacles().size(), 1u);
  const EnvironmentMap without = with.Without(1);
  EXPECT_EQ(without.obstacles().size(), 1u);
  EXPECT_FALSE(without.adversary_index().has_value());
  // Static-only separation skips the adversary.
  EXPECT_DOUBLE_EQ(MinSeparation(with, Vec2(8, 8), with.adversary_index()),
                   MinSeparation(base, Vec2(8, 8)));
}

TEST(GenerateMap, DeterministicInSpec) {
  MapSpec spec = DefaultMapSpec(MapKind::kSparse, 7);
  spec.obstacle_count = 4;
  spec.radius_range = {0.5, 0.8};
  std::ostringstream a, b;
  WriteMap(a, GenerateMap(spec));
  WriteMap(b, GenerateMap(spec));
  EXPECT_EQ(a.str(), b.str());
  spec.seed = 8;
  std::ostringstream c;
  WriteMap(c, GenerateMap(spec));
  EXPECT_NE(a.str(), c.str());
}

TEST(GenerateMap, DenseMapPostconditions) {
  MapSpec spec = DefaultMapSpec(MapKind::kDense, 1);
  EXPECT_EQ(spec.obstacle_count, 30);
  EXPECT_EQ(spec.radius_range, std::make_pair(0.4, 0.7));
  const EnvironmentMap map = GenerateMap(spec);
  ASSERT_EQ(map.obstacles().size(), 30u);
  const double r_max = spec.radius_range.second;
  for (size_t i = 0; i < map.obstacles().size(); ++i) {
    const Obstacle& o = map.obstacles()[i];
    EXPECT_TRUE(spec.bounds.Contains(o.center));
    EXPECT_GE(o.radius, 0.4);
    EXPECT_LE(o.radius, 0.7);
    EXPECT_GE((o.center - spec.start).norm() - o.radius, 2.0 * r_max);
    EXPECT_GE((o.center - spec.goal).norm() - o.radius, 2.0 * r_max);
    for (size_t j = 0; j < i; ++j) {
      const Obstacle& p = map.obstacles()[j];
      EXPECT_GE((o.center - p.center).norm(), o.radius + p.radius);
    }
  }
}

TEST(GenerateMap, SparseDefaults) {
  const MapSpec spec = DefaultMapSpec(MapKind::kSparse, 2);
  EXPECT_EQ(spec.obstacle_count, 4);
  EXPECT_EQ(GenerateMap(spec).obstacles().size(), 4u);
}

TEST(GenerateMap, ZeroObstaclesIsEmpty) {
  MapSpec spec = DefaultMapSpec(MapKind::kSparse, 3);
  spec.obstacle_count = 0;
  const EnvironmentMap map = GenerateMap(spec);
  EXPECT_TRUE(map.obstacles().empty());
  EXPECT_EQ(SignedDistance(map, Vec2(4, 4)).distance, kDistanceSentinel);
}

TEST(GenerateMap, ImpossibleSpecFails) {
  MapSpec spec = DefaultMapSpec(MapKind::kDense, 4);
  spec.obstacle_count = 500;
  spec.radius_range = {2.0, 3.0};
  try {
    GenerateMap(spec);
    FAIL() << "expected generation failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGenerationFailure);
  }
}

TEST(GenerateMap, RejectsInvalidSpec) {
  MapSpec spec = DefaultMapSpec(MapKind::kDense, 4);
  spec.radius_range = {0.0, 1.0};
  EXPECT_THROW(GenerateMap(spec), Error);
  spec.radius_range = {1.0, 0.5};
  EXPECT_THROW(GenerateMap(spec), Error);
  spec = DefaultMapSpec(MapKind::kDense, 4);
  spec.obstacle_count = -1;
  EXPECT_THROW(GenerateMap(spec), Error);
}

TEST(MapKind, ParseRoundTrip) {
  EXPECT_EQ(ParseMapKind(ToString(MapKind::kSparse)), MapKind::kSparse);
  EXPECT_EQ(ParseMapKind(ToString(MapKind::kDense)), MapKind::kDense);
  EXPECT_THROW(ParseMapKind("medium"), Error);
}

TEST(MapIo, RoundTripIsExact) {
  const EnvironmentMap map = GenerateMap(DefaultMapSpec(MapKind::kDense, 12));
  std::stringstream buffer;
  WriteMap(buffer, map);
  const std::string text = buffer.str();
  EXPECT_EQ(text.rfind("bounds 0 0 20 20\n", 0), 0u);
  const EnvironmentMap back = ReadMap(buffer);
  ASSERT_EQ(back.obstacles().size(), map.obstacles().size());
  for (size_t i = 0; i < map.obstacles().size(); ++i) {
    EXPECT_EQ(back.obstacles()[i].center, map.obstacles()[i].center);
    EXPECT_EQ(back.obstacles()[i].radius, map.obstacles()[i].radius);
  }
  EXPECT_EQ(back.bounds().max, map.bounds().max);
}

TEST(MapIo, MalformedInputIsIoError) {
  std::istringstream bad("bounds 0 0 20\n");
  try {
    ReadMap(bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  std::istringstream bad_row("bounds 0 0 20 20\n1 2\n");
  EXPECT_THROW(ReadMap(bad_row), Error);
}

TEST(SegmentClearance, Examples) {
  const EnvironmentMap map(Bounds{}, {{Vec2(10, 10), 1.0}});
  EXPECT_DOUBLE_EQ(SegmentClearance(map, Vec2(5, 12), Vec2(15, 12)), 1.0);
  EXPECT_DOUBLE_EQ(SegmentClearance(map, Vec2(5, 10), Vec2(15, 10)), -1.0);
  // Both endpoints clear, middle inside.
  EXPECT_GT(SignedDistance(map, Vec2(8, 10)).distance, 0.0);
  EXPECT_GT(SignedDistance(map, Vec2(12, 10)).distance, 0.0);
  EXPECT_LT(SegmentClearance(map, Vec2(8, 10), Vec2(12, 10)), 0.0);
  // The closest point is an endpoint.
  EXPECT_DOUBLE_EQ(SegmentClearance(map, Vec2(13, 10), Vec2(16, 10)), 2.0);
  EXPECT_DOUBLE_EQ(SegmentClearance(map, Vec2(13, 10), Vec2(13, 10)), 2.0);
  EXPECT_EQ(SegmentClearance(EnvironmentMap(), Vec2(0, 0), Vec2(1, 1)),
            kDistanceSentinel);
}

TEST(SegmentClearance, MatchesDenseSampling) {
  std::mt19937_64 rng(77);
  const EnvironmentMap map = GenerateMap(DefaultMapSpec(MapKind::kDense, 2));
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 a(u(rng), u(rng)), b(u(rng), u(rng));
    double sampled = kDistanceSentinel;
    for (int i = 0; i <= 20000; ++i) {
      const Vec2 p = a + (b - a) * (i / 20000.0);
      for (const Obstacle& o : map.obstacles()) {
        sampled = std::min(sampled, (p - o.center).norm() - o.radius);
      }
    }
    const double got = SegmentClearance(map, a, b);
    EXPECT_LE(got, sampled + 1e-12);
    EXPECT_NEAR(got, sampled, 1e-6 + (b - a).norm() / 20000.0);
  }
}

}  // namespace
}  // namespace advplan
