#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "wmd/kinematics.hpp"

using namespace wmd;

namespace
{
    void expect_conf(const Configuration &c, double x, double y, double h, double tol = 1e-12)
    {
        EXPECT_NEAR(c.x(), x, tol);
        EXPECT_NEAR(c.y(), y, tol);
        EXPECT_NEAR(std::abs(wrap_to_pi(c.heading() - h)), 0.0, tol);
    }

    const VehicleSpec kUnit{1.0, 1.0, 0.0, 0.0};
} // namespace

TEST(PropagateSegment, Examples)
{
    expect_conf(propagate_segment({0, 0, 0}, Segment::straight(2.5), kUnit), 2.5, 0, 0);
    expect_conf(propagate_segment({0, 0, 0}, Segment::left(kPi / 2), kUnit), 1, 1, kPi / 2);
    expect_conf(propagate_segment({0, 0, 0}, Segment::right(kPi), kUnit), 0, -2, kPi);
}

TEST(PropagatePath, Examples)
{
    expect_conf(propagate_path({0, 0, 0}, {}, kUnit), 0, 0, 0);
    const std::vector<Segment> lsl{Segment::left(deg_to_rad(90)), Segment::straight(4), Segment::left(deg_to_rad(270))};
    expect_conf(propagate_path({0, 0, 0}, lsl, kUnit), 0, 4, 0);
    const std::vector<Segment> lr{Segment::left(kPi / 2), Segment::right(kPi / 2)};
    expect_conf(propagate_path({0, 0, 0}, lr, kUnit), 2, 2, 0);
}

TEST(ClosureResidual, Examples)
{
    const std::vector<Segment> lr{Segment::left(kPi / 2), Segment::right(kPi / 2)};
    const Residual zero = closure_residual({0, 0, 0}, {2, 2, 0}, lr, kUnit);
    EXPECT_NEAR(zero.norm(1.0), 0.0, 1e-12);

    const std::vector<Segment> short_r{Segment::left(kPi / 2), Segment::right(deg_to_rad(80))};
    const Residual r = closure_residual({0, 0, 0}, {2, 2, 0}, short_r, kUnit);
    EXPECT_NEAR(r.dtheta, deg_to_rad(10), 1e-12);
    EXPECT_GT(std::hypot(r.dx, r.dy), 1e-3);
}

TEST(SamplePath, Examples)
{
    const Polyline s = sample_path({0, 0, 0}, std::vector<Segment>{Segment::straight(1.0)}, kUnit, 0.5);
    ASSERT_EQ(s.points.size(), 3U);
    EXPECT_NEAR(s.points[1].x, 0.5, 1e-15);
    EXPECT_NEAR(s.points[2].x, 1.0, 1e-15);

    const Polyline a = sample_path({0, 0, 0}, std::vector<Segment>{Segment::left(kPi)}, kUnit, 100.0);
    ASSERT_GE(a.points.size(), 2U);
    EXPECT_NEAR(a.points.front().x, 0.0, 1e-15);
    EXPECT_NEAR(a.points.back().x, 0.0, 1e-12);
    EXPECT_NEAR(a.points.back().y, 2.0, 1e-12);

    EXPECT_THROW(sample_path({0, 0, 0}, std::vector<Segment>{}, kUnit, 0.0), std::invalid_argument);
    EXPECT_THROW(sample_path({0, 0, 0}, std::vector<Segment>{}, kUnit, -1.0), std::invalid_argument);
}

TEST(SamplePath, SpacingAndCost)
{
    const VehicleSpec spec{0.8, 1.7, 0.6, 1.2};
    const std::vector<Segment> segs{Segment::left(1.3), Segment::straight(2.2), Segment::right(4.0),
                                    Segment::straight(0.0), Segment::left(0.2)};
    const double step = 0.05;
    const Polyline p = sample_path({1, -2, 0.4}, segs, spec, step);
    ASSERT_EQ(p.points.size(), p.arc_length.size());
    ASSERT_EQ(p.points.size(), p.cumulative_cost.size());
    for (std::size_t i = 1; i < p.points.size(); ++i)
    {
        ASSERT_LE(p.arc_length[i] - p.arc_length[i - 1], step + 1e-12);
        ASSERT_GE(p.cumulative_cost[i], p.cumulative_cost[i - 1]);
        // chord never longer than the arc it spans
        ASSERT_LE(std::hypot(p.points[i].x - p.points[i - 1].x, p.points[i].y - p.points[i - 1].y),
                  p.arc_length[i] - p.arc_length[i - 1] + 1e-12);
    }
    EXPECT_NEAR(p.cumulative_cost.back(), path_cost(segs, spec), 1e-12);
    const Configuration end = propagate_path({1, -2, 0.4}, segs, spec);
    EXPECT_NEAR(p.points.back().x, end.x(), 1e-12);
    EXPECT_NEAR(p.points.back().y, end.y(), 1e-12);
}

TEST(TurnCenter, LeftAndRight)
{
    const VehicleSpec spec{2.0, 0.5, 0.0, 0.0};
    const Point2 l = turn_center({1, 1, kPi / 2}, SegmentKind::L, spec);
    EXPECT_NEAR(l.x, -1.0, 1e-12);
    EXPECT_NEAR(l.y, 1.0, 1e-12);
    const Point2 r = turn_center({1, 1, kPi / 2}, SegmentKind::R, spec);
    EXPECT_NEAR(r.x, 1.5, 1e-12);
    EXPECT_NEAR(r.y, 1.0, 1e-12);
}

class KinematicsProperties : public ::testing::Test
{
protected:
    std::mt19937_64 rng{2024};
    std::uniform_real_distribution<double> pos{-20.0, 20.0};
    std::uniform_real_distribution<double> ang{0.0, kTwoPi};
    std::uniform_real_distribution<double> rad{0.3, 3.0};
    std::uniform_real_distribution<double> len{0.0, 5.0};
    std::uniform_int_distribution<int> kind{0, 2};

    std::vector<Segment> random_path(int n)
    {
        std::vector<Segment> segs;
        for (int i = 0; i < n; ++i)
        {
            const auto k = static_cast<SegmentKind>(kind(rng));
            segs.push_back({k, k == SegmentKind::S ? len(rng) : ang(rng)});
        }
        return segs;
    }
};

TEST_F(KinematicsProperties, ReversalReturnsToStart)
{
    for (int i = 0; i < 500; ++i)
    {
        const VehicleSpec spec{rad(rng), rad(rng), 0.0, 0.0};
        const Configuration c(pos(rng), pos(rng), ang(rng));
        const auto k = static_cast<SegmentKind>(kind(rng));
        const Segment seg{k, k == SegmentKind::S ? len(rng) : ang(rng)};
        const Configuration end = propagate_segment(c, seg, spec);
        // drive back along the same curve with the heading flipped: a left arc becomes a right arc
        const Configuration flipped(end.x(), end.y(), end.heading() + kPi);
        const SegmentKind back_kind = k == SegmentKind::L ? SegmentKind::R : k == SegmentKind::R ? SegmentKind::L
                                                                                                 : SegmentKind::S;
        VehicleSpec back_spec = spec;
        std::swap(back_spec.r_left, back_spec.r_right);
        const Configuration back = propagate_segment(flipped, {back_kind, seg.measure}, back_spec);
        ASSERT_NEAR(back.x(), c.x(), 1e-12 * std::max(1.0, std::abs(c.x())) * 10);
        ASSERT_NEAR(back.y(), c.y(), 1e-12 * std::max(1.0, std::abs(c.y())) * 10);
        ASSERT_NEAR(std::abs(wrap_to_pi(back.heading() - c.heading() - kPi)), 0.0, 1e-12);
    }
}

TEST_F(KinematicsProperties, RigidMotionEquivariance)
{
    for (int i = 0; i < 500; ++i)
    {
        const VehicleSpec spec{rad(rng), rad(rng), 0.0, 0.0};
        const auto segs = random_path(5);
        const Configuration c(pos(rng), pos(rng), ang(rng));
        const Configuration t(pos(rng), pos(rng), ang(rng)); // T as a pose: rotate by heading, then translate
        const Configuration tc = from_canonical(t, c);
        const Configuration lhs = propagate_path(tc, segs, spec);
        const Configuration rhs = from_canonical(t, propagate_path(c, segs, spec));
        ASSERT_NEAR(lhs.x(), rhs.x(), 1e-10);
        ASSERT_NEAR(lhs.y(), rhs.y(), 1e-10);
        ASSERT_NEAR(std::abs(wrap_to_pi(lhs.heading() - rhs.heading())), 0.0, 1e-10);
    }
}

TEST_F(KinematicsProperties, MirrorSymmetry)
{
    for (int i = 0; i < 500; ++i)
    {
        const VehicleSpec spec{rad(rng), rad(rng), 0.0, 0.0};
        const auto segs = random_path(5);
        std::vector<Segment> mirrored;
        for (const auto &s : segs)
            mirrored.push_back({s.kind == SegmentKind::L ? SegmentKind::R
                                : s.kind == SegmentKind::R ? SegmentKind::L
                                                           : SegmentKind::S,
                                s.measure});
        const Configuration c(pos(rng), pos(rng), ang(rng));
        const Configuration e = propagate_path(c, segs, spec);
        const Configuration m = propagate_path({c.x(), -c.y(), -c.heading()}, mirrored, spec.mirrored());
        ASSERT_NEAR(m.x(), e.x(), 1e-10);
        ASSERT_NEAR(m.y(), -e.y(), 1e-10);
        ASSERT_NEAR(std::abs(wrap_to_pi(m.heading() + e.heading())), 0.0, 1e-10);
    }
}

TEST_F(KinematicsProperties, Scaling)
{
    std::uniform_real_distribution<double> kd(0.1, 10.0);
    for (int i = 0; i < 500; ++i)
    {
        const double k = kd(rng);
        const VehicleSpec spec{rad(rng), rad(rng), 0.0, 0.0};
        auto segs = random_path(5);
        const Configuration c(pos(rng), pos(rng), ang(rng));
        const Configuration e = propagate_path(c, segs, spec);
        for (auto &s : segs)
            if (!s.is_arc())
                s.measure *= k;
        const Configuration ks = propagate_path({k * c.x(), k * c.y(), c.heading()}, segs,
                                                {k * spec.r_left, k * spec.r_right, 0.0, 0.0});
        ASSERT_NEAR(ks.x(), k * e.x(), 1e-9 * k);
        ASSERT_NEAR(ks.y(), k * e.y(), 1e-9 * k);
        ASSERT_NEAR(std::abs(wrap_to_pi(ks.heading() - e.heading())), 0.0, 1e-10);
    }
}
