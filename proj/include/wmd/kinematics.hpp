#pragma once
/**
 * @file   kinematics.hpp
 * @brief  Closed-form propagation of poses along L/R/S segments.
 *
 * Arcs are propagated as exact rotations about the turning-circle center;
 * there is no numerical integration anywhere in this module.
 */

#include <span>
#include <vector>

#include "wmd/core.hpp"

namespace wmd
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    /// Sampled path geometry. All vectors have the same length.
    struct Polyline
    {
        std::vector<Point2> points;
        std::vector<double> arc_length;
        std::vector<double> cumulative_cost;
    };

    Configuration propagate_segment(const Configuration &c, const Segment &seg, const VehicleSpec &spec);
    Configuration propagate_path(const Configuration &c, std::span<const Segment> segments, const VehicleSpec &spec);

    /// propagate_path(start, segments) - goal, heading difference wrapped to (-pi, pi].
    Residual closure_residual(const Configuration &start, const Configuration &goal, std::span<const Segment> segments,
                              const VehicleSpec &spec);

    /// Samples every segment at arc-length spacing <= step, always including segment endpoints.
    /// Throws std::invalid_argument when step is not positive.
    Polyline sample_path(const Configuration &start, std::span<const Segment> segments, const VehicleSpec &spec,
                         double step);

    /// Center of the turning circle for a turn of the given kind entered at pose c.
    Point2 turn_center(const Configuration &c, SegmentKind kind, const VehicleSpec &spec);

} // namespace wmd
