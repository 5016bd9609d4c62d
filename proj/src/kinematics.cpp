#include "wmd/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmd
{
    namespace
    {
        // Unwrapped-heading pose used internally so long arc chains do not
        // pick up normalisation round-off at every step.
        struct RawPose
        {
            double x, y, h;
        };

        RawPose advance(const RawPose &p, SegmentKind kind, double measure, const VehicleSpec &spec)
        {
            switch (kind)
            {
            case SegmentKind::S:
                return {p.x + measure * std::cos(p.h), p.y + measure * std::sin(p.h), p.h};
            case SegmentKind::L:
            {
                const double r = spec.r_left;
                const double cx = p.x - r * std::sin(p.h);
                const double cy = p.y + r * std::cos(p.h);
                const double h = p.h + measure;
                return {cx + r * std::sin(h), cy - r * std::cos(h), h};
            }
            case SegmentKind::R:
            {
                const double r = spec.r_right;
                const double cx = p.x + r * std::sin(p.h);
                const double cy = p.y - r * std::cos(p.h);
                const double h = p.h - measure;
                return {cx - r * std::sin(h), cy + r * std::cos(h), h};
            }
            }
            return p;
        }
    } // namespace

    Point2 turn_center(const Configuration &c, SegmentKind kind, const VehicleSpec &spec)
    {
        const double s = std::sin(c.heading());
        const double co = std::cos(c.heading());
        if (kind == SegmentKind::L)
            return {c.x() - spec.r_left * s, c.y() + spec.r_left * co};
        if (kind == SegmentKind::R)
            return {c.x() + spec.r_right * s, c.y() - spec.r_right * co};
        return {c.x(), c.y()};
    }

    Configuration propagate_segment(const Configuration &c, const Segment &seg, const VehicleSpec &spec)
    {
        const RawPose p = advance({c.x(), c.y(), c.heading()}, seg.kind, seg.measure, spec);
        return {p.x, p.y, p.h};
    }

    Configuration propagate_path(const Configuration &c, std::span<const Segment> segments, const VehicleSpec &spec)
    {
        RawPose p{c.x(), c.y(), c.heading()};
        for (const auto &s : segments)
            p = advance(p, s.kind, s.measure, spec);
        return {p.x, p.y, p.h};
    }

    Residual closure_residual(const Configuration &start, const Configuration &goal, std::span<const Segment> segments,
                              const VehicleSpec &spec)
    {
        const Configuration end = propagate_path(start, segments, spec);
        return {end.x() - goal.x(), end.y() - goal.y(), wrap_to_pi(end.heading() - goal.heading())};
    }

    Polyline sample_path(const Configuration &start, std::span<const Segment> segments, const VehicleSpec &spec,
                         double step)
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw std::invalid_argument("sample_path: step must be positive");

        Polyline out;
        RawPose p{start.x(), start.y(), start.heading()};
        double s_acc = 0.0;
        double c_acc = 0.0;
        out.points.push_back({p.x, p.y});
        out.arc_length.push_back(0.0);
        out.cumulative_cost.push_back(0.0);

        for (const auto &seg : segments)
        {
            double radius = 1.0;
            if (seg.kind == SegmentKind::L)
                radius = spec.r_left;
            else if (seg.kind == SegmentKind::R)
                radius = spec.r_right;
            const double length = seg.measure * radius;
            if (length <= 0.0)
                continue;
            const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(length / step - 1e-12)));
            const double seg_cost = segment_cost(seg, spec);
            for (std::size_t i = 1; i <= pieces; ++i)
            {
                const double frac = static_cast<double>(i) / static_cast<double>(pieces);
                const RawPose q = advance(p, seg.kind, seg.measure * frac, spec);
                out.points.push_back({q.x, q.y});
                out.arc_length.push_back(s_acc + length * frac);
                out.cumulative_cost.push_back(c_acc + seg_cost * frac);
            }
            p = advance(p, seg.kind, seg.measure, spec);
            s_acc += length;
            c_acc += seg_cost;
            out.arc_length.back() = s_acc;
            out.cumulative_cost.back() = c_acc;
        }
        return out;
    }

} // namespace wmd
