#include "wmd/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmd/kinematics.hpp"

namespace wmd
{
    PlanMode resolve_mode(const VehicleSpec &spec, ModeOverride override_mode) noexcept
    {
        switch (override_mode)
        {
        case ModeOverride::Weighted:
            return PlanMode::Weighted;
        case ModeOverride::Classical:
            return PlanMode::Classical;
        case ModeOverride::Auto:
            break;
        }
        return spec.mu_sum() < kClassicalPenaltyThreshold ? PlanMode::Classical : PlanMode::Weighted;
    }

    std::vector<PathCandidate> solve_ccc(Family family, const Configuration &goal, const VehicleSpec &spec,
                                         const SolveOptions &opts)
    {
        int dir = 0;
        if (family == Family::LRL)
            dir = +1;
        else if (family == Family::RLR)
            dir = -1;
        else
            throw std::invalid_argument("solve_ccc: not a CCC family");

        std::vector<PathCandidate> out;
        const double r_out = dir > 0 ? spec.r_left : spec.r_right;
        const double r_mid = dir > 0 ? spec.r_right : spec.r_left;
        const double c1x = 0.0;
        const double c1y = dir * r_out;
        const double gs = std::sin(goal.heading());
        const double gc = std::cos(goal.heading());
        const double c3x = goal.x() - dir * r_out * gs;
        const double c3y = goal.y() + dir * r_out * gc;
        const double dx = c3x - c1x;
        const double dy = c3y - c1y;
        const double dist = std::hypot(dx, dy);
        const double reach = r_out + r_mid;
        if (dist == 0.0 || dist > 2.0 * reach + opts.closure_tolerance(goal))
            return out;

        const double base = std::atan2(dy, dx);
        const double spread = std::acos(std::min(1.0, dist / (2.0 * reach)));
        for (double side : {+1.0, -1.0})
        {
            const double to_mid = base + side * spread;
            const double c2x = c1x + reach * std::cos(to_mid);
            const double c2y = c1y + reach * std::sin(to_mid);
            const double a = dir * (to_mid + dir * 0.5 * kPi);
            const double from_mid_1 = std::atan2(c1y - c2y, c1x - c2x);
            const double from_mid_3 = std::atan2(c3y - c2y, c3x - c2x);
            const double b = normalize_angle(-dir * (from_mid_3 - from_mid_1));
            const double c = dir * goal.heading() - a + b;
            if (!(b > kPi))
                continue;
            const SegmentKind outer = dir > 0 ? SegmentKind::L : SegmentKind::R;
            const SegmentKind inner = dir > 0 ? SegmentKind::R : SegmentKind::L;
            if (auto cand = detail::make_candidate(family, {{outer, a}, {inner, b}, {outer, c}}, goal, spec, opts))
                detail::push_unique(out, std::move(*cand));
        }
        return out;
    }

    std::vector<PathCandidate> solve_family(Family family, const Configuration &goal, const VehicleSpec &spec,
                                            const SolveOptions &opts, SolverStats *stats)
    {
        auto only = [family](std::vector<PathCandidate> v) {
            std::erase_if(v, [family](const PathCandidate &c) { return c.family != family; });
            return v;
        };
        switch (family)
        {
        case Family::S:
        case Family::L:
        case Family::R:
            return only(solve_one_segment(goal, spec, opts));
        case Family::LS:
        case Family::SL:
        case Family::RS:
        case Family::SR:
        case Family::LR:
        case Family::RL:
            return only(solve_two_segment(goal, spec, opts));
        case Family::LSL:
        case Family::LSR:
        case Family::RSL:
        case Family::RSR:
            return solve_csc(family, goal, spec, opts);
        case Family::SLS:
        case Family::SRS:
            return solve_scs(family, goal, spec, opts);
        case Family::LSRS:
        case Family::SRSL:
        case Family::RSLS:
        case Family::SLSR:
            return solve_four_segment(family, goal, spec, opts, stats);
        case Family::LSRSL:
        case Family::RSLSR:
            return solve_five_segment(family, goal, spec, opts, stats);
        case Family::LRL:
        case Family::RLR:
            return solve_ccc(family, goal, spec, opts);
        }
        return {};
    }

    namespace
    {
        void collect(const PlanRequest &req, const Configuration &local, PlanMode mode, const SolveOptions &opts,
                     PlanResult &result)
        {
            const auto family_set = mode == PlanMode::Weighted ? weighted_families() : classical_families();
            std::vector<Family> wanted;
            for (Family f : family_set)
                if (req.families.empty() || std::find(req.families.begin(), req.families.end(), f) != req.families.end())
                    wanted.push_back(f);

            auto wants = [&](Family f) { return std::find(wanted.begin(), wanted.end(), f) != wanted.end(); };

            SolverStats stats;
            std::vector<PathCandidate> found;
            auto take = [&](std::vector<PathCandidate> v) {
                for (auto &c : v)
                    if (wants(c.family))
                        found.push_back(std::move(c));
            };

            // One- and two-segment solvers produce several families at once.
            bool one_done = false;
            bool two_done = false;
            for (Family f : wanted)
            {
                ++result.diagnostics.families_evaluated;
                const auto name = family_name(f);
                if (name.size() == 1)
                {
                    if (!one_done)
                        take(solve_one_segment(local, req.spec, opts));
                    one_done = true;
                }
                else if (name.size() == 2)
                {
                    if (!two_done)
                        take(solve_two_segment(local, req.spec, opts));
                    two_done = true;
                }
                else
                {
                    take(solve_family(f, local, req.spec, opts, &stats));
                }
            }
            result.diagnostics.lambda_samples += stats.lambda_samples;
            result.diagnostics.root_refinements += stats.root_refinements;
            result.diagnostics.solver_iterations += stats.iterations;

            for (auto &c : found)
                c.residual = closure_residual(req.start, req.goal, c.segments, req.spec);
            result.all_candidates = std::move(found);
        }

        void select_best(PlanResult &result)
        {
            std::stable_sort(result.all_candidates.begin(), result.all_candidates.end(),
                             [](const PathCandidate &a, const PathCandidate &b) {
                                 if (a.family != b.family)
                                     return static_cast<int>(a.family) < static_cast<int>(b.family);
                                 return a.cost < b.cost;
                             });
            result.best.reset();
            for (const auto &c : result.all_candidates)
                if (!result.best || candidate_precedes(c, *result.best))
                    result.best = c;
        }
    } // namespace

    PlanResult plan(const PlanRequest &req)
    {
        req.spec.validate();
        req.options.validate();

        PlanResult result;
        result.mode = resolve_mode(req.spec, req.mode_override);
        const Configuration local = to_canonical(req.start, req.goal);

        SolveOptions opts = req.options;
        opts.enforce_turn_bounds = result.mode == PlanMode::Weighted;

        // Coincident start and goal: the empty path.
        auto trivial = solve_one_segment(local, req.spec, opts);
        if (trivial.size() == 1 && trivial.front().segments.empty())
        {
            trivial.front().residual = closure_residual(req.start, req.goal, {}, req.spec);
            result.all_candidates = std::move(trivial);
            result.diagnostics.families_evaluated = 1;
            select_best(result);
            return result;
        }

        collect(req, local, result.mode, opts, result);
        select_best(result);

        if (!result.best && result.mode == PlanMode::Weighted)
        {
            opts.lambda_grid *= 4;
            opts.lambda_max *= 20.0;
            result.diagnostics.widened_retry = true;
            collect(req, local, result.mode, opts, result);
            select_best(result);
        }
        return result;
    }

    std::pair<double, double> cost_monotonicity_probe(const PlanRequest &req, double delta_mu)
    {
        if (!(delta_mu >= 0.0) || !std::isfinite(delta_mu))
            throw std::invalid_argument("cost_monotonicity_probe: delta_mu must be non-negative");
        const PlanResult low = plan(req);
        PlanRequest raised = req;
        raised.spec.mu_left += delta_mu;
        raised.spec.mu_right += delta_mu;
        const PlanResult high = plan(raised);
        if (!low.best || !high.best)
            throw std::runtime_error("cost_monotonicity_probe: no path");
        return {low.best->cost, high.best->cost};
    }

} // namespace wmd
