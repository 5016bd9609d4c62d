#include "wmd/family_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "wmd/kinematics.hpp"

namespace wmd
{
    LambdaParam::LambdaParam(double value) : value_(value)
    {
        if (!(value > 1.0) || !std::isfinite(value))
            throw std::domain_error("lambda must be finite and greater than one");
    }

    void SolveOptions::validate() const
    {
        if (!(tol_closure > 0.0) || !(tol_root > 0.0) || !(tol_angle > 0.0) || lambda_grid < 2 || angle_grid < 1 ||
            max_iters < 1)
            throw std::invalid_argument("SolveOptions: tolerances and grid sizes must be positive");
        if (!(lambda_min > 1.0) || !(lambda_max > lambda_min))
            throw std::invalid_argument("SolveOptions: lambda range must satisfy 1 < lambda_min < lambda_max");
    }

    double SolveOptions::closure_tolerance(const Configuration &canonical_goal) const noexcept
    {
        return tol_closure * std::max(1.0, std::hypot(canonical_goal.x(), canonical_goal.y()));
    }

    double mid_turn_angle_from_lambda(LambdaParam p) { return kTwoPi - 2.0 * std::acos(1.0 / p.value()); }

    LambdaParam lambda_from_mid_turn_angle(double phi)
    {
        if (!(phi > kPi) || !(phi < kTwoPi))
            throw std::domain_error("interior turn angle must lie in (pi, 2pi)");
        const double c = std::cos(0.5 * phi);
        if (!(c < 0.0))
            throw std::domain_error("interior turn angle too close to pi");
        return LambdaParam(-1.0 / c);
    }

    double junction_s_length(LambdaParam p, const VehicleSpec &spec)
    {
        const double l = p.value();
        return spec.mu_sum() / std::sqrt((l - 1.0) * (l + 1.0));
    }

    namespace
    {
        struct Vec2
        {
            double x = 0.0;
            double y = 0.0;
        };

        Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
        Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
        Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
        double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
        double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
        double norm(Vec2 a) { return std::hypot(a.x, a.y); }
        double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
        Vec2 unit(double h) { return {std::cos(h), std::sin(h)}; }
        /// Left normal of the heading direction.
        Vec2 left_normal(double h) { return {-std::sin(h), std::cos(h)}; }

        /// Turn direction: +1 for L, -1 for R.
        SegmentKind turn_kind(int dir) { return dir > 0 ? SegmentKind::L : SegmentKind::R; }
        double turn_radius(int dir, const VehicleSpec &spec) { return dir > 0 ? spec.r_left : spec.r_right; }

        struct Pose
        {
            Vec2 p;
            double h = 0.0;
        };

        Pose drive_line(const Pose &q, double length) { return {q.p + length * unit(q.h), q.h}; }

        Pose drive_turn(const Pose &q, int dir, double angle, const VehicleSpec &spec)
        {
            const double sr = dir * turn_radius(dir, spec);
            const Vec2 center = q.p + sr * left_normal(q.h);
            const double h = q.h + dir * angle;
            return {center - sr * left_normal(h), h};
        }

        Vec2 goal_position(const Configuration &g) { return {g.x(), g.y()}; }

        /// Center of the turning circle of direction dir that ends at the goal.
        Vec2 goal_center(const Configuration &g, int dir, const VehicleSpec &spec)
        {
            return goal_position(g) + (dir * turn_radius(dir, spec)) * left_normal(g.heading());
        }

        /// Log-uniform sweep of a scalar residual over the lambda range followed by bracketed
        /// refinement of sign changes and minimisation of touching (double) roots.
        std::vector<double> sweep_lambda_roots(const std::function<double(double)> &f, const SolveOptions &opts,
                                               double touch_tol, SolverStats *stats)
        {
            const int n = std::max(2, opts.lambda_grid * opts.angle_grid);
            const double lo = std::log(opts.lambda_min);
            const double hi = std::log(opts.lambda_max);
            std::vector<double> lam(static_cast<std::size_t>(n));
            std::vector<double> val(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
            {
                lam[i] = std::exp(lo + (hi - lo) * i / (n - 1));
                val[i] = f(lam[i]);
            }
            if (stats)
                stats->lambda_samples += static_cast<std::size_t>(n);

            std::vector<double> roots;
            const auto max_iter = static_cast<std::uintmax_t>(std::max(1, opts.max_iters));
            for (int i = 0; i + 1 < n; ++i)
            {
                const double a = val[i];
                const double b = val[i + 1];
                if (!std::isfinite(a) || !std::isfinite(b))
                    continue;
                if (a == 0.0)
                {
                    roots.push_back(lam[i]);
                    continue;
                }
                if ((a < 0.0) != (b < 0.0) && b != 0.0)
                {
                    std::uintmax_t it = max_iter;
                    const auto [x0, x1] = boost::math::tools::toms748_solve(
                        f, lam[i], lam[i + 1], a, b, boost::math::tools::eps_tolerance<double>(52), it);
                    roots.push_back(0.5 * (x0 + x1));
                    if (stats)
                    {
                        ++stats->root_refinements;
                        stats->iterations += static_cast<std::size_t>(it);
                    }
                }
            }
            // Tangential roots do not change sign; look for local minima of |f| close to zero.
            for (int i = 1; i + 1 < n; ++i)
            {
                const double a = std::abs(val[i - 1]);
                const double b = std::abs(val[i]);
                const double c = std::abs(val[i + 1]);
                if (!(b <= a && b <= c))
                    continue;
                if ((val[i - 1] < 0.0) != (val[i] < 0.0) || (val[i] < 0.0) != (val[i + 1] < 0.0))
                    continue;
                if (b > 1e3 * touch_tol + 1e-2 * std::max(a, c))
                    continue;
                std::uintmax_t it = max_iter;
                const auto [xm, fm] = boost::math::tools::brent_find_minima(
                    [&](double x) { return std::abs(f(x)); }, lam[i - 1], lam[i + 1], 52, it);
                if (stats)
                {
                    ++stats->root_refinements;
                    stats->iterations += static_cast<std::size_t>(it);
                }
                if (fm <= touch_tol)
                    roots.push_back(xm);
            }
            return roots;
        }

        bool arc_within_half_turn(const Segment &s, const SolveOptions &opts)
        {
            return s.degenerate() || s.measure <= kPi + opts.tol_angle;
        }
    } // namespace

    namespace detail
    {
        std::optional<PathCandidate> make_candidate(Family family, std::vector<Segment> segments,
                                                    const Configuration &goal, const VehicleSpec &spec,
                                                    const SolveOptions &opts)
        {
            const double tol = opts.closure_tolerance(goal);
            for (auto &s : segments)
            {
                if (!std::isfinite(s.measure))
                    return std::nullopt;
                if (s.is_arc())
                {
                    s.measure = normalize_angle(s.measure);
                    if (kTwoPi - s.measure < kDegenerateMeasure)
                        s.measure = 0.0;
                }
                else if (s.measure < 0.0)
                {
                    if (s.measure < -tol)
                        return std::nullopt;
                    s.measure = 0.0;
                }
            }
            PathCandidate c;
            c.family = family;
            c.residual = closure_residual(Configuration{}, goal, segments, spec);
            if (!(c.residual.norm(spec.r_min()) <= tol))
                return std::nullopt;
            c.cost = path_cost(segments, spec);
            c.segments = std::move(segments);
            return c;
        }

        void push_unique(std::vector<PathCandidate> &out, PathCandidate c)
        {
            for (const auto &o : out)
            {
                if (o.family != c.family || o.segments.size() != c.segments.size())
                    continue;
                bool same = true;
                for (std::size_t i = 0; i < c.segments.size() && same; ++i)
                    same = std::abs(o.segments[i].measure - c.segments[i].measure) < 1e-6;
                if (same)
                    return;
            }
            out.push_back(std::move(c));
        }
    } // namespace detail

    using detail::make_candidate;
    using detail::push_unique;

    std::vector<PathCandidate> solve_one_segment(const Configuration &goal, const VehicleSpec &spec,
                                                 const SolveOptions &opts)
    {
        std::vector<PathCandidate> out;
        const double tol = opts.closure_tolerance(goal);
        if (std::abs(goal.x()) <= tol && std::abs(goal.y()) <= tol &&
            spec.r_min() * std::abs(wrap_to_pi(goal.heading())) <= tol)
        {
            if (auto c = make_candidate(Family::S, {}, goal, spec, opts))
                out.push_back(std::move(*c));
            return out;
        }
        if (auto c = make_candidate(Family::S, {Segment::straight(goal.x())}, goal, spec, opts))
            out.push_back(std::move(*c));
        if (auto c = make_candidate(Family::L, {Segment::left(goal.heading())}, goal, spec, opts))
            out.push_back(std::move(*c));
        if (auto c = make_candidate(Family::R, {Segment::right(-goal.heading())}, goal, spec, opts))
            out.push_back(std::move(*c));
        return out;
    }

    std::vector<PathCandidate> solve_two_segment(const Configuration &goal, const VehicleSpec &spec,
                                                 const SolveOptions &opts)
    {
        std::vector<PathCandidate> out;
        const Vec2 g = goal_position(goal);
        const double gh = goal.heading();

        // C then S, S then C
        for (int dir : {+1, -1})
        {
            const SegmentKind k = turn_kind(dir);
            const double arc = normalize_angle(dir * gh);
            const Pose after = drive_turn({}, dir, arc, spec);
            const double l_cs = dot(g - after.p, unit(gh));
            if (auto c = make_candidate(dir > 0 ? Family::LS : Family::RS, {{k, arc}, Segment::straight(l_cs)}, goal,
                                        spec, opts))
                push_unique(out, std::move(*c));

            const double l_sc = g.x - after.p.x;
            if (auto c = make_candidate(dir > 0 ? Family::SL : Family::SR, {Segment::straight(l_sc), {k, arc}}, goal,
                                        spec, opts))
                push_unique(out, std::move(*c));
        }

        // C then opposite C: the two circles must touch externally.
        for (int dir : {+1, -1})
        {
            const double r1 = turn_radius(dir, spec);
            const Vec2 c1{0.0, dir * r1};
            const Vec2 c2 = goal_center(goal, -dir, spec);
            const Vec2 v = c2 - c1;
            if (norm(v) == 0.0)
                continue;
            // Start point sits at angle -dir*pi/2 around c1; the turn advances it by dir*a.
            const double a = normalize_angle(dir * (angle_of(v) + dir * 0.5 * kPi));
            const double b = normalize_angle(-dir * (gh - dir * a));
            auto c = make_candidate(dir > 0 ? Family::LR : Family::RL,
                                    {{turn_kind(dir), a}, {turn_kind(-dir), b}}, goal, spec, opts);
            if (!c)
                continue;
            if (opts.enforce_turn_bounds &&
                !(arc_within_half_turn(c->segments[0], opts) && arc_within_half_turn(c->segments[1], opts)))
                continue;
            push_unique(out, std::move(*c));
        }
        return out;
    }

    std::vector<PathCandidate> solve_csc(Family family, const Configuration &goal, const VehicleSpec &spec,
                                         const SolveOptions &opts)
    {
        int d1 = 0;
        int d2 = 0;
        switch (family)
        {
        case Family::LSL:
            d1 = +1, d2 = +1;
            break;
        case Family::LSR:
            d1 = +1, d2 = -1;
            break;
        case Family::RSL:
            d1 = -1, d2 = +1;
            break;
        case Family::RSR:
            d1 = -1, d2 = -1;
            break;
        default:
            throw std::invalid_argument("solve_csc: not a CSC family");
        }

        std::vector<PathCandidate> out;
        const double s1 = d1 * turn_radius(d1, spec);
        const double s2 = d2 * turn_radius(d2, spec);
        const Vec2 c1{0.0, s1};
        const Vec2 c2 = goal_center(goal, d2, spec);
        const Vec2 v = c2 - c1;
        const double k = s2 - s1;
        const double dist2 = dot(v, v);
        const double tol = opts.closure_tolerance(goal);
        double l2 = dist2 - k * k;
        if (l2 < 0.0)
        {
            // circles overlap: no tangent of this orientation
            if (std::sqrt(dist2) < std::abs(k) - tol)
                return out;
            l2 = 0.0;
        }
        const double l = std::sqrt(l2);
        const double h = angle_of(v) - std::atan2(k, l);
        const double arc1 = d1 * h;
        const double arc2 = d2 * (goal.heading() - h);
        if (auto c = make_candidate(family, {{turn_kind(d1), arc1}, Segment::straight(l), {turn_kind(d2), arc2}}, goal,
                                    spec, opts))
            out.push_back(std::move(*c));
        return out;
    }

    std::vector<PathCandidate> solve_scs(Family family, const Configuration &goal, const VehicleSpec &spec,
                                         const SolveOptions &opts)
    {
        int dir = 0;
        if (family == Family::SLS)
            dir = +1;
        else if (family == Family::SRS)
            dir = -1;
        else
            throw std::invalid_argument("solve_scs: not an SCS family");

        std::vector<PathCandidate> out;
        const double arc = normalize_angle(dir * goal.heading());
        const double r = turn_radius(dir, spec);
        const double h = dir * arc;
        const double c = std::cos(h);
        const double s = std::sin(h);
        // [1 c; 0 s] has singular values sqrt(1 +- |c|)
        const double ac = std::min(std::abs(c), 1.0);
        if (1.0 - ac <= 0.0 || std::sqrt((1.0 + ac) / (1.0 - ac)) > 1e12)
            return out;

        const Vec2 turn_disp{r * std::sin(arc), dir * r * (1.0 - std::cos(arc))};
        const Vec2 rhs = goal_position(goal) - turn_disp;
        const double l2 = rhs.y / s;
        const double l1 = rhs.x - l2 * c;
        auto cand = make_candidate(family, {Segment::straight(l1), {turn_kind(dir), arc}, Segment::straight(l2)}, goal,
                                   spec, opts);
        if (!cand)
            return out;
        const auto &segs = cand->segments;
        if (opts.enforce_turn_bounds && !segs[0].degenerate() && !segs[2].degenerate())
        {
            const double phi = segs[1].measure;
            if (!(phi > kPi + opts.tol_angle) || !(phi < kTwoPi))
                return out;
        }
        out.push_back(std::move(*cand));
        return out;
    }

    std::vector<PathCandidate> solve_four_segment(Family family, const Configuration &goal, const VehicleSpec &spec,
                                                  const SolveOptions &opts, SolverStats *stats)
    {
        // Two shapes: turn-line-interior turn-free line (LSRS, RSLS) and
        // free line-interior turn-line-turn (SRSL, SLSR). dir is the outer turn.
        bool outer_first = false;
        int dir = 0;
        switch (family)
        {
        case Family::LSRS:
            outer_first = true, dir = +1;
            break;
        case Family::RSLS:
            outer_first = true, dir = -1;
            break;
        case Family::SRSL:
            outer_first = false, dir = +1;
            break;
        case Family::SLSR:
            outer_first = false, dir = -1;
            break;
        default:
            throw std::invalid_argument("solve_four_segment: not a four-segment family");
        }

        std::vector<PathCandidate> out;
        if (!(spec.mu_sum() > 0.0))
            return out;

        const Vec2 g = goal_position(goal);
        const double gh = goal.heading();
        const Vec2 ug = unit(gh);
        const double scale = std::max(1.0, norm(g));

        // Pose reached before the free line (outer first) or after a zero-length free line.
        auto constrained_part = [&](double lam) -> Pose {
            const LambdaParam p(lam);
            const double phi_mid = mid_turn_angle_from_lambda(p);
            const double lj = junction_s_length(p, spec);
            if (outer_first)
            {
                const double phi_out = dir * gh + phi_mid;
                Pose q = drive_turn({}, dir, phi_out, spec);
                q = drive_line(q, lj);
                return drive_turn(q, -dir, phi_mid, spec);
            }
            const double phi_out = dir * gh + phi_mid;
            Pose q = drive_turn({}, -dir, phi_mid, spec);
            q = drive_line(q, lj);
            return drive_turn(q, dir, phi_out, spec);
        };

        auto residual = [&](double lam) -> double {
            const Pose q = constrained_part(lam);
            if (outer_first)
                return cross(ug, g - q.p) / scale;
            return (g.y - q.p.y) / scale;
        };

        const auto roots = sweep_lambda_roots(residual, opts, 1e-9, stats);
        for (double lam : roots)
        {
            if (!(lam > 1.0))
                continue;
            const LambdaParam p(lam);
            const double phi_mid = mid_turn_angle_from_lambda(p);
            const double lj = junction_s_length(p, spec);
            const double phi_out = dir * gh + phi_mid;
            const Pose q = constrained_part(lam);
            std::vector<Segment> segs;
            if (outer_first)
            {
                const double l_free = dot(g - q.p, ug);
                segs = {{turn_kind(dir), phi_out},
                        Segment::straight(lj),
                        {turn_kind(-dir), phi_mid},
                        Segment::straight(l_free)};
            }
            else
            {
                const double l_free = g.x - q.p.x;
                segs = {Segment::straight(l_free),
                        {turn_kind(-dir), phi_mid},
                        Segment::straight(lj),
                        {turn_kind(dir), phi_out}};
            }
            if (auto c = make_candidate(family, std::move(segs), goal, spec, opts))
            {
                c->lambda = lam;
                push_unique(out, std::move(*c));
            }
        }
        return out;
    }

    std::vector<PathCandidate> solve_five_segment(Family family, const Configuration &goal, const VehicleSpec &spec,
                                                  const SolveOptions &opts, SolverStats *stats)
    {
        int dir = 0;
        if (family == Family::LSRSL)
            dir = +1;
        else if (family == Family::RSLSR)
            dir = -1;
        else
            throw std::invalid_argument("solve_five_segment: not a five-segment family");

        std::vector<PathCandidate> out;
        if (!(spec.mu_sum() > 0.0))
            return out;

        // For a zero first turn the constrained middle (line, interior turn, line) carries the
        // final circle's center to c1 + w(lambda). A first turn of angle phi rotates w about c1,
        // so closure reduces to |w(lambda)| = |g_center - c1| plus one rotation.
        const double s_out = dir * turn_radius(dir, spec);
        const Vec2 c1{0.0, s_out};
        const Vec2 target = goal_center(goal, dir, spec) - c1;
        const double target_len = norm(target);
        const double scale = std::max(1.0, norm(goal_position(goal)));

        auto middle = [&](double lam) {
            const LambdaParam p(lam);
            const double phi_mid = mid_turn_angle_from_lambda(p);
            const double lj = junction_s_length(p, spec);
            Pose q = drive_line({}, lj);
            q = drive_turn(q, -dir, phi_mid, spec);
            q = drive_line(q, lj);
            const Vec2 center = q.p + s_out * left_normal(q.h);
            return center - c1;
        };

        auto residual = [&](double lam) { return (norm(middle(lam)) - target_len) / scale; };

        const auto roots = sweep_lambda_roots(residual, opts, 1e-9, stats);
        for (double lam : roots)
        {
            if (!(lam > 1.0))
                continue;
            const LambdaParam p(lam);
            const double phi_mid = mid_turn_angle_from_lambda(p);
            const double lj = junction_s_length(p, spec);
            const Vec2 w = middle(lam);
            const double rot = angle_of(target) - angle_of(w);
            const double phi1 = normalize_angle(dir * rot);
            const double phi3 = dir * goal.heading() - phi1 + phi_mid;
            std::vector<Segment> segs = {{turn_kind(dir), phi1},
                                         Segment::straight(lj),
                                         {turn_kind(-dir), phi_mid},
                                         Segment::straight(lj),
                                         {turn_kind(dir), phi3}};
            if (auto c = make_candidate(family, std::move(segs), goal, spec, opts))
            {
                c->lambda = lam;
                push_unique(out, std::move(*c));
            }
        }
        return out;
    }

} // namespace wmd
