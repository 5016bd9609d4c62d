#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "wmd/kinematics.hpp"
#include "wmd/oracle.hpp"

namespace wmd::oracle
{
    void LatticeOptions::validate() const
    {
        if (heading_bins < 36)
            throw std::invalid_argument("LatticeOptions: heading_bins must be at least 36");
        if (!(xy_resolution > 0.0) || !(cost_slack_rel >= 0.0) || !(cost_slack_abs >= 0.0) || !(box_inflation >= 0.0))
            throw std::invalid_argument("LatticeOptions: resolution and slack must be positive");
        if (control_set.empty())
            throw std::invalid_argument("LatticeOptions: empty control set");
        for (const auto &p : control_set)
            if (!(p.measure > 0.0))
                throw std::invalid_argument("LatticeOptions: primitives must have positive measure");
    }

    LatticeOptions default_lattice_options(const VehicleSpec &spec)
    {
        LatticeOptions o;
        const double r = spec.r_min();
        o.xy_resolution = 0.05 * r;
        o.control_set = {Segment::left(deg_to_rad(5.0)), Segment::right(deg_to_rad(5.0)), Segment::straight(0.05 * r)};
        o.box_inflation = 4.0 * (spec.r_left + spec.r_right);
        return o;
    }

    namespace
    {
        struct Node
        {
            double x, y, h;
            double g;
            int parent;
            int prim;
        };

        struct Shot
        {
            double min_length = std::numeric_limits<double>::infinity();
            std::vector<ClassicalPath> words; ///< sorted by weighted cost
            std::vector<double> costs;
        };

        Shot connect(const Node &n, const Configuration &goal, const VehicleSpec &spec)
        {
            Shot s;
            const Configuration here(n.x, n.y, n.h);
            auto words = classical_words(to_canonical(here, goal), spec.r_left, spec.r_right);
            std::vector<std::pair<double, std::size_t>> order;
            order.reserve(words.size());
            for (std::size_t k = 0; k < words.size(); ++k)
            {
                s.min_length = std::min(s.min_length, words[k].length);
                order.emplace_back(path_cost(words[k].segments, spec), k);
            }
            std::sort(order.begin(), order.end());
            for (const auto &[c, k] : order)
            {
                s.costs.push_back(c);
                s.words.push_back(std::move(words[k]));
            }
            return s;
        }

        /// Cheapest pure rotation penalty that realises the net heading change.
        double turn_lower_bound(double from, double to, const VehicleSpec &spec)
        {
            const double d = normalize_angle(to - from);
            if (d == 0.0)
                return 0.0;
            return std::min(spec.mu_left * d, spec.mu_right * (kTwoPi - d));
        }

        void append_merged(std::vector<Segment> &out, const Segment &s)
        {
            if (s.measure <= 0.0)
                return;
            if (!out.empty() && out.back().kind == s.kind)
                out.back().measure += s.measure;
            else
                out.push_back(s);
        }
    } // namespace

    LatticeResult lattice_search(const Configuration &start, const Configuration &goal, const VehicleSpec &spec,
                                 const LatticeOptions &lopts)
    {
        spec.validate();
        lopts.validate();

        const Configuration g = to_canonical(start, goal);
        const double res = lopts.xy_resolution;
        const double xmin = std::min(0.0, g.x()) - lopts.box_inflation;
        const double ymin = std::min(0.0, g.y()) - lopts.box_inflation;
        const double xmax = std::max(0.0, g.x()) + lopts.box_inflation;
        const double ymax = std::max(0.0, g.y()) + lopts.box_inflation;
        const auto nx = static_cast<std::int64_t>(std::floor((xmax - xmin) / res)) + 1;
        const auto ny = static_cast<std::int64_t>(std::floor((ymax - ymin) / res)) + 1;
        const double bin_width = kTwoPi / lopts.heading_bins;

        auto key_of = [&](const Node &n) -> std::optional<std::int64_t> {
            if (n.x < xmin || n.x > xmax || n.y < ymin || n.y > ymax)
                return std::nullopt;
            const auto ix = std::min<std::int64_t>(nx - 1, static_cast<std::int64_t>((n.x - xmin) / res));
            const auto iy = std::min<std::int64_t>(ny - 1, static_cast<std::int64_t>((n.y - ymin) / res));
            auto ib = static_cast<std::int64_t>(std::llround(normalize_angle(n.h) / bin_width)) % lopts.heading_bins;
            return (ix * ny + iy) * lopts.heading_bins + ib;
        };

        // An analytic completion only counts if it stays inside the state box.
        auto inside = [&](const Node &n, const std::vector<Segment> &segs) {
            const Polyline p = sample_path(Configuration(n.x, n.y, n.h), segs, spec, res);
            return std::all_of(p.points.begin(), p.points.end(), [&](const Point2 &q) {
                return q.x >= xmin && q.x <= xmax && q.y >= ymin && q.y <= ymax;
            });
        };
        auto try_improve = [&](const Shot &s, const Node &n, int idx, double &upper, int &upper_node,
                               std::vector<Segment> &upper_tail) {
            for (std::size_t k = 0; k < s.words.size() && n.g + s.costs[k] < upper; ++k)
            {
                if (!inside(n, s.words[k].segments))
                    continue;
                upper = n.g + s.costs[k];
                upper_node = idx;
                upper_tail = s.words[k].segments;
                return;
            }
        };

        auto heuristic = [&](const Shot &s, const Node &n) {
            return s.min_length + turn_lower_bound(n.h, g.heading(), spec);
        };

        auto at_goal = [&](const Node &n) {
            if (std::hypot(n.x - g.x(), n.y - g.y()) > res)
                return false;
            return std::abs(wrap_to_pi(n.h - g.heading())) <= 0.5 * bin_width + 1e-12;
        };

        std::vector<Node> nodes;
        nodes.reserve(1 << 16);
        std::unordered_map<std::int64_t, double> best_g;
        best_g.reserve(1 << 16);
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

        LatticeResult result;
        double upper = std::numeric_limits<double>::infinity();
        int upper_node = -1;
        std::vector<Segment> upper_tail;

        const int start_idx = 0;
        nodes.push_back({0.0, 0.0, 0.0, 0.0, -1, -1});
        if (!key_of(nodes[0]))
            return result;
        {
            const Shot s = connect(nodes[0], g, spec);
            if (lopts.analytic_expansion)
                try_improve(s, nodes[0], start_idx, upper, upper_node, upper_tail);
            best_g[*key_of(nodes[0])] = 0.0;
            open.emplace(heuristic(s, nodes[0]), start_idx);
        }

        int goal_node = -1;
        while (!open.empty() && result.expansions < lopts.max_expansions)
        {
            const auto [f, idx] = open.top();
            open.pop();
            if (f >= upper - 1e-12)
                break;
            const Node cur = nodes[static_cast<std::size_t>(idx)];
            if (const auto it = best_g.find(*key_of(cur)); it != best_g.end() && it->second < cur.g)
                continue;
            ++result.expansions;
            if (!lopts.analytic_expansion && at_goal(cur))
            {
                goal_node = idx;
                break;
            }

            for (std::size_t p = 0; p < lopts.control_set.size(); ++p)
            {
                const Segment &prim = lopts.control_set[p];
                const Configuration next = propagate_segment(Configuration(cur.x, cur.y, cur.h), prim, spec);
                Node child{next.x(), next.y(), next.heading(), cur.g + segment_cost(prim, spec), idx,
                           static_cast<int>(p)};
                const auto key = key_of(child);
                if (!key)
                    continue;
                auto [it, inserted] = best_g.try_emplace(*key, child.g);
                if (!inserted)
                {
                    if (it->second <= child.g)
                        continue;
                    it->second = child.g;
                }
                const Shot s = connect(child, g, spec);
                const int child_idx = static_cast<int>(nodes.size());
                nodes.push_back(child);
                if (lopts.analytic_expansion)
                    try_improve(s, child, child_idx, upper, upper_node, upper_tail);
                open.emplace(child.g + heuristic(s, child), child_idx);
            }
        }

        const int last = lopts.analytic_expansion ? upper_node : goal_node;
        if (last < 0)
            return result;

        std::vector<int> chain;
        for (int i = last; i > start_idx; i = nodes[static_cast<std::size_t>(i)].parent)
            chain.push_back(nodes[static_cast<std::size_t>(i)].prim);
        std::reverse(chain.begin(), chain.end());
        for (int p : chain)
            append_merged(result.segments, lopts.control_set[static_cast<std::size_t>(p)]);
        if (lopts.analytic_expansion)
            for (const auto &s : upper_tail)
                append_merged(result.segments, s);

        result.feasible = true;
        result.cost = lopts.analytic_expansion ? upper : nodes[static_cast<std::size_t>(goal_node)].g;
        return result;
    }

} // namespace wmd::oracle
