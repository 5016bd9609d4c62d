#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wmd/kinematics.hpp"
#include "wmd/oracle.hpp"

namespace wmd::oracle
{
    std::vector<std::string> enumerate_sequences(int max_segments)
    {
        if (max_segments < 1 || max_segments > 6)
            throw std::invalid_argument("enumerate_sequences: max_segments must be in [1, 6]");
        std::vector<std::string> out;
        std::vector<std::string> frontier{""};
        for (int len = 1; len <= max_segments; ++len)
        {
            std::vector<std::string> next;
            for (const auto &w : frontier)
                for (char c : {'L', 'R', 'S'})
                    if (w.empty() || w.back() != c)
                        next.push_back(w + c);
            out.insert(out.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        return out;
    }

    namespace
    {
        double wrap2pi(double a)
        {
            a = std::fmod(a, kTwoPi);
            if (a < 0)
                a += kTwoPi;
            return a >= kTwoPi ? 0.0 : a;
        }

        /// Heading of a vehicle on a turn of direction dir at point (px, py) of circle (cx, cy).
        double heading_on_circle(double cx, double cy, double px, double py, int dir)
        {
            // center = p + dir * r * (-sin h, cos h)
            const double nx = dir * (cx - px);
            const double ny = dir * (cy - py);
            return std::atan2(-nx, ny);
        }
    } // namespace

    std::vector<ClassicalPath> classical_words(const Configuration &g, double r_left, double r_right)
    {
        std::vector<ClassicalPath> out;
        const VehicleSpec spec{r_left, r_right, 0.0, 0.0};
        const double gx = g.x();
        const double gy = g.y();
        const double gh = g.heading();
        const double scale = std::max(1.0, std::hypot(gx, gy));

        auto radius = [&](int dir) { return dir > 0 ? r_left : r_right; };
        auto kind = [](int dir) { return dir > 0 ? SegmentKind::L : SegmentKind::R; };

        auto accept = [&](std::string word, std::vector<Segment> segs) {
            const Residual res = closure_residual(Configuration{}, g, segs, spec);
            if (res.norm(std::min(r_left, r_right)) > 1e-7 * scale)
                return;
            ClassicalPath p;
            p.word = std::move(word);
            p.length = path_cost(segs, spec);
            p.segments = std::move(segs);
            out.push_back(std::move(p));
        };

        // CSC: the tangent direction h satisfies D sin(psi - h) = s2 - s1.
        for (int d1 : {+1, -1})
        {
            for (int d2 : {+1, -1})
            {
                const double s1 = d1 * radius(d1);
                const double s2 = d2 * radius(d2);
                const double c1x = 0.0;
                const double c1y = s1;
                const double c2x = gx - s2 * std::sin(gh);
                const double c2y = gy + s2 * std::cos(gh);
                const double vx = c2x - c1x;
                const double vy = c2y - c1y;
                const double dist = std::hypot(vx, vy);
                const double k = s2 - s1;
                double h = 0.0;
                double line = 0.0;
                if (dist < 1e-14)
                {
                    if (std::abs(k) > 1e-14)
                        continue;
                }
                else
                {
                    const double ratio = k / dist;
                    if (std::abs(ratio) > 1.0 + 1e-12)
                        continue;
                    const double psi = std::atan2(vy, vx);
                    h = psi - std::asin(std::clamp(ratio, -1.0, 1.0));
                    line = dist * std::cos(psi - h);
                }
                std::string word{d1 > 0 ? 'L' : 'R', 'S', d2 > 0 ? 'L' : 'R'};
                accept(word, {{kind(d1), wrap2pi(d1 * h)},
                              Segment::straight(std::max(0.0, line)),
                              {kind(d2), wrap2pi(d2 * (gh - h))}});
            }
        }

        // CCC: middle circle from the law of cosines on the triangle of centers.
        for (int d : {+1, -1})
        {
            const double ro = radius(d);
            const double rm = radius(-d);
            const double c1x = 0.0;
            const double c1y = d * ro;
            const double c3x = gx - d * ro * std::sin(gh);
            const double c3y = gy + d * ro * std::cos(gh);
            const double dist = std::hypot(c3x - c1x, c3y - c1y);
            const double side = ro + rm;
            if (dist < 1e-14 || dist > 2.0 * side)
                continue;
            const double psi = std::atan2(c3y - c1y, c3x - c1x);
            const double gamma = std::acos(dist / (2.0 * side));
            for (double sgn : {+1.0, -1.0})
            {
                const double ang = psi + sgn * gamma;
                const double c2x = c1x + side * std::cos(ang);
                const double c2y = c1y + side * std::sin(ang);
                const double t1x = c1x + ro * std::cos(ang);
                const double t1y = c1y + ro * std::sin(ang);
                const double back = std::atan2(c2y - c3y, c2x - c3x);
                const double t2x = c3x + ro * std::cos(back);
                const double t2y = c3y + ro * std::sin(back);
                const double h1 = heading_on_circle(c1x, c1y, t1x, t1y, d);
                const double h2 = heading_on_circle(c3x, c3y, t2x, t2y, d);
                std::string word{d > 0 ? 'L' : 'R', d > 0 ? 'R' : 'L', d > 0 ? 'L' : 'R'};
                accept(word, {{kind(d), wrap2pi(d * h1)}, {kind(-d), wrap2pi(-d * (h2 - h1))}, {kind(d), wrap2pi(d * (gh - h2))}});
            }
        }
        return out;
    }

    ClassicalPath classical_dubins(const Configuration &start, const Configuration &goal, double r_left,
                                   double r_right)
    {
        if (!(r_left > 0.0) || !(r_right > 0.0))
            throw std::invalid_argument("classical_dubins: radii must be positive");
        const auto words = classical_words(to_canonical(start, goal), r_left, r_right);
        ClassicalPath best;
        best.length = std::numeric_limits<double>::infinity();
        for (const auto &w : words)
            if (w.length < best.length)
                best = w;
        return best;
    }

} // namespace wmd::oracle
