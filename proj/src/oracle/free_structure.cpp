#include <algorithm>
#include <array>
#include <cstring>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "wmd/kinematics.hpp"
#include "wmd/oracle.hpp"

namespace wmd::oracle
{
    namespace
    {
        constexpr int kMaxSeg = 6;
        constexpr int kMaxDim = kMaxSeg + 3;

        using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
        using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

        struct Word
        {
            std::vector<SegmentKind> kinds;
            std::vector<double> turn; ///< +1 L, -1 R, 0 S
            std::vector<double> rate; ///< cost per unit measure
        };

        /// Endpoint, closure residual and derivatives of the endpoint with respect to the measures.
        struct Eval
        {
            Vec residual;      // 3
            Mat jac;           // 3 x n
            Eigen::Matrix<double, 2, kMaxSeg> g; // d(position)/dm_j
        };

        Eval evaluate(const Word &w, const Vec &m, const Configuration &goal, const VehicleSpec &spec)
        {
            const auto n = static_cast<int>(w.kinds.size());
            double x = 0.0;
            double y = 0.0;
            double h = 0.0;
            std::array<double, kMaxSeg> cx{};
            std::array<double, kMaxSeg> cy{};
            std::array<double, kMaxSeg> hs{};
            for (int j = 0; j < n; ++j)
            {
                hs[j] = h;
                const double t = w.turn[j];
                if (t == 0.0)
                {
                    x += m[j] * std::cos(h);
                    y += m[j] * std::sin(h);
                    continue;
                }
                const double sr = t * (t > 0 ? spec.r_left : spec.r_right);
                cx[j] = x - sr * std::sin(h);
                cy[j] = y + sr * std::cos(h);
                h += t * m[j];
                x = cx[j] + sr * std::sin(h);
                y = cy[j] - sr * std::cos(h);
            }
            Eval e;
            e.residual.resize(3);
            e.residual << x - goal.x(), y - goal.y(), wrap_to_pi(h - goal.heading());
            e.jac.resize(3, n);
            for (int j = 0; j < n; ++j)
            {
                const double t = w.turn[j];
                double gx = 0.0;
                double gy = 0.0;
                if (t == 0.0)
                {
                    gx = std::cos(hs[j]);
                    gy = std::sin(hs[j]);
                }
                else
                {
                    // the remainder of the path rotates about this arc's center
                    gx = -t * (y - cy[j]);
                    gy = t * (x - cx[j]);
                }
                e.g(0, j) = gx;
                e.g(1, j) = gy;
                e.jac(0, j) = gx;
                e.jac(1, j) = gy;
                e.jac(2, j) = t;
            }
            return e;
        }

        /// sum_k nu_k * Hessian of residual component k.
        Mat weighted_hessian(const Word &w, const Eval &e, const Vec &nu)
        {
            const auto n = static_cast<int>(w.kinds.size());
            Mat hsum = Mat::Zero(n, n);
            for (int i = 0; i < n; ++i)
            {
                if (w.turn[i] == 0.0)
                    continue;
                for (int j = i; j < n; ++j)
                {
                    // d g_j / d m_i = t_i * perp(g_j) for an arc i preceding (or equal to) j
                    const double px = -e.g(1, j);
                    const double py = e.g(0, j);
                    const double v = w.turn[i] * (nu[0] * px + nu[1] * py);
                    hsum(i, j) += v;
                    if (j != i)
                        hsum(j, i) += v;
                }
            }
            return hsum;
        }

        std::uint64_t splitmix(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        std::uint64_t mix_double(std::uint64_t h, double v)
        {
            std::uint64_t bits = 0;
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(v));
            return splitmix(h ^ bits);
        }

        std::uint64_t instance_seed(std::string_view seq, const Configuration &goal, const VehicleSpec &spec,
                                    std::uint64_t base)
        {
            std::uint64_t h = splitmix(base);
            for (double v : {goal.x(), goal.y(), goal.heading(), spec.r_left, spec.r_right, spec.mu_left, spec.mu_right})
                h = mix_double(h, v);
            for (char c : seq)
                h = splitmix(h ^ static_cast<unsigned char>(c));
            return h;
        }

        Vec solve_min_norm(const Mat &a, const Vec &b)
        {
            return a.completeOrthogonalDecomposition().solve(b);
        }

        /// Damped Gauss-Newton towards the closure manifold.
        bool restore_feasibility(const Word &w, Vec &m, const Configuration &goal, const VehicleSpec &spec, int iters,
                                 double tol)
        {
            auto e = evaluate(w, m, goal, spec);
            double r = e.residual.norm();
            for (int it = 0; it < iters && r > tol; ++it)
            {
                const Vec step = solve_min_norm(e.jac, -e.residual);
                double alpha = 1.0;
                bool improved = false;
                for (int ls = 0; ls < 30; ++ls, alpha *= 0.5)
                {
                    const Vec trial = m + alpha * step;
                    if (!trial.allFinite())
                        continue;
                    auto et = evaluate(w, trial, goal, spec);
                    const double rt = et.residual.norm();
                    if (rt < r)
                    {
                        m = trial;
                        e = std::move(et);
                        r = rt;
                        improved = true;
                        break;
                    }
                }
                if (!improved)
                    break;
            }
            return r <= tol;
        }

        /// Newton on the KKT conditions of min rate.m subject to closure(m) = 0.
        bool stationary_point(const Word &w, Vec &m, const Configuration &goal, const VehicleSpec &spec, int iters,
                              double tol)
        {
            const auto n = static_cast<int>(w.kinds.size());
            Vec rate(n);
            for (int j = 0; j < n; ++j)
                rate[j] = w.rate[j];

            auto e = evaluate(w, m, goal, spec);
            Vec nu = solve_min_norm(e.jac.transpose(), -rate);

            auto kkt_residual = [&](const Eval &ev, const Vec &mult) {
                Vec r(n + 3);
                r.head(n) = rate + ev.jac.transpose() * mult;
                r.tail(3) = ev.residual;
                return r;
            };

            Vec r = kkt_residual(e, nu);
            double rn = r.norm();
            const double grad_tol = 1e-9 * (1.0 + rate.norm());
            for (int it = 0; it < iters; ++it)
            {
                if (e.residual.norm() <= tol && r.head(n).norm() <= grad_tol)
                    return true;
                Mat k = Mat::Zero(n + 3, n + 3);
                k.topLeftCorner(n, n) = weighted_hessian(w, e, nu);
                k.topRightCorner(n, 3) = e.jac.transpose();
                k.bottomLeftCorner(3, n) = e.jac;
                const Vec step = solve_min_norm(k, -r);
                double alpha = 1.0;
                bool improved = false;
                for (int ls = 0; ls < 30; ++ls, alpha *= 0.5)
                {
                    const Vec tm = m + alpha * step.head(n);
                    const Vec tnu = nu + alpha * step.tail(3);
                    if (!tm.allFinite() || !tnu.allFinite())
                        continue;
                    auto et = evaluate(w, tm, goal, spec);
                    const Vec rt = kkt_residual(et, tnu);
                    const double rtn = rt.norm();
                    if (rtn < rn)
                    {
                        m = tm;
                        nu = tnu;
                        e = std::move(et);
                        r = rt;
                        rn = rtn;
                        improved = true;
                        break;
                    }
                }
                if (!improved)
                    break;
            }
            return e.residual.norm() <= tol && r.head(n).norm() <= grad_tol;
        }
    } // namespace

    std::optional<FreeStructureResult> free_structure_solve(std::string_view sequence, const Configuration &start,
                                                            const Configuration &goal, const VehicleSpec &spec,
                                                            const FreeStructureOptions &opts)
    {
        spec.validate();
        if (sequence.empty() || sequence.size() > kMaxSeg)
            throw std::invalid_argument("free_structure_solve: sequence length must be in [1, 6]");

        Word w;
        for (char c : sequence)
        {
            const SegmentKind k = kind_from_char(c);
            w.kinds.push_back(k);
            w.turn.push_back(k == SegmentKind::L ? 1.0 : k == SegmentKind::R ? -1.0 : 0.0);
            w.rate.push_back(segment_cost({k, 1.0}, spec));
        }
        const auto n = static_cast<int>(w.kinds.size());

        const Configuration local = to_canonical(start, goal);
        const double scale = std::max(1.0, std::hypot(local.x(), local.y()));
        const double tol = 1e-11 * scale;
        const double line_span = std::hypot(local.x(), local.y()) + 2.0 * (spec.r_left + spec.r_right);

        std::mt19937_64 rng(instance_seed(sequence, local, spec, opts.seed));
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        std::optional<FreeStructureResult> best;
        std::size_t roots = 0;
        for (int attempt = 0; attempt < opts.restarts; ++attempt)
        {
            Vec m(n);
            for (int j = 0; j < n; ++j)
                m[j] = w.turn[j] == 0.0 ? line_span * unit(rng) : kTwoPi * unit(rng);

            if (!restore_feasibility(w, m, local, spec, opts.max_iters, tol))
                continue;
            if (n > 3 && !stationary_point(w, m, local, spec, opts.max_iters, tol))
                continue;

            std::vector<Segment> segs;
            bool valid = true;
            for (int j = 0; j < n && valid; ++j)
            {
                double v = m[j];
                if (w.turn[j] != 0.0)
                {
                    v = std::fmod(v, kTwoPi);
                    if (v < 0.0)
                        v += kTwoPi;
                    if (kTwoPi - v < kDegenerateMeasure)
                        v = 0.0;
                }
                else if (v < 0.0)
                {
                    if (v < -1e-9 * scale)
                        valid = false;
                    v = 0.0;
                }
                segs.push_back({w.kinds[j], v});
            }
            if (!valid)
                continue;
            const Residual res = closure_residual(Configuration{}, local, segs, spec);
            if (res.norm(spec.r_min()) > 1e-8 * scale)
                continue;
            ++roots;
            const double cost = path_cost(segs, spec);
            if (!best || cost < best->cost)
                best = FreeStructureResult{cost, std::move(segs), 0};
        }
        if (best)
            best->roots_found = roots;
        return best;
    }

} // namespace wmd::oracle
