#include "wmd/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmd
{
    double normalize_angle(double theta)
    {
        if (!std::isfinite(theta))
            throw std::invalid_argument("normalize_angle: non-finite angle");
        double r = std::fmod(theta, kTwoPi);
        if (r < 0.0)
            r += kTwoPi;
        // fmod of a tiny negative value plus 2pi can round up to exactly 2pi
        if (r >= kTwoPi)
            r = 0.0;
        return r;
    }

    double wrap_to_pi(double theta)
    {
        double r = normalize_angle(theta);
        if (r > kPi)
            r -= kTwoPi;
        return r;
    }

    Configuration::Configuration(double x, double y, double heading)
        : x_(x), y_(y), heading_(normalize_angle(heading))
    {
        if (!std::isfinite(x) || !std::isfinite(y))
            throw std::invalid_argument("Configuration: non-finite position");
    }

    void VehicleSpec::validate() const
    {
        if (!(r_left > 0.0) || !(r_right > 0.0) || !std::isfinite(r_left) || !std::isfinite(r_right))
            throw std::invalid_argument("VehicleSpec: turn radii must be positive and finite");
        if (!(mu_left >= 0.0) || !(mu_right >= 0.0) || !std::isfinite(mu_left) || !std::isfinite(mu_right))
            throw std::invalid_argument("VehicleSpec: turn penalties must be non-negative and finite");
    }

    char kind_char(SegmentKind k) noexcept
    {
        switch (k)
        {
        case SegmentKind::L:
            return 'L';
        case SegmentKind::R:
            return 'R';
        case SegmentKind::S:
            return 'S';
        }
        return '?';
    }

    SegmentKind kind_from_char(char c)
    {
        switch (c)
        {
        case 'L':
            return SegmentKind::L;
        case 'R':
            return SegmentKind::R;
        case 'S':
            return SegmentKind::S;
        default:
            throw std::invalid_argument(std::string("unknown segment kind '") + c + "'");
        }
    }

    namespace
    {
        constexpr std::array<std::string_view, kFamilyCount> kNames = {
            "S",   "L",   "R",   "LS",   "SL",   "RS",   "SR",    "LR",    "RL",  "LSL", "LSR", "RSL",
            "RSR", "SLS", "SRS", "LSRS", "SRSL", "RSLS", "SLSR", "LSRSL", "RSLSR", "LRL", "RLR"};

        constexpr std::array<Family, kFamilyCount> kAll = {
            Family::S,   Family::L,    Family::R,    Family::LS,   Family::SL,    Family::RS,
            Family::SR,  Family::LR,   Family::RL,   Family::LSL,  Family::LSR,   Family::RSL,
            Family::RSR, Family::SLS,  Family::SRS,  Family::LSRS, Family::SRSL,  Family::RSLS,
            Family::SLSR, Family::LSRSL, Family::RSLSR, Family::LRL, Family::RLR};

        constexpr std::array<Family, 15> kClassical = {
            Family::S,  Family::L,  Family::R,   Family::LS,  Family::SL,  Family::RS,  Family::SR, Family::LR,
            Family::RL, Family::LSL, Family::LSR, Family::RSL, Family::RSR, Family::LRL, Family::RLR};
    } // namespace

    std::string_view family_name(Family f) noexcept { return kNames[static_cast<std::size_t>(f)]; }

    std::optional<Family> family_from_name(std::string_view name) noexcept
    {
        for (std::size_t i = 0; i < kNames.size(); ++i)
            if (kNames[i] == name)
                return kAll[i];
        return std::nullopt;
    }

    std::span<const Family> all_families() noexcept { return kAll; }
    std::span<const Family> weighted_families() noexcept { return std::span<const Family>(kAll).first(kWeightedFamilyCount); }
    std::span<const Family> classical_families() noexcept { return kClassical; }

    Family mirror_family(Family f) noexcept
    {
        std::string s(family_name(f));
        for (char &c : s)
        {
            if (c == 'L')
                c = 'R';
            else if (c == 'R')
                c = 'L';
        }
        return *family_from_name(s);
    }

    double Residual::norm(double length_scale) const noexcept
    {
        return std::max({std::abs(dx), std::abs(dy), length_scale * std::abs(dtheta)});
    }

    std::size_t PathCandidate::nondegenerate_count() const noexcept
    {
        return static_cast<std::size_t>(
            std::count_if(segments.begin(), segments.end(), [](const Segment &s) { return !s.degenerate(); }));
    }

    std::string_view mode_name(PlanMode m) noexcept { return m == PlanMode::Weighted ? "weighted" : "classical"; }

    Configuration to_canonical(const Configuration &start, const Configuration &goal)
    {
        const double dx = goal.x() - start.x();
        const double dy = goal.y() - start.y();
        const double c = std::cos(start.heading());
        const double s = std::sin(start.heading());
        return {c * dx + s * dy, -s * dx + c * dy, goal.heading() - start.heading()};
    }

    Configuration from_canonical(const Configuration &start, const Configuration &local)
    {
        const double c = std::cos(start.heading());
        const double s = std::sin(start.heading());
        return {start.x() + c * local.x() - s * local.y(), start.y() + s * local.x() + c * local.y(),
                start.heading() + local.heading()};
    }

    double segment_cost(const Segment &seg, const VehicleSpec &spec)
    {
        switch (seg.kind)
        {
        case SegmentKind::L:
            return spec.left_rate() * seg.measure;
        case SegmentKind::R:
            return spec.right_rate() * seg.measure;
        case SegmentKind::S:
            return seg.measure;
        }
        return 0.0;
    }

    double path_cost(std::span<const Segment> segments, const VehicleSpec &spec)
    {
        double total = 0.0;
        for (const auto &s : segments)
            total += segment_cost(s, spec);
        return total;
    }

    std::string word_of(std::span<const Segment> segments)
    {
        std::string w;
        for (const auto &s : segments)
            w.push_back(kind_char(s.kind));
        return w;
    }

    std::string collapsed_word(std::span<const Segment> segments)
    {
        std::string w;
        for (const auto &s : segments)
        {
            if (s.degenerate())
                continue;
            const char c = kind_char(s.kind);
            if (w.empty() || w.back() != c)
                w.push_back(c);
        }
        return w;
    }

    bool candidate_precedes(const PathCandidate &a, const PathCandidate &b) noexcept
    {
        const double tol = 1e-9 * std::max({1.0, std::abs(a.cost), std::abs(b.cost)});
        if (a.cost < b.cost - tol)
            return true;
        if (b.cost < a.cost - tol)
            return false;
        const auto na = a.nondegenerate_count();
        const auto nb = b.nondegenerate_count();
        if (na != nb)
            return na < nb;
        return family_name(a.family) < family_name(b.family);
    }

} // namespace wmd
