#pragma once
/**
 * @file   core.hpp
 * @brief  Domain types, canonical frames, angle arithmetic and the turn-penalised cost model.
 *
 * A path is a concatenation of left arcs (L), right arcs (R) and straight
 * lines (S) driven at unit speed. Traversing an arc of angle phi on a turn of
 * radius r with penalty mu costs (r + mu) * phi; a line costs its length.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wmd
{
    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kTwoPi = 2.0 * kPi;

    /// Segments with a measure below this are degenerate (absent) for classification.
    inline constexpr double kDegenerateMeasure = 1e-9;

    /// Wraps a finite angle into [0, 2pi). Throws std::invalid_argument on NaN/inf.
    double normalize_angle(double theta);

    /// Wraps a finite angle into (-pi, pi].
    double wrap_to_pi(double theta);

    inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
    inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

    /// Planar pose. Heading is kept in [0, 2pi).
    class Configuration
    {
    public:
        Configuration() = default;
        Configuration(double x, double y, double heading);

        [[nodiscard]] double x() const noexcept { return x_; }
        [[nodiscard]] double y() const noexcept { return y_; }
        [[nodiscard]] double heading() const noexcept { return heading_; }

        friend bool operator==(const Configuration &, const Configuration &) = default;

    private:
        double x_ = 0.0;
        double y_ = 0.0;
        double heading_ = 0.0;
    };

    /// Turn radii and per-radian turn penalties of the vehicle.
    struct VehicleSpec
    {
        double r_left = 1.0;
        double r_right = 1.0;
        double mu_left = 0.0;
        double mu_right = 0.0;

        /// Throws std::invalid_argument if radii are not positive or penalties negative.
        void validate() const;

        [[nodiscard]] double r_min() const noexcept { return r_left < r_right ? r_left : r_right; }
        [[nodiscard]] double mu_sum() const noexcept { return mu_left + mu_right; }

        /// Cost per radian of a left / right arc.
        [[nodiscard]] double left_rate() const noexcept { return r_left + mu_left; }
        [[nodiscard]] double right_rate() const noexcept { return r_right + mu_right; }

        /// Reflection across the x-axis exchanges the roles of left and right.
        [[nodiscard]] VehicleSpec mirrored() const noexcept { return {r_right, r_left, mu_right, mu_left}; }
    };

    enum class SegmentKind : std::uint8_t
    {
        L,
        R,
        S
    };

    char kind_char(SegmentKind k) noexcept;
    SegmentKind kind_from_char(char c);

    /// One motion primitive: an arc (measure in rad) or a line (measure in m).
    struct Segment
    {
        SegmentKind kind = SegmentKind::S;
        double measure = 0.0;

        [[nodiscard]] bool is_arc() const noexcept { return kind != SegmentKind::S; }
        [[nodiscard]] bool degenerate() const noexcept { return measure < kDegenerateMeasure; }

        static Segment left(double angle) { return {SegmentKind::L, angle}; }
        static Segment right(double angle) { return {SegmentKind::R, angle}; }
        static Segment straight(double length) { return {SegmentKind::S, length}; }

        friend bool operator==(const Segment &, const Segment &) = default;
    };

    /// Candidate families: the 21 turn-penalised families plus the two CCC words of the classical limit.
    enum class Family : std::uint8_t
    {
        S,
        L,
        R,
        LS,
        SL,
        RS,
        SR,
        LR,
        RL,
        LSL,
        LSR,
        RSL,
        RSR,
        SLS,
        SRS,
        LSRS,
        SRSL,
        RSLS,
        SLSR,
        LSRSL,
        RSLSR,
        LRL,
        RLR
    };

    inline constexpr std::size_t kFamilyCount = 23;
    inline constexpr std::size_t kWeightedFamilyCount = 21;

    std::string_view family_name(Family f) noexcept;
    std::optional<Family> family_from_name(std::string_view name) noexcept;
    std::span<const Family> all_families() noexcept;
    /// The 21 families that make up the turn-penalised candidate set.
    std::span<const Family> weighted_families() noexcept;
    /// Families used in the classical (zero-penalty) mode: CSC, CCC and their degenerates.
    std::span<const Family> classical_families() noexcept;
    /// Family with every L and R exchanged.
    Family mirror_family(Family f) noexcept;

    /// Boundary-closure error of a candidate: propagated endpoint minus goal.
    struct Residual
    {
        double dx = 0.0;
        double dy = 0.0;
        double dtheta = 0.0; ///< wrapped to (-pi, pi]

        /// max(|dx|, |dy|, length_scale * |dtheta|)
        [[nodiscard]] double norm(double length_scale) const noexcept;
    };

    struct PathCandidate
    {
        Family family = Family::S;
        std::vector<Segment> segments;
        double cost = 0.0;
        Residual residual;
        /// Adjoint magnitude parameter for families with constrained interior segments.
        std::optional<double> lambda;

        [[nodiscard]] std::size_t nondegenerate_count() const noexcept;
    };

    enum class PlanMode : std::uint8_t
    {
        Weighted,
        Classical
    };

    std::string_view mode_name(PlanMode m) noexcept;

    struct PlanDiagnostics
    {
        std::size_t families_evaluated = 0;
        std::size_t lambda_samples = 0;   ///< scalar residual evaluations during multi-start sweeps
        std::size_t root_refinements = 0; ///< bracketed or minimised sub-interval refinements
        std::size_t solver_iterations = 0;
        bool widened_retry = false;
    };

    struct PlanResult
    {
        std::optional<PathCandidate> best;
        std::vector<PathCandidate> all_candidates;
        PlanMode mode = PlanMode::Weighted;
        PlanDiagnostics diagnostics;
    };

    /// Goal expressed in the frame where start sits at the origin with zero heading.
    Configuration to_canonical(const Configuration &start, const Configuration &goal);
    /// Inverse of to_canonical: maps a canonical-frame pose back to the world frame.
    Configuration from_canonical(const Configuration &start, const Configuration &local);

    double segment_cost(const Segment &seg, const VehicleSpec &spec);
    double path_cost(std::span<const Segment> segments, const VehicleSpec &spec);

    /// Family string of a segment list after dropping degenerate segments and merging equal neighbours.
    std::string collapsed_word(std::span<const Segment> segments);
    /// Segment-kind string without collapsing.
    std::string word_of(std::span<const Segment> segments);

    /// Strict ordering used to pick a best candidate: cost (within a relative tolerance),
    /// then fewer non-degenerate segments, then lexicographic family name.
    bool candidate_precedes(const PathCandidate &a, const PathCandidate &b) noexcept;

} // namespace wmd
