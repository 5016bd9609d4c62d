#pragma once
/**
 * @file   planner.hpp
 * @brief  Candidate enumeration and minimum-cost selection.
 *
 * With a non-zero turn penalty every one of the 21 families is solved; with
 * zero penalty the planner runs the classical CSC / CCC candidate set.
 */

#include <optional>
#include <utility>
#include <vector>

#include "wmd/core.hpp"
#include "wmd/family_solvers.hpp"

namespace wmd
{
    enum class ModeOverride : std::uint8_t
    {
        Auto,
        Weighted,
        Classical
    };

    /// Below this total penalty the planner switches to the classical candidate set.
    inline constexpr double kClassicalPenaltyThreshold = 1e-12;

    struct PlanRequest
    {
        Configuration start;
        Configuration goal;
        VehicleSpec spec;
        SolveOptions options;
        ModeOverride mode_override = ModeOverride::Auto;
        /// Restricts the families considered; empty means the full set for the mode.
        std::vector<Family> families;
    };

    PlanMode resolve_mode(const VehicleSpec &spec, ModeOverride override_mode) noexcept;

    /// Classical CCC words (LRL, RLR) through three mutually tangent circles; the middle arc must exceed pi.
    std::vector<PathCandidate> solve_ccc(Family family, const Configuration &goal, const VehicleSpec &spec,
                                         const SolveOptions &opts);

    /// Solves one family in the canonical frame.
    std::vector<PathCandidate> solve_family(Family family, const Configuration &goal, const VehicleSpec &spec,
                                            const SolveOptions &opts, SolverStats *stats = nullptr);

    /// Throws std::invalid_argument for invalid specs or options. An empty `best` means no path.
    PlanResult plan(const PlanRequest &req);

    /// Optimal costs with the request's penalties and with both penalties raised by delta_mu.
    /// Throws std::runtime_error if either plan finds no path.
    std::pair<double, double> cost_monotonicity_probe(const PlanRequest &req, double delta_mu);

} // namespace wmd
