#pragma once
/**
 * @file   oracle.hpp
 * @brief  Independent verifiers for the planner.
 *
 * Three references that share nothing with the family solvers beyond the
 * kinematic model:
 *  - classical_dubins: closed-form shortest paths (zero penalty) over CSC and CCC words;
 *  - free_structure_solve: every segment measure is a free unknown; the stationary
 *    points of the cost on the closure manifold are found by multi-start Newton;
 *  - lattice_search: A* over quantised poses with quantised primitives, completed by
 *    exact classical-word connections, giving a feasible upper bound.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmd/core.hpp"
#include "wmd/family_solvers.hpp"

namespace wmd::oracle
{
    /// Words over {L, R, S} of length 1..max_segments with no symbol repeated back to back.
    /// Throws std::invalid_argument unless 1 <= max_segments <= 6.
    std::vector<std::string> enumerate_sequences(int max_segments);

    struct ClassicalPath
    {
        std::string word;
        std::vector<Segment> segments;
        double length = 0.0;
    };

    /// Every valid LSL/RSR/LSR/RSL/LRL/RLR connection in the canonical frame, no optimality filtering.
    std::vector<ClassicalPath> classical_words(const Configuration &canonical_goal, double r_left, double r_right);

    /// Shortest curvature-constrained path with zero turn penalties.
    ClassicalPath classical_dubins(const Configuration &start, const Configuration &goal, double r_left,
                                   double r_right);

    struct FreeStructureOptions
    {
        int restarts = 32;
        int max_iters = 100;
        std::uint64_t seed = 0;
    };

    struct FreeStructureResult
    {
        double cost = 0.0;
        std::vector<Segment> segments;
        std::size_t roots_found = 0;
    };

    /// Cheapest closure-satisfying assignment of non-negative measures to the given word that is
    /// a stationary point of the cost on the closure manifold (or a root, for words of length <= 3).
    std::optional<FreeStructureResult> free_structure_solve(std::string_view sequence, const Configuration &start,
                                                            const Configuration &goal, const VehicleSpec &spec,
                                                            const FreeStructureOptions &opts = {});

    struct LatticeOptions
    {
        int heading_bins = 72;
        double xy_resolution = 0.05;
        std::vector<Segment> control_set; ///< quantum primitives
        double cost_slack_rel = 0.03;
        double cost_slack_abs = 0.1;
        double box_inflation = 8.0; ///< metres added on every side of the start/goal bounding box
        std::size_t max_expansions = 400000;
        /// Try an exact classical-word connection to the goal from every expanded pose.
        bool analytic_expansion = true;

        void validate() const;
        [[nodiscard]] double slack(double cost) const noexcept { return cost_slack_rel * cost + cost_slack_abs; }
    };

    /// Defaults scaled to the vehicle: 72 heading bins, 0.05 r_min cells, 5 degree arcs,
    /// 0.05 r_min lines, box inflated by 4 (r_L + r_R).
    LatticeOptions default_lattice_options(const VehicleSpec &spec);

    struct LatticeResult
    {
        bool feasible = false;
        double cost = 0.0;
        std::vector<Segment> segments;
        std::size_t expansions = 0;
    };

    LatticeResult lattice_search(const Configuration &start, const Configuration &goal, const VehicleSpec &spec,
                                 const LatticeOptions &lopts);

    enum class Verdict : std::uint8_t
    {
        Consistent,
        PlannerBeatsOracle,
        OracleBeatsPlanner,
        Infeasible
    };

    std::string_view verdict_name(Verdict v) noexcept;

    struct OracleReport
    {
        double planner_cost = 0.0;
        std::string planner_family;
        double lattice_cost = 0.0;
        double free_structure_cost = 0.0;
        std::string best_free_sequence;
        Verdict verdict = Verdict::Infeasible;
    };

    /// Relative tolerance between planner and free-structure optimum.
    inline constexpr double kOracleRelTol = 1e-6;

    Verdict derive_verdict(std::optional<double> planner, std::optional<double> lattice, std::optional<double> free,
                           const LatticeOptions &lopts) noexcept;

    OracleReport verify_instance(const Configuration &start, const Configuration &goal, const VehicleSpec &spec,
                                 const SolveOptions &opts, const LatticeOptions &lopts,
                                 const FreeStructureOptions &fopts = {});

} // namespace wmd::oracle
