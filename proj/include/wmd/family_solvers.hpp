#pragma once
/**
 * @file   family_solvers.hpp
 * @brief  Per-family boundary-value solvers in the canonical frame.
 *
 * Every solver takes the goal expressed in the canonical frame (start at the
 * origin, heading 0) and returns all candidates of its family that close the
 * boundary conditions within tolerance. Four- and five-segment families carry
 * interior constraints parameterised by a single scalar lambda > 1: the
 * interior turn sweeps 2pi - 2 acos(1/lambda) and every line joining opposite
 * turns has length (mu_L + mu_R) / sqrt(lambda^2 - 1).
 */

#include <vector>

#include "wmd/core.hpp"

namespace wmd
{
    /// Adjoint magnitude parameter; always strictly greater than one.
    class LambdaParam
    {
    public:
        /// Throws std::domain_error unless value > 1 and finite.
        explicit LambdaParam(double value);
        [[nodiscard]] double value() const noexcept { return value_; }

    private:
        double value_;
    };

    struct SolveOptions
    {
        double tol_closure = 1e-8; ///< scaled by max(1, |goal|) of the canonical goal
        double tol_root = 1e-10;
        double tol_angle = 1e-9;
        int lambda_grid = 64;
        int angle_grid = 64;
        int max_iters = 50;
        double lambda_min = 1.0 + 1e-6;
        double lambda_max = 50.0;
        /// Apply the arc bounds of the turn-penalised problem (CC arcs <= pi, SCS arc in (pi, 2pi)).
        bool enforce_turn_bounds = true;

        void validate() const;
        [[nodiscard]] double closure_tolerance(const Configuration &canonical_goal) const noexcept;
    };

    /// Work counters accumulated by the solvers.
    struct SolverStats
    {
        std::size_t lambda_samples = 0;
        std::size_t root_refinements = 0;
        std::size_t iterations = 0;
    };

    double mid_turn_angle_from_lambda(LambdaParam p);
    /// Inverse of mid_turn_angle_from_lambda. Throws std::domain_error unless phi is in (pi, 2pi)
    /// and the resulting lambda is finite.
    LambdaParam lambda_from_mid_turn_angle(double phi);
    double junction_s_length(LambdaParam p, const VehicleSpec &spec);

    std::vector<PathCandidate> solve_one_segment(const Configuration &goal, const VehicleSpec &spec,
                                                 const SolveOptions &opts);
    /// LS, SL, RS, SR, LR and RL.
    std::vector<PathCandidate> solve_two_segment(const Configuration &goal, const VehicleSpec &spec,
                                                 const SolveOptions &opts);
    std::vector<PathCandidate> solve_csc(Family family, const Configuration &goal, const VehicleSpec &spec,
                                         const SolveOptions &opts);
    std::vector<PathCandidate> solve_scs(Family family, const Configuration &goal, const VehicleSpec &spec,
                                         const SolveOptions &opts);
    std::vector<PathCandidate> solve_four_segment(Family family, const Configuration &goal, const VehicleSpec &spec,
                                                  const SolveOptions &opts, SolverStats *stats = nullptr);
    std::vector<PathCandidate> solve_five_segment(Family family, const Configuration &goal, const VehicleSpec &spec,
                                                  const SolveOptions &opts, SolverStats *stats = nullptr);

    namespace detail
    {
        /// Builds a candidate from raw segment measures: wraps arcs into [0, 2pi), clamps
        /// round-off negative lines, and rejects it if closure fails or any measure is invalid.
        std::optional<PathCandidate> make_candidate(Family family, std::vector<Segment> segments,
                                                    const Configuration &goal, const VehicleSpec &spec,
                                                    const SolveOptions &opts);

        /// Appends c unless a candidate of the same family with parameters within 1e-6 is present.
        void push_unique(std::vector<PathCandidate> &out, PathCandidate c);
    } // namespace detail

} // namespace wmd
