#include <algorithm>
#include <cmath>
#include <limits>

#include "wmd/oracle.hpp"
#include "wmd/planner.hpp"

namespace wmd::oracle
{
    std::string_view verdict_name(Verdict v) noexcept
    {
        switch (v)
        {
        case Verdict::Consistent:
            return "consistent";
        case Verdict::PlannerBeatsOracle:
            return "planner_beats_oracle";
        case Verdict::OracleBeatsPlanner:
            return "oracle_beats_planner";
        case Verdict::Infeasible:
            return "infeasible";
        }
        return "infeasible";
    }

    Verdict derive_verdict(std::optional<double> planner, std::optional<double> lattice, std::optional<double> free,
                           const LatticeOptions &lopts) noexcept
    {
        if (!planner || !lattice || !free)
            return Verdict::Infeasible;
        const double tol = kOracleRelTol * std::max(1.0, *planner);
        if (*free < *planner - tol || *planner > *lattice + lopts.slack(*lattice))
            return Verdict::OracleBeatsPlanner;
        if (*free > *planner + tol)
            return Verdict::PlannerBeatsOracle;
        return Verdict::Consistent;
    }

    OracleReport verify_instance(const Configuration &start, const Configuration &goal, const VehicleSpec &spec,
                                 const SolveOptions &opts, const LatticeOptions &lopts,
                                 const FreeStructureOptions &fopts)
    {
        OracleReport report;

        PlanRequest req;
        req.start = start;
        req.goal = goal;
        req.spec = spec;
        req.options = opts;
        const PlanResult planned = plan(req);
        std::optional<double> planner_cost;
        if (planned.best)
        {
            planner_cost = planned.best->cost;
            report.planner_cost = planned.best->cost;
            report.planner_family = std::string(family_name(planned.best->family));
        }

        const LatticeResult lat = lattice_search(start, goal, spec, lopts);
        std::optional<double> lattice_cost;
        if (lat.feasible)
        {
            lattice_cost = lat.cost;
            report.lattice_cost = lat.cost;
        }

        // Coincident start and goal: the empty word is the free-structure optimum.
        std::optional<FreeStructureResult> best_free;
        std::string best_word;
        const Configuration local = to_canonical(start, goal);
        if (std::hypot(local.x(), local.y()) == 0.0 && wrap_to_pi(local.heading()) == 0.0)
        {
            best_free = FreeStructureResult{};
        }
        else
        {
            for (const auto &seq : enumerate_sequences(5))
            {
                auto r = free_structure_solve(seq, start, goal, spec, fopts);
                if (!r)
                    continue;
                const std::string word = collapsed_word(r->segments);
                const double tol = 1e-9 * std::max(1.0, r->cost);
                const bool better =
                    !best_free || r->cost < best_free->cost - tol ||
                    (r->cost <= best_free->cost + tol &&
                     (word.size() < best_word.size() || (word.size() == best_word.size() && word < best_word)));
                if (better)
                {
                    best_free = std::move(r);
                    best_word = word;
                }
            }
        }
        std::optional<double> free_cost;
        if (best_free)
        {
            free_cost = best_free->cost;
            report.free_structure_cost = best_free->cost;
            report.best_free_sequence = best_word;
        }

        report.verdict = derive_verdict(planner_cost, lattice_cost, free_cost, lopts);
        return report;
    }

} // namespace wmd::oracle
