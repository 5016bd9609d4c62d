#pragma once
/**
 * @file   io.hpp
 * @brief  Command-line front end and the JSON / CSV / SVG export formats.
 *
 * Every command takes its arguments as a vector (without the program and
 * subcommand names) and reports through the returned exit status:
 * 0 success, 1 usage or input error, 2 no path, 3 verification inconsistency.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wmd/core.hpp"
#include "wmd/kinematics.hpp"
#include "wmd/oracle.hpp"

namespace wmd::io
{
    enum ExitCode : int
    {
        kExitOk = 0,
        kExitUsage = 1,
        kExitNoPath = 2,
        kExitInconsistent = 3
    };

    struct Scenario
    {
        Configuration start;
        Configuration goal;
        VehicleSpec spec;
        std::string label;
    };

    /// Segment list with measure_unit ("rad" or "m"); arcs also carry measure_deg when degrees is set.
    nlohmann::json segments_to_json(const std::vector<Segment> &segments, bool degrees);
    nlohmann::json candidate_to_json(const PathCandidate &c, bool degrees);

    /// {mode, best, cost, candidates, residual, diagnostics}. Without all_candidates only the
    /// cheapest candidate of each family is listed.
    nlohmann::json plan_to_json(const PlanResult &result, bool all_candidates, bool degrees);

    /// Header `s,x,y,cost`, 12 significant digits, locale independent.
    std::string polyline_csv(const Polyline &poly);

    struct SvgLayer
    {
        std::vector<Segment> segments;
        std::string label;
    };

    /// World-frame rendering with +y up. The optional overlay is drawn dashed underneath the main path.
    std::string render_svg(const Configuration &start, const Configuration &goal, const VehicleSpec &spec,
                           const SvgLayer &path, const std::optional<SvgLayer> &overlay);

    struct VerifyConfig
    {
        std::uint64_t seed = 0;
        int count = 100;
        double r_min = 0.5, r_max = 2.0;
        double mu_min = 0.0, mu_max = 2.0;
        double box = 20.0; ///< side of the square, centred on the origin, holding start and goal positions
    };

    /// Deterministic scenarios: instance i depends only on (seed, i).
    std::vector<Scenario> generate_scenarios(const VerifyConfig &cfg);

    /// Runs verify_instance over the scenarios with up to `threads` workers; output order follows input.
    std::vector<oracle::OracleReport> verify_scenarios(const std::vector<Scenario> &scenarios, std::uint64_t seed,
                                                       unsigned threads);

    nlohmann::json verify_report_json(const VerifyConfig &cfg, const std::vector<Scenario> &scenarios,
                                      const std::vector<oracle::OracleReport> &reports);

    /// WMD_THREADS if set to a positive integer, otherwise the hardware concurrency (at least 1).
    unsigned verify_thread_count();

    int cmd_plan(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
    int cmd_sample(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
    int cmd_svg(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
    int cmd_verify(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    /// Dispatches `plan | sample | svg | verify` from the first argument.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace wmd::io
