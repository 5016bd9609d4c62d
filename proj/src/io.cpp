#include "wmd/io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wmd/planner.hpp"

namespace wmd::io
{
    using nlohmann::json;

    namespace
    {
        std::uint64_t splitmix(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        /// Parses "a,b[,c...]" without locale involvement. Empty optional on any malformed field.
        std::optional<std::vector<double>> parse_list(const std::string &text, std::size_t expected)
        {
            std::vector<double> out;
            std::size_t pos = 0;
            while (pos <= text.size())
            {
                const std::size_t comma = std::min(text.find(',', pos), text.size());
                const char *first = text.data() + pos;
                const char *last = text.data() + comma;
                while (first < last && *first == ' ')
                    ++first;
                if (first < last && *first == '+')
                    ++first;
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(first, last, v);
                if (ec != std::errc{} || ptr != last || !std::isfinite(v))
                    return std::nullopt;
                out.push_back(v);
                pos = comma + 1;
            }
            if (out.size() != expected)
                return std::nullopt;
            return out;
        }

        /// Returns -1 when parsing succeeded and the command should continue.
        int parse_args(CLI::App &app, std::vector<std::string> args, std::ostream &out, std::ostream &err)
        {
            std::reverse(args.begin(), args.end());
            try
            {
                app.parse(args);
            }
            catch (const CLI::CallForHelp &)
            {
                out << app.help();
                return kExitOk;
            }
            catch (const CLI::ParseError &e)
            {
                err << "error: " << e.what() << "\n" << app.help();
                return kExitUsage;
            }
            return -1;
        }

        struct PlanFlags
        {
            std::string start;
            std::string goal;
            double rl = 1.0;
            double rr = 1.0;
            double mul = 0.0;
            double mur = 0.0;
            bool deg = false;
            std::string families;
        };

        void add_plan_flags(CLI::App &app, PlanFlags &f)
        {
            app.add_option("--start", f.start, "start pose x,y,theta")->required();
            app.add_option("--goal", f.goal, "goal pose x,y,theta")->required();
            app.add_option("--rl", f.rl, "left turn radius [m]");
            app.add_option("--rr", f.rr, "right turn radius [m]");
            app.add_option("--mul", f.mul, "left turn penalty [m/rad]");
            app.add_option("--mur", f.mur, "right turn penalty [m/rad]");
            app.add_flag("--deg", f.deg, "headings given and displayed in degrees");
            app.add_option("--families", f.families, "comma-separated subset of families to consider");
        }

        std::optional<PlanRequest> build_request(const PlanFlags &f, std::ostream &err)
        {
            const auto s = parse_list(f.start, 3);
            const auto g = parse_list(f.goal, 3);
            if (!s || !g)
            {
                err << "error: poses must be three finite numbers x,y,theta\n";
                return std::nullopt;
            }
            const double k = f.deg ? kPi / 180.0 : 1.0;
            PlanRequest req;
            try
            {
                req.start = Configuration((*s)[0], (*s)[1], (*s)[2] * k);
                req.goal = Configuration((*g)[0], (*g)[1], (*g)[2] * k);
                req.spec = VehicleSpec{f.rl, f.rr, f.mul, f.mur};
                req.spec.validate();
            }
            catch (const std::exception &e)
            {
                err << "error: " << e.what() << "\n";
                return std::nullopt;
            }
            if (!f.families.empty())
            {
                std::stringstream ss(f.families);
                std::string name;
                while (std::getline(ss, name, ','))
                {
                    const auto fam = family_from_name(name);
                    if (!fam)
                    {
                        err << "error: unknown family '" << name << "'\n";
                        return std::nullopt;
                    }
                    req.families.push_back(*fam);
                }
            }
            return req;
        }

        json pose_json(const Configuration &c, bool degrees)
        {
            json j{{"x", c.x()}, {"y", c.y()}, {"heading", c.heading()}};
            if (degrees)
                j["heading_deg"] = rad_to_deg(c.heading());
            return j;
        }

        json spec_json(const VehicleSpec &s)
        {
            return {{"r_left", s.r_left}, {"r_right", s.r_right}, {"mu_left", s.mu_left}, {"mu_right", s.mu_right}};
        }

        bool write_text(const std::string &path, const std::string &text, std::ostream &err)
        {
            std::ofstream f(path, std::ios::binary);
            if (f)
                f << text;
            if (!f)
            {
                err << "error: cannot write '" << path << "'\n";
                return false;
            }
            return true;
        }

        /// Plans, reporting errors. The result is empty on bad input; `code` then holds the exit status.
        std::optional<PlanResult> run_plan(const PlanRequest &req, std::ostream &err, int &code)
        {
            try
            {
                return plan(req);
            }
            catch (const std::exception &e)
            {
                err << "error: " << e.what() << "\n";
                code = kExitUsage;
                return std::nullopt;
            }
        }

        std::string xml_escape(std::string_view s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '&':
                    out += "&amp;";
                    break;
                case '<':
                    out += "&lt;";
                    break;
                case '>':
                    out += "&gt;";
                    break;
                case '"':
                    out += "&quot;";
                    break;
                default:
                    out += c;
                }
            }
            return out;
        }

        double unit_draw(std::uint64_t &state)
        {
            state = splitmix(state);
            return static_cast<double>(state >> 11) * 0x1.0p-53;
        }
    } // namespace

    json segments_to_json(const std::vector<Segment> &segments, bool degrees)
    {
        json arr = json::array();
        for (const auto &s : segments)
        {
            json j{{"kind", std::string(1, kind_char(s.kind))},
                   {"measure", s.measure},
                   {"measure_unit", s.is_arc() ? "rad" : "m"}};
            if (degrees && s.is_arc())
                j["measure_deg"] = rad_to_deg(s.measure);
            arr.push_back(std::move(j));
        }
        return arr;
    }

    json candidate_to_json(const PathCandidate &c, bool degrees)
    {
        json j{{"family", std::string(family_name(c.family))},
               {"segments", segments_to_json(c.segments, degrees)},
               {"cost", c.cost},
               {"residual", {{"dx", c.residual.dx}, {"dy", c.residual.dy}, {"dtheta", c.residual.dtheta}}}};
        if (c.lambda)
            j["lambda"] = *c.lambda;
        return j;
    }

    json plan_to_json(const PlanResult &result, bool all_candidates, bool degrees)
    {
        json j;
        j["mode"] = std::string(mode_name(result.mode));
        if (result.best)
        {
            j["best"] = candidate_to_json(*result.best, degrees);
            j["cost"] = result.best->cost;
            const auto &r = result.best->residual;
            j["residual"] = {{"dx", r.dx}, {"dy", r.dy}, {"dtheta", r.dtheta}};
        }
        else
        {
            j["best"] = nullptr;
            j["cost"] = nullptr;
            j["residual"] = nullptr;
        }

        json cands = json::array();
        if (all_candidates)
        {
            for (const auto &c : result.all_candidates)
                cands.push_back(candidate_to_json(c, degrees));
        }
        else
        {
            // all_candidates is grouped by family and sorted by cost within a family
            for (std::size_t i = 0; i < result.all_candidates.size(); ++i)
                if (i == 0 || result.all_candidates[i].family != result.all_candidates[i - 1].family)
                    cands.push_back(candidate_to_json(result.all_candidates[i], degrees));
        }
        j["candidates"] = std::move(cands);

        const auto &d = result.diagnostics;
        j["diagnostics"] = {{"families_evaluated", d.families_evaluated},
                            {"lambda_samples", d.lambda_samples},
                            {"root_refinements", d.root_refinements},
                            {"solver_iterations", d.solver_iterations},
                            {"widened_retry", d.widened_retry}};
        return j;
    }

    std::string polyline_csv(const Polyline &poly)
    {
        std::string out = "s,x,y,cost\n";
        for (std::size_t i = 0; i < poly.points.size(); ++i)
            out += fmt::format("{:.12g},{:.12g},{:.12g},{:.12g}\n", poly.arc_length[i], poly.points[i].x,
                               poly.points[i].y, poly.cumulative_cost[i]);
        return out;
    }

    std::string render_svg(const Configuration &start, const Configuration &goal, const VehicleSpec &spec,
                           const SvgLayer &path, const std::optional<SvgLayer> &overlay)
    {
        const double step = 0.02 * spec.r_min();
        const Polyline main_line = sample_path(start, path.segments, spec, step);
        std::optional<Polyline> over_line;
        if (overlay)
            over_line = sample_path(start, overlay->segments, spec, step);

        double xmin = std::min(start.x(), goal.x());
        double xmax = std::max(start.x(), goal.x());
        double ymin = std::min(start.y(), goal.y());
        double ymax = std::max(start.y(), goal.y());
        auto grow = [&](const Polyline &p) {
            for (const auto &q : p.points)
            {
                xmin = std::min(xmin, q.x);
                xmax = std::max(xmax, q.x);
                ymin = std::min(ymin, q.y);
                ymax = std::max(ymax, q.y);
            }
        };
        grow(main_line);
        if (over_line)
            grow(*over_line);

        const double extent = std::max({xmax - xmin, ymax - ymin, spec.r_min()});
        const double glyph = 0.06 * extent;
        xmin -= 2.0 * glyph;
        ymin -= 2.0 * glyph;
        xmax += 2.0 * glyph;
        ymax += 2.0 * glyph;

        constexpr double kCanvas = 800.0;
        constexpr double kLegend = 48.0;
        const double scale = kCanvas / std::max(xmax - xmin, ymax - ymin);
        const double width = (xmax - xmin) * scale;
        const double height = (ymax - ymin) * scale;
        auto px = [&](double x) { return (x - xmin) * scale; };
        auto py = [&](double y) { return (ymax - y) * scale; };

        std::string svg;
        svg += fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
                           "viewBox=\"0 0 {0:.3f} {1:.3f}\">\n",
                           width, height + kLegend);
        svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

        auto polyline = [&](const Polyline &p, std::string_view style) {
            if (p.points.size() < 2)
                return;
            svg += "<polyline fill=\"none\" ";
            svg += style;
            svg += " points=\"";
            for (std::size_t i = 0; i < p.points.size(); ++i)
                svg += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", px(p.points[i].x), py(p.points[i].y));
            svg += "\"/>\n";
        };
        if (over_line)
            polyline(*over_line, "stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"8 5\" class=\"overlay\"");
        polyline(main_line, "stroke=\"#1f5fbf\" stroke-width=\"2.5\" class=\"path\"");

        auto pose = [&](const Configuration &c, std::string_view colour, std::string_view cls) {
            const double ux = std::cos(c.heading());
            const double uy = std::sin(c.heading());
            const double tipx = c.x() + glyph * ux;
            const double tipy = c.y() + glyph * uy;
            const double lx = c.x() - 0.5 * glyph * ux - 0.4 * glyph * uy;
            const double ly = c.y() - 0.5 * glyph * uy + 0.4 * glyph * ux;
            const double rx = c.x() - 0.5 * glyph * ux + 0.4 * glyph * uy;
            const double ry = c.y() - 0.5 * glyph * uy - 0.4 * glyph * ux;
            svg += fmt::format("<polygon class=\"{}\" fill=\"{}\" fill-opacity=\"0.8\" stroke=\"black\" "
                               "stroke-width=\"1\" points=\"{:.3f},{:.3f} {:.3f},{:.3f} {:.3f},{:.3f}\"/>\n",
                               cls, colour, px(tipx), py(tipy), px(lx), py(ly), px(rx), py(ry));
        };
        pose(start, "#2e9e44", "start");
        pose(goal, "#c0392b", "goal");

        svg += fmt::format("<text x=\"8\" y=\"{:.3f}\" font-family=\"sans-serif\" font-size=\"14\" "
                           "fill=\"#1f5fbf\">{}</text>\n",
                           height + 18.0, xml_escape(path.label));
        if (overlay)
            svg += fmt::format("<text x=\"8\" y=\"{:.3f}\" font-family=\"sans-serif\" font-size=\"14\" "
                               "fill=\"#888888\">{}</text>\n",
                               height + 38.0, xml_escape(overlay->label));
        svg += "</svg>\n";
        return svg;
    }

    std::vector<Scenario> generate_scenarios(const VerifyConfig &cfg)
    {
        std::vector<Scenario> out;
        out.reserve(static_cast<std::size_t>(std::max(0, cfg.count)));
        const double half = 0.5 * cfg.box;
        for (int i = 0; i < cfg.count; ++i)
        {
            std::uint64_t state = splitmix(cfg.seed) ^ splitmix(static_cast<std::uint64_t>(i) + 0x51ed2701ULL);
            auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_draw(state); };
            Scenario s;
            s.spec.r_left = uniform(cfg.r_min, cfg.r_max);
            s.spec.r_right = uniform(cfg.r_min, cfg.r_max);
            s.spec.mu_left = uniform(cfg.mu_min, cfg.mu_max);
            s.spec.mu_right = uniform(cfg.mu_min, cfg.mu_max);
            const double sx = uniform(-half, half);
            const double sy = uniform(-half, half);
            const double sh = uniform(0.0, kTwoPi);
            const double gx = uniform(-half, half);
            const double gy = uniform(-half, half);
            const double gh = uniform(0.0, kTwoPi);
            s.start = Configuration(sx, sy, sh);
            s.goal = Configuration(gx, gy, gh);
            s.label = fmt::format("instance-{}", i);
            out.push_back(std::move(s));
        }
        return out;
    }

    std::vector<oracle::OracleReport> verify_scenarios(const std::vector<Scenario> &scenarios, std::uint64_t seed,
                                                       unsigned threads)
    {
        std::vector<oracle::OracleReport> reports(scenarios.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto worker = [&]() {
            for (std::size_t i = next++; i < scenarios.size(); i = next++)
            {
                try
                {
                    const auto &sc = scenarios[i];
                    oracle::FreeStructureOptions fopts;
                    fopts.seed = seed;
                    reports[i] = oracle::verify_instance(sc.start, sc.goal, sc.spec, SolveOptions{},
                                                         oracle::default_lattice_options(sc.spec), fopts);
                }
                catch (...)
                {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        };

        const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(scenarios.size())));
        if (n <= 1)
        {
            worker();
        }
        else
        {
            std::vector<std::thread> pool;
            pool.reserve(n);
            for (unsigned t = 0; t < n; ++t)
                pool.emplace_back(worker);
            for (auto &t : pool)
                t.join();
        }
        if (failure)
            std::rethrow_exception(failure);
        return reports;
    }

    json verify_report_json(const VerifyConfig &cfg, const std::vector<Scenario> &scenarios,
                            const std::vector<oracle::OracleReport> &reports)
    {
        json instances = json::array();
        std::size_t counts[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < reports.size(); ++i)
        {
            const auto &r = reports[i];
            const auto &sc = scenarios[i];
            ++counts[static_cast<std::size_t>(r.verdict)];
            json j{{"index", i},
                   {"label", sc.label},
                   {"spec", spec_json(sc.spec)},
                   {"start", pose_json(sc.start, false)},
                   {"goal", pose_json(sc.goal, false)},
                   {"verdict", std::string(oracle::verdict_name(r.verdict))},
                   {"planner_family", r.planner_family},
                   {"planner_cost", r.planner_cost},
                   {"free_structure_sequence", r.best_free_sequence},
                   {"free_structure_cost", r.free_structure_cost},
                   {"lattice_cost", r.lattice_cost}};
            instances.push_back(std::move(j));
        }
        json summary;
        for (auto v : {oracle::Verdict::Consistent, oracle::Verdict::PlannerBeatsOracle,
                       oracle::Verdict::OracleBeatsPlanner, oracle::Verdict::Infeasible})
            summary[std::string(oracle::verdict_name(v))] = counts[static_cast<std::size_t>(v)];

        return {{"seed", cfg.seed},
                {"count", cfg.count},
                {"r_range", {cfg.r_min, cfg.r_max}},
                {"mu_range", {cfg.mu_min, cfg.mu_max}},
                {"box", cfg.box},
                {"all_consistent", counts[0] == reports.size()},
                {"summary", std::move(summary)},
                {"instances", std::move(instances)}};
    }

    unsigned verify_thread_count()
    {
        if (const char *env = std::getenv("WMD_THREADS"))
        {
            unsigned v = 0;
            const std::string_view s(env);
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0)
                return v;
        }
        return std::max(1U, std::thread::hardware_concurrency());
    }

    int cmd_plan(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Plan a minimum-cost path", "wmd plan"};
        PlanFlags f;
        std::string json_path;
        bool all = false;
        add_plan_flags(app, f);
        app.add_option("--json", json_path, "write the JSON result to this file instead of stdout");
        app.add_flag("--all-candidates", all, "list every candidate instead of the best per family");
        if (const int rc = parse_args(app, args, out, err); rc >= 0)
            return rc;

        const auto req = build_request(f, err);
        if (!req)
            return kExitUsage;
        int code = kExitOk;
        const auto result = run_plan(*req, err, code);
        if (!result)
            return code;

        json j = plan_to_json(*result, all, f.deg);
        j["start"] = pose_json(req->start, f.deg);
        j["goal"] = pose_json(req->goal, f.deg);
        j["spec"] = spec_json(req->spec);
        const std::string text = j.dump(2) + "\n";
        if (json_path.empty())
            out << text;
        else if (!write_text(json_path, text, err))
            return kExitUsage;

        if (!result->best)
        {
            err << "no path found\n";
            return kExitNoPath;
        }
        return kExitOk;
    }

    int cmd_sample(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Sample the planned path as a polyline", "wmd sample"};
        PlanFlags f;
        double step = 0.0;
        std::string csv_path;
        add_plan_flags(app, f);
        app.add_option("--step", step, "maximum arc-length spacing [m]")->required();
        app.add_option("--csv", csv_path, "write the CSV to this file instead of stdout");
        if (const int rc = parse_args(app, args, out, err); rc >= 0)
            return rc;
        if (!(step > 0.0) || !std::isfinite(step))
        {
            err << "error: --step must be positive\n";
            return kExitUsage;
        }

        const auto req = build_request(f, err);
        if (!req)
            return kExitUsage;
        int code = kExitOk;
        const auto result = run_plan(*req, err, code);
        if (!result)
            return code;
        if (!result->best)
        {
            err << "no path found\n";
            return kExitNoPath;
        }

        const std::string text = polyline_csv(sample_path(req->start, result->best->segments, req->spec, step));
        if (csv_path.empty())
            out << text;
        else if (!write_text(csv_path, text, err))
            return kExitUsage;
        return kExitOk;
    }

    int cmd_svg(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Render the planned path as SVG", "wmd svg"};
        PlanFlags f;
        std::string svg_path;
        bool compare = false;
        add_plan_flags(app, f);
        app.add_option("--svg", svg_path, "output file")->required();
        app.add_flag("--compare-classical", compare, "overlay the zero-penalty optimum, dashed");
        if (const int rc = parse_args(app, args, out, err); rc >= 0)
            return rc;

        const auto req = build_request(f, err);
        if (!req)
            return kExitUsage;
        int code = kExitOk;
        const auto result = run_plan(*req, err, code);
        if (!result)
            return code;
        if (!result->best)
        {
            err << "no path found\n";
            return kExitNoPath;
        }

        SvgLayer main{result->best->segments,
                      fmt::format("{} cost {:.5f}", family_name(result->best->family), result->best->cost)};
        std::optional<SvgLayer> overlay;
        if (compare)
        {
            PlanRequest creq = *req;
            creq.mode_override = ModeOverride::Classical;
            creq.families.clear();
            const auto classical = run_plan(creq, err, code);
            if (!classical)
                return code;
            if (classical->best)
                overlay = SvgLayer{classical->best->segments,
                                   fmt::format("classical {} cost {:.5f}", family_name(classical->best->family),
                                               path_cost(classical->best->segments, req->spec))};
        }

        if (!write_text(svg_path, render_svg(req->start, req->goal, req->spec, main, overlay), err))
            return kExitUsage;
        return kExitOk;
    }

    int cmd_verify(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Check the planner against the oracles on random scenarios", "wmd verify"};
        VerifyConfig cfg;
        std::string r_range = "0.5,2";
        std::string mu_range = "0,2";
        std::string report_path;
        app.add_option("--seed", cfg.seed, "scenario seed");
        app.add_option("--count", cfg.count, "number of scenarios")->check(CLI::NonNegativeNumber);
        app.add_option("--r-range", r_range, "turn radius range a,b [m]");
        app.add_option("--mu-range", mu_range, "turn penalty range a,b [m/rad]");
        app.add_option("--box", cfg.box, "side of the square holding start and goal [m]");
        app.add_option("--report", report_path, "write the JSON report to this file instead of stdout");
        if (const int rc = parse_args(app, args, out, err); rc >= 0)
            return rc;

        const auto rr = parse_list(r_range, 2);
        const auto mr = parse_list(mu_range, 2);
        if (!rr || !mr || !((*rr)[0] > 0.0) || (*rr)[0] > (*rr)[1] || !((*mr)[0] >= 0.0) || (*mr)[0] > (*mr)[1] ||
            !(cfg.box >= 0.0) || !std::isfinite(cfg.box))
        {
            err << "error: need 0 < r_a <= r_b, 0 <= mu_a <= mu_b and a non-negative box\n";
            return kExitUsage;
        }
        cfg.r_min = (*rr)[0];
        cfg.r_max = (*rr)[1];
        cfg.mu_min = (*mr)[0];
        cfg.mu_max = (*mr)[1];

        const auto scenarios = generate_scenarios(cfg);
        std::vector<oracle::OracleReport> reports;
        try
        {
            reports = verify_scenarios(scenarios, cfg.seed, verify_thread_count());
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }

        const json report = verify_report_json(cfg, scenarios, reports);
        const std::string text = report.dump(2) + "\n";
        if (report_path.empty())
            out << text;
        else if (!write_text(report_path, text, err))
            return kExitUsage;

        const auto consistent = report["summary"]["consistent"].get<std::size_t>();
        if (!report_path.empty())
            out << fmt::format("verify: {} / {} consistent\n", consistent, reports.size());
        return consistent == reports.size() ? kExitOk : kExitInconsistent;
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        static constexpr std::string_view kUsage =
            "usage: wmd <plan|sample|svg|verify> [options]\n"
            "       wmd <command> --help for the options of a command\n";
        if (args.empty())
        {
            err << kUsage;
            return kExitUsage;
        }
        const std::vector<std::string> rest(args.begin() + 1, args.end());
        const std::string &cmd = args.front();
        if (cmd == "plan")
            return cmd_plan(rest, out, err);
        if (cmd == "sample")
            return cmd_sample(rest, out, err);
        if (cmd == "svg")
            return cmd_svg(rest, out, err);
        if (cmd == "verify")
            return cmd_verify(rest, out, err);
        if (cmd == "-h" || cmd == "--help")
        {
            out << kUsage;
            return kExitOk;
        }
        err << "error: unknown command '" << cmd << "'\n" << kUsage;
        return kExitUsage;
    }

} // namespace wmd::io
