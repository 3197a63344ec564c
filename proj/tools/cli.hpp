/**
 * The `hodge` command-line front end.
 *
 * Exit codes: 0 pass, 1 usage or input error, 2 definite mathematical
 * failure, 3 search exhausted. Reports go to `out` as JSON (default) or
 * text; diagnostics go to `err`.
 */

#ifndef HODGE_TOOLS_CLI_HPP
#define HODGE_TOOLS_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>
#include <CLI11.hpp>
#include "json_io.hpp"

namespace hodge::cli {

using io::json;

enum ExitCode : int { kPass = 0, kUsage = 1, kFailure = 2, kExhausted = 3 };

struct RunConfig
{
    std::string format = "json";
    double tol = kDefaultTol;
    double y_cap = 1048576.0;
    std::size_t samples = 8;
    std::uint64_t seed = 0;
};

struct Outcome
{
    json result = json::object();
    int code = kPass;
    std::string csv;        // text rendering for tabular commands
};

inline int exit_for(OrbitStatus s)
{
    switch (s)
    {
        case OrbitStatus::Ok:        return kPass;
        case OrbitStatus::Exhausted: return kExhausted;
        default:                     return kFailure;
    }
}

/** Errors in the input itself are usage errors; the rest are mathematical verdicts. */
inline int exit_for(ErrorKind k)
{
    switch (k)
    {
        case ErrorKind::InvalidInput:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::UnknownFixture:
        case ErrorKind::Internal:
            return kUsage;
        default:
            return kFailure;
    }
}

inline json jump_dims(const IncreasingFiltration& m)
{
    json out = json::object();
    for (const auto& [k, s] : m.jumps())
        out[std::to_string(k)] = s.dim();
    return out;
}

inline json orbit_check_to_json(const OrbitCheck& c)
{
    json out;
    out["status"] = to_string(c.status);
    out["failed_condition"] = c.failed_condition ? json(*c.failed_condition) : json(nullptr);
    out["witness_threshold"] = c.witness_threshold ? json(*c.witness_threshold) : json(nullptr);
    out["detail"] = c.detail;
    json log = json::array();
    for (const auto& p : c.probe_log)
        log.push_back({{"y", p.y}, {"in_d", p.in_d}});
    out["probe_log"] = log;
    return out;
}

inline std::vector<double> parse_ys(const std::string& text)
{
    std::vector<double> out;
    auto dots = text.find("..");
    try
    {
        if (dots != std::string::npos)
        {
            long a = std::stol(text.substr(0, dots)), b = std::stol(text.substr(dots + 2));
            for (long y = a; y <= b; ++y)
                out.push_back(static_cast<double>(y));
        }
        else
        {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(std::stod(item));
        }
    }
    catch (const std::exception&)
    {
        fail(ErrorKind::InvalidInput, "--ys expects a..b or a comma-separated list, got '" + text + "'");
    }
    if (out.empty())
        fail(ErrorKind::InvalidInput, "--ys is empty");
    return out;
}

inline void render_text(const json& j, const std::string& prefix, std::ostream& out)
{
    if (j.is_object())
    {
        for (const auto& [k, v] : j.items())
            render_text(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    out << prefix << ": " << j.dump() << "\n";
}

/** Runs one invocation; args excludes the program name. */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verification toolkit for degenerating mixed Hodge structures", "hodge"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tol", cfg.tol, "Numerical tolerance")->envname("HODGE_TOL")->check(CLI::PositiveNumber);
    app.add_option("--ycap", cfg.y_cap, "Largest y on the doubling grid (a power of 2)")->envname("HODGE_YCAP");
    app.add_option("--samples", cfg.samples, "Admissibility samples per cone")->envname("HODGE_SAMPLES")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Sampling seed")->envname("HODGE_SEED");

    std::string data_path, filtration_path, matrix_path, fan_path, cone_path, point_path, input_path, ys_text = "1..10",
                directions_text, write_dir;
    bool relative = false, show_face = false, show_zlift = false, absolute = false, want_in_e = false, want_phi = false,
         sharp = false, to_orbit = false, from_orbit = false;
    std::size_t word_length = 0;

    auto* validate = app.add_subcommand("validate", "Validate Hodge data");
    validate->add_option("data", data_path, "Hodge data JSON")->required();

    auto* in_d = app.add_subcommand("in-d", "Membership of a filtration in D");
    in_d->add_option("--data", data_path)->required();
    in_d->add_option("--filtration", filtration_path)->required();

    auto* monodromy = app.add_subcommand("monodromy", "Monodromy weight filtration M(N, w) or M(N, W)");
    monodromy->add_option("--data", data_path)->required();
    monodromy->add_option("--matrix", matrix_path)->required();
    monodromy->add_flag("--relative", relative, "Relative filtration M(N, W)");

    auto* fan_check = app.add_subcommand("fan-check", "Fan conditions and compatibility with Γ");
    fan_check->add_option("--fan", fan_path)->required();
    fan_check->add_option("--data", data_path)->required();
    fan_check->add_option("--word-length", word_length, "Word-ball radius for the compatibility check");

    auto* toric = app.add_subcommand("toric", "Points of toric_σ");
    toric->add_option("--cone", cone_path)->required();
    toric->add_option("--point", point_path)->required();
    toric->add_flag("--show-face", show_face);
    toric->add_flag("--show-zlift", show_zlift);
    toric->add_flag("--absolute", absolute, "Require a point of |toric_σ|");

    auto* orbit_check = app.add_subcommand("orbit-check", "Nilpotent orbit conditions");
    orbit_check->add_option("--cone", cone_path)->required();
    orbit_check->add_option("--filtration", filtration_path)->required();
    orbit_check->add_option("--data", data_path)->required();

    auto* chart = app.add_subcommand("chart", "Membership in E_σ and the map to orbits");
    chart->add_option("--cone", cone_path)->required();
    chart->add_option("--point", point_path)->required();
    chart->add_option("--filtration", filtration_path)->required();
    chart->add_option("--data", data_path)->required();
    chart->add_flag("--in-e-sigma", want_in_e);
    chart->add_flag("--phi", want_phi);
    chart->add_flag("--sharp", sharp, "Use E_σ^♯ and i-orbits");

    auto* log_point = app.add_subcommand("log-point", "Log points and nilpotent orbits");
    log_point->add_option("--input", input_path)->required();
    log_point->add_option("--fan", fan_path);
    log_point->add_option("--data", data_path);
    auto* to = log_point->add_flag("--to-orbit", to_orbit);
    auto* from = log_point->add_flag("--from-orbit", from_orbit);
    to->excludes(from);

    auto* trace = app.add_subcommand("limit-trace", "Chart images approaching the boundary");
    trace->add_option("--cone", cone_path)->required();
    trace->add_option("--filtration", filtration_path)->required();
    trace->add_option("--data", data_path)->required();
    trace->add_option("--ys", ys_text, "a..b or comma-separated values");
    trace->add_option("--directions", directions_text, "One weight per extreme ray (default all 1)");

    auto* fixtures = app.add_subcommand("fixtures", "List or write the shipped fixtures");
    fixtures->add_option("--write", write_dir, "Directory to write the JSON fixtures into");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    const double ycap_log = std::log2(cfg.y_cap);
    if (cfg.y_cap < 1.0 || ycap_log != std::floor(ycap_log))
    {
        err << "error: --ycap must be a power of 2\n";
        return kUsage;
    }
    OrbitSettings settings;
    settings.y_cap = cfg.y_cap;
    settings.tol = cfg.tol;

    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string command;
    try
    {
        auto read_data = [&] { return io::hodge_data_from_json(io::read_json_file(data_path)); };
        auto read_filtration = [&] { return io::filtration_from_json(io::read_json_file(filtration_path), cfg.tol); };
        auto read_cone = [&] { return io::cone_from_json(io::read_json_file(cone_path)); };

        if (*validate)
        {
            command = "validate";
            auto rep = validate_hodge_data(read_data());
            o.result["valid"] = rep.ok();
            o.result["violations"] = json::array();
            for (const auto& v : rep.violations)
                o.result["violations"].push_back({{"code", v.code}, {"detail", v.detail}});
            o.code = rep.ok() ? kPass : kFailure;
        }
        else if (*in_d)
        {
            command = "in-d";
            auto d = read_data();
            auto f = read_filtration();
            auto m = classify_D(f, d, cfg.tol);
            o.result["in_check_domain"] = in_check_domain(f, d, cfg.tol);
            o.result["verdict"] = to_string(m.verdict);
            o.result["in_d"] = m.verdict == Tri::Yes;
            o.result["warnings"] = m.warnings;
            o.code = m.verdict == Tri::Yes ? kPass : kFailure;
        }
        else if (*monodromy)
        {
            command = "monodromy";
            auto d = read_data();
            auto n = io::matrix_from_json(io::read_json_file(matrix_path));
            if (relative)
            {
                auto m = relative_monodromy_filtration(n, d.weight);
                o.result["kind"] = "relative";
                o.result["status"] = m ? "exists" : "absent";
                if (m)
                {
                    o.result["jumps"] = jump_dims(m->filtration);
                    o.result["filtration"] = io::weight_to_json(m->filtration);
                }
                o.code = m ? kPass : kFailure;
            }
            else
            {
                if (d.weight.jumps().size() != 1 || d.weight.jumps().begin()->second.dim() != d.rank)
                    fail(ErrorKind::InvalidInput, "W is not pure; use --relative");
                const int w = d.weight.jumps().begin()->first;
                auto m = monodromy_filtration(n, w);
                o.result["kind"] = "pure";
                o.result["center"] = w;
                o.result["status"] = "exists";
                o.result["jumps"] = jump_dims(m.filtration);
                o.result["filtration"] = io::weight_to_json(m.filtration);
            }
        }
        else if (*fan_check)
        {
            command = "fan-check";
            auto d = read_data();
            auto fi = io::fan_from_json(io::read_json_file(fan_path));
            FanSettings fs;
            fs.samples = cfg.samples;
            fs.seed = cfg.seed;
            if (!d.pairings.empty())
                fs.lambda = &d;
            auto rep = validate_fan(fi.fan, d.weight, fs);
            o.result["valid"] = rep.valid;
            o.result["failures"] = json::array();
            for (const auto& f : rep.failures)
                o.result["failures"].push_back({{"condition", f.condition}, {"cones", f.cones}, {"detail", f.detail}});
            o.result["admissibility"] = json::array();
            for (std::size_t i = 0; i < rep.admissibility.size(); ++i)
            {
                const auto& a = rep.admissibility[i];
                json aj{{"cone", i},
                        {"exists_everywhere_sampled", a.exists_everywhere_sampled},
                        {"vacuous", a.vacuous},
                        {"samples_used", a.samples_used},
                        {"evidence", "sampled"}};
                if (a.filtration)
                    aj["jumps"] = jump_dims(a.filtration->filtration);
                o.result["admissibility"].push_back(aj);
            }
            bool ok = rep.valid;
            if (word_length > 0)
            {
                auto c = check_compatibility(fi.fan, MonodromyGroup{fi.gamma_generators, {}}, word_length);
                json cj{{"compatible", c.compatible}, {"elements_checked", c.elements_checked},
                        {"word_length", c.word_length}, {"evidence", "word ball"}};
                if (c.witness_gamma)
                {
                    cj["witness_gamma"] = io::matrix_to_json(*c.witness_gamma);
                    cj["witness_cone"] = *c.witness_cone;
                }
                o.result["compatibility"] = cj;
                ok = ok && c.compatible;
            }
            o.code = ok ? kPass : kFailure;
        }
        else if (*toric)
        {
            command = "toric";
            auto ci = read_cone();
            ConeChart ch(ci.cone, ci.gamma_generators);
            o.result["dual_basis"] = json::array();
            for (const auto& f : ch.dual().basis)
                o.result["dual_basis"].push_back(io::rvector_to_json(f));
            json hb = json::array();
            for (const auto& h : ch.monoid().hilbert_basis())
                hb.push_back(io::matrix_to_json(ch.monoid().to_matrix(h)));
            o.result["hilbert_basis"] = hb;
            try
            {
                auto q = ch.point(io::toric_values_from_json(io::read_json_file(point_path)), absolute, cfg.tol);
                o.result["valid"] = true;
                if (show_face)
                    o.result["face"] = io::cone_to_json(ch.nilpotent_face(q));
                if (show_zlift)
                {
                    auto z = ch.z_lift(q);
                    o.result["zlift"] = {{"zeta", io::cvector_to_json(z.zeta)},
                                         {"z", io::cmatrix_to_json(z.z)},
                                         {"y", z.y},
                                         {"s_prime", z.s_prime},
                                         {"normal_form", io::cvector_to_json(CVector(z.normal_form.begin(), z.normal_form.end()))}};
                }
            }
            catch (const HodgeError& e)
            {
                if (e.kind() != ErrorKind::InvalidPoint && e.kind() != ErrorKind::NotAbsolutePoint)
                    throw;
                o.result["valid"] = false;
                o.result["reason"] = e.what();
                o.code = kFailure;
            }
        }
        else if (*orbit_check)
        {
            command = "orbit-check";
            auto c = check_nilpotent_orbit(read_cone().cone, read_filtration(), read_data(), settings);
            o.result = orbit_check_to_json(c);
            o.code = exit_for(c.status);
        }
        else if (*chart)
        {
            command = "chart";
            auto ci = read_cone();
            auto d = read_data();
            ConeChart ch(ci.cone, ci.gamma_generators);
            auto values = io::toric_values_from_json(io::read_json_file(point_path));
            ChartPoint p{ch.point(values, sharp, cfg.tol), read_filtration()};
            auto c = sharp ? check_E_sigma_sharp(ch, p, d, settings) : check_E_sigma(ch, p, d, settings);
            o.result["member"] = c.member;
            o.result["space"] = sharp ? "E_sigma_sharp" : "E_sigma";
            o.result["face"] = io::cone_to_json(c.face);
            o.result["orbit_status"] = to_string(c.orbit.status);
            o.result["failed_condition"] = c.orbit.failed_condition ? json(*c.orbit.failed_condition) : json(nullptr);
            if (want_phi && c.member)
                o.result["orbit"] = io::orbit_to_json(sharp ? phi_sharp(ch, p, d, settings) : phi(ch, p, d, settings));
            o.code = exit_for(c.orbit.status);
        }
        else if (*log_point)
        {
            command = "log-point";
            if (to_orbit == from_orbit)
                fail(ErrorKind::InvalidInput, "give exactly one of --to-orbit and --from-orbit");
            if (to_orbit)
            {
                if (fan_path.empty() || data_path.empty())
                    fail(ErrorKind::InvalidInput, "--to-orbit needs --fan and --data");
                auto fi = io::fan_from_json(io::read_json_file(fan_path));
                auto lp = io::log_point_from_json(io::read_json_file(input_path), cfg.tol);
                o.result["orbit"] = io::orbit_to_json(orbit_from_log_point(lp, fi.fan, read_data(), settings));
            }
            else
            {
                auto oi = io::orbit_from_json(io::read_json_file(input_path), cfg.tol);
                auto gamma = oi.gamma_generators;
                if (gamma.empty() && !fan_path.empty())
                    gamma = io::fan_from_json(io::read_json_file(fan_path)).gamma_generators;
                o.result["log_point"] = io::log_point_to_json(log_point_from_orbit(oi.point, gamma));
            }
        }
        else if (*trace)
        {
            command = "limit-trace";
            auto ci = read_cone();
            ConeChart ch(ci.cone, ci.gamma_generators);
            auto ys = parse_ys(ys_text);
            std::vector<double> dirs(ci.cone.dim(), 1.0);
            if (!directions_text.empty())
                dirs = parse_ys(directions_text);
            auto rows = boundary_limit_trace(ch, read_filtration(), read_data(), dirs, ys, settings);
            o.result["rows"] = json::array();
            std::ostringstream csv;
            csv << std::setprecision(17) << "y,distance";
            for (std::size_t i = 0; i < ch.dual().basis.size(); ++i)
                csv << ",re_q" << i << ",im_q" << i;
            csv << "\n";
            for (const auto& r : rows)
            {
                o.result["rows"].push_back({{"y", r.y}, {"distance", r.distance},
                                            {"values", io::cvector_to_json(CVector(r.point.q.values.begin(), r.point.q.values.end()))}});
                csv << r.y << "," << r.distance;
                for (const auto& v : r.point.q.values)
                    csv << "," << v.real() << "," << v.imag();
                csv << "\n";
            }
            o.csv = csv.str();
        }
        else if (*fixtures)
        {
            command = "fixtures";
            o.result["names"] = fixture_names();
            auto files = io::fixture_files();
            json listed = json::array();
            for (const auto& [name, content] : files)
                listed.push_back(name);
            o.result["files"] = listed;
            if (!write_dir.empty())
            {
                std::filesystem::create_directories(write_dir);
                for (const auto& [name, content] : files)
                {
                    std::ofstream f(std::filesystem::path(write_dir) / name);
                    if (!f)
                        fail(ErrorKind::InvalidInput, "cannot write into '" + write_dir + "'");
                    f << io::dump(content);
                }
                o.result["written"] = write_dir;
            }
        }
    }
    catch (const HodgeError& e)
    {
        err << "error: " << e.what() << "\n";
        o.result = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
        o.code = exit_for(e.kind());
        if (command.empty())
            command = app.get_subcommands().front()->get_name();
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    json report;
    report["command"] = command;
    report["settings"] = {{"tol", cfg.tol}, {"y_cap", cfg.y_cap}, {"samples", cfg.samples}, {"seed", cfg.seed}};
    report["result"] = o.result;
    report["exit_code"] = o.code;
    report["timing_ms"] = ms;
    if (cfg.format == "json")
        out << io::dump(report);
    else if (!o.csv.empty() && !o.result.contains("error"))
        out << o.csv;
    else
        render_text(report, "", out);
    return o.code;
}

}   // namespace hodge::cli

#endif
