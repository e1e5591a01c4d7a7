#include <sphsym/equality_analysis.hpp>
#include <sphsym/error.hpp>
#include <sphsym/io.hpp>
#include <sphsym/parallel.hpp>
#include <sphsym/perimeter.hpp>
#include <sphsym/rigidity.hpp>
#include <sphsym/symmetrize.hpp>
#include <sphsym/voxel_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef SPHSYM_VERSION
#define SPHSYM_VERSION "unknown"
#endif

using namespace sphsym;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace
{
constexpr int kOk = 0;
constexpr int kInvalidInput = 2;
constexpr int kToleranceBreach = 3;

struct Config
{
        std::string input;
        std::string profile;
        std::string set;
        std::string voxel;
        std::string out = ".";
        std::string format = "json";
        std::string axes = "1,2";
        std::string kind;
        int grid = 4096;
        int mesh = 512;
        int threads = 1;
        int n = 0;
        std::uint64_t seed = 0;
        double h = 1.0 / 64;
        bool circular = false;
        std::optional<double> r_bar;
        double lambda = 0.5;
        std::optional<double> gamma;
        double angle = kPi / 2;
};

std::string hex(std::uint64_t v)
{
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
}

// FNV-1a over the file bytes.
std::string file_hash(const std::string& path)
{
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : read_text(path))
        {
                h = (h ^ c) * 1099511628211ull;
        }
        return hex(h);
}

std::string num(double x)
{
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
}

class Run
{
        std::string command_;
        const Config& cfg_;
        fs::path dir_;
        std::vector<std::string> written_;

public:
        Run(std::string command, const Config& cfg)
                : command_(std::move(command)),
                  cfg_(cfg),
                  dir_(cfg.out)
        {
                fs::create_directories(dir_);
        }

        std::string path(const std::string& name) const
        {
                return (dir_ / name).string();
        }

        void write(const std::string& name, const std::string& text)
        {
                write_text(path(name), text);
                written_.push_back(name);
        }

        void write_voxels(const std::string& stem, const VoxelSet& v)
        {
                const std::string name = stem + (v.dimension() == 2 ? ".pgm" : ".csv");
                save_voxels(path(name), v);
                written_.push_back(name);
        }

        void write_csv(const std::string& name, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows)
        {
                std::ostringstream s;
                for (std::size_t i = 0; i < header.size(); ++i)
                {
                        s << (i ? "," : "") << header[i];
                }
                s << '\n';
                for (const auto& row : rows)
                {
                        for (std::size_t i = 0; i < row.size(); ++i)
                        {
                                s << (i ? "," : "") << num(row[i]);
                        }
                        s << '\n';
                }
                write(name, s.str());
        }

        // Summary to stdout and <command>.json, then the manifest.
        void finish(const json& summary)
        {
                write(command_ + ".json", summary.dump(2) + "\n");
                std::cout << summary.dump(2) << '\n';
                json inputs = json::object();
                for (const std::string* p : {&cfg_.input, &cfg_.profile, &cfg_.set, &cfg_.voxel})
                {
                        if (!p->empty())
                        {
                                inputs[*p] = file_hash(*p);
                        }
                }
                const json manifest = {
                        {"command", command_},
                        {"version", SPHSYM_VERSION},
                        {"inputs", inputs},
                        {"config",
                         {{"grid", cfg_.grid},
                          {"mesh", cfg_.mesh},
                          {"seed", cfg_.seed},
                          {"threads", cfg_.threads},
                          {"format", cfg_.format},
                          {"h", cfg_.h},
                          {"circular", cfg_.circular},
                          {"axes", cfg_.axes}}},
                        {"outputs", written_},
                };
                write_text(path("manifest.json"), manifest.dump(2) + "\n");
        }
};

VoxelSet load_checked_voxels(const Config& cfg)
{
        VoxelSet v = load_voxels(cfg.voxel);
        if (cfg.n != 0 && cfg.n != v.dimension())
        {
                invalid_argument("--n " + std::to_string(cfg.n) + " does not match the voxel file (n = "
                                 + std::to_string(v.dimension()) + ")");
        }
        return v;
}

int axis_from(const std::string& axes)
{
        if (axes == "1,2")
        {
                return 2;
        }
        if (axes == "1,3")
        {
                return 3;
        }
        invalid_argument("--axes must be 1,2 or 1,3, got " + axes);
}

json report_json(const PerimeterReport& r)
{
        return {{"total", r.total},
                {"ac_part", r.ac_part},
                {"singular_part", r.singular_part},
                {"tangential_total", r.tangential_total},
                {"warnings", r.warnings}};
}

std::vector<std::vector<double>> shell_rows(const PerimeterReport& r)
{
        std::vector<std::vector<double>> rows;
        for (const ShellRow& s : r.per_shell)
        {
                rows.push_back({s.r, s.p, s.tilt, s.integrand, s.cumulative});
        }
        return rows;
}

MeshOptions mesh_of(const Config& cfg)
{
        return {cfg.mesh, cfg.mesh};
}

// Perimeter of a cap-field set with the engine used for it and that engine's budget.
json capfield_perimeter(const CapFieldSet& e, const Config& cfg)
{
        const PerimeterReport r = perimeter_capfield(e, std::nullopt, mesh_of(cfg));
        const Engine engine = e.dimension() == 2 ? Engine::planar_exact : Engine::mesh;
        json j = report_json(r);
        j["engine"] = engine_name(engine);
        j["budget"] = engine_budget(engine, r.total);
        return j;
}

int cmd_symmetrize(const Config& cfg)
{
        Run run("symmetrize", cfg);
        VoxelSet v = [&]
        {
                if (!cfg.voxel.empty())
                {
                        return load_checked_voxels(cfg);
                }
                if (cfg.input.empty())
                {
                        invalid_argument("symmetrize needs --input <set-spec> or --voxel <file>");
                }
                return rasterize(set_from_json(read_text(cfg.input)), cfg.h);
        }();
        json summary = {{"n", v.dimension()}, {"h", v.spacing()}, {"volume", v.volume()}};
        if (cfg.circular)
        {
                const CircularSymmetral c = circular_symmetrize(v, axis_from(cfg.axes), cfg.grid);
                run.write("circular_profile.json", circular_profile_to_json(c.profile) + "\n");
                run.write_voxels("circular_symmetral", c.set);
                summary["kind"] = "circular";
                summary["layers"] = c.profile.layers.size();
                summary["symmetral_volume"] = c.set.volume();
                summary["perimeter"] = perimeter_circular_symmetral(c.profile).total;
        }
        else
        {
                const SphericalSymmetral s = spherical_symmetrize(v, cfg.grid);
                run.write("profile.json", profile_to_json(*s.profile) + "\n");
                run.write("symmetral.json", set_to_json(s.symmetral) + "\n");
                const VoxelSet f = rasterize_like(s.symmetral, v);
                run.write_voxels("symmetral", f);
                summary["kind"] = "spherical";
                summary["symmetral_volume"] = f.volume();
                summary["perimeter"] = perimeter_symmetral(*s.profile).total;
                if (cfg.format == "csv")
                {
                        std::vector<std::vector<double>> rows;
                        const RadialGrid& g = s.profile->grid();
                        for (int i = 0; i < g.count(); ++i)
                        {
                                const double r = g.node(i);
                                rows.push_back({r, s.profile->alpha(r), s.profile->xi(r), s.profile->v(r)});
                        }
                        run.write_csv("profile.csv", {"r", "alpha", "xi", "v"}, rows);
                }
        }
        run.finish(summary);
        return kOk;
}

int cmd_perimeter(const Config& cfg)
{
        Run run("perimeter", cfg);
        json summary;
        if (!cfg.profile.empty())
        {
                const auto p = profile_from_json(read_text(cfg.profile));
                const PerimeterReport r = perimeter_symmetral(*p);
                summary = report_json(r);
                summary["engine"] = engine_name(Engine::formula);
                summary["budget"] = engine_budget(Engine::formula, r.total);
                if (cfg.format == "csv")
                {
                        run.write_csv("per_shell.csv", {"r", "p", "tilt", "integrand", "cumulative"}, shell_rows(r));
                }
        }
        else if (!cfg.set.empty())
        {
                const CapFieldSet e = set_from_json(read_text(cfg.set));
                summary = capfield_perimeter(e, cfg);
                if (cfg.format == "csv")
                {
                        run.write_csv("per_shell.csv", {"r", "p", "tilt", "integrand", "cumulative"},
                                      shell_rows(perimeter_capfield(e, std::nullopt, mesh_of(cfg))));
                }
        }
        else if (!cfg.voxel.empty())
        {
                const VoxelSet v = load_checked_voxels(cfg);
                const double total = perimeter_voxel(v);
                summary = {{"total", total},
                           {"engine", engine_name(Engine::voxel)},
                           {"budget", engine_budget(Engine::voxel, total, v.spacing())}};
        }
        else
        {
                invalid_argument("perimeter needs --profile, --set or --voxel");
        }
        run.finish(summary);
        return kOk;
}

int cmd_check_inequality(const Config& cfg)
{
        Run run("check-inequality", cfg);
        InequalityCheck c;
        if (!cfg.set.empty())
        {
                c = check_inequality(set_from_json(read_text(cfg.set)), std::nullopt, mesh_of(cfg));
        }
        else if (!cfg.voxel.empty())
        {
                c = check_inequality(load_checked_voxels(cfg), cfg.grid);
        }
        else
        {
                invalid_argument("check-inequality needs --set or --voxel");
        }
        const json summary = {{"p_set", c.p_set},
                              {"p_symmetral", c.p_symmetral},
                              {"p_symmetral_formula", c.p_symmetral_formula},
                              {"slack", c.slack},
                              {"budget", c.budget},
                              {"engine", engine_name(c.engine)},
                              {"holds", c.holds}};
        run.finish(summary);
        return c.holds ? kOk : kToleranceBreach;
}

json reason_json(const RigidityReason& reason)
{
        if (const auto* i = std::get_if<IntervalViolation>(&reason))
        {
                return {{"type", "interval_violation"}, {"r", i->r}, {"kind", violation_name(i->kind)}};
        }
        if (const auto* j = std::get_if<JumpReason>(&reason))
        {
                return {{"type", "jump"}, {"r", j->r}, {"alpha_lower", j->lower}, {"alpha_upper", j->upper}};
        }
        const auto& c = std::get<CantorReason>(reason);
        return {{"type", "cantor"}, {"interval", {c.lo, c.hi}}, {"mass", c.mass}};
}

// |P(witness) - P(F_v)| within the engine budget.
json verify_witness(const CapFieldSet& w, const Profile& p, const Config& cfg, bool& ok)
{
        const double pf = perimeter_symmetral(p).total;
        json j = capfield_perimeter(w, cfg);
        const double pw = j["total"].get<double>();
        const double budget = j["budget"].get<double>();
        ok = std::fabs(pw - pf) <= budget;
        json out = {{"p_witness", pw}, {"p_symmetral", pf}, {"budget", budget}, {"extremal", ok}};
        if (w.dimension() == 2)
        {
                out["rotation_distance_bound"] = rotation_distance_bound(w);
        }
        return out;
}

int cmd_rigidity(const Config& cfg)
{
        Run run("rigidity", cfg);
        if (cfg.profile.empty())
        {
                invalid_argument("rigidity needs --profile");
        }
        const auto p = profile_from_json(read_text(cfg.profile));
        const RigidityVerdict v = classify(p);
        json reasons = json::array();
        for (const RigidityReason& r : v.reasons)
        {
                reasons.push_back(reason_json(r));
        }
        json summary = {{"holds", v.holds}, {"reasons", reasons}, {"good_interval", {v.good_lo, v.good_hi}}};
        bool ok = true;
        if (v.witness)
        {
                run.write("witness.json", set_to_json(*v.witness) + "\n");
                summary["witness"] = run.path("witness.json");
                summary["witness_check"] = verify_witness(*v.witness, *p, cfg, ok);
        }
        run.finish(summary);
        return ok ? kOk : kToleranceBreach;
}

int cmd_counterexample(const Config& cfg)
{
        Run run("counterexample", cfg);
        if (cfg.profile.empty())
        {
                invalid_argument("counterexample needs --profile");
        }
        const auto p = profile_from_json(read_text(cfg.profile));
        const RigidityVerdict v = classify(p);
        const auto find_r = [&](auto pick) -> double
        {
                if (cfg.r_bar)
                {
                        return *cfg.r_bar;
                }
                for (const RigidityReason& r : v.reasons)
                {
                        if (const auto x = pick(r))
                        {
                                return *x;
                        }
                }
                invalid_argument("counterexample: the profile has no suitable radius; pass --r");
        };
        std::optional<CapFieldSet> e;
        json summary = {{"kind", cfg.kind}};
        if (cfg.kind == "jump")
        {
                const double r = find_r([](const RigidityReason& x) -> std::optional<double>
                                        {
                                                if (const auto* j = std::get_if<JumpReason>(&x))
                                                {
                                                        return j->r;
                                                }
                                                return std::nullopt;
                                        });
                const ApproxLimits l = approx_limits(*p, r);
                const double gamma = cfg.gamma.value_or(0.5 * cfg.lambda * (l.upper - l.lower));
                e = counterexample_jump(p, r, cfg.lambda, gamma);
                summary["r"] = r;
                summary["lambda"] = cfg.lambda;
                summary["gamma"] = gamma;
        }
        else if (cfg.kind == "disconnect")
        {
                const double r = find_r([](const RigidityReason& x) -> std::optional<double>
                                        {
                                                if (const auto* i = std::get_if<IntervalViolation>(&x))
                                                {
                                                        return i->r;
                                                }
                                                return std::nullopt;
                                        });
                const Mat3 rot = p->dimension().value() == 2 ? planar_rotation(cfg.angle)
                                                             : axis_rotation(kE3, cfg.angle);
                e = counterexample_disconnect(p, r, rot);
                summary["r"] = r;
                summary["angle"] = cfg.angle;
        }
        else if (cfg.kind == "cantor")
        {
                e = counterexample_cantor(p, cfg.lambda).set();
                summary["lambda"] = cfg.lambda;
        }
        else
        {
                invalid_argument("--kind must be jump, disconnect or cantor");
        }
        run.write("set.json", set_to_json(*e) + "\n");
        summary["set"] = run.path("set.json");
        bool ok = true;
        summary["check"] = verify_witness(*e, *p, cfg, ok);
        run.finish(summary);
        return ok ? kOk : kToleranceBreach;
}

int cmd_equality(const Config& cfg)
{
        Run run("equality-analyze", cfg);
        const EqualityOptions options{std::max(1, cfg.grid / 16), 2048};
        const auto scores_json = [](const EqualityScores& s, double tol)
        {
                return json{{"slices_are_caps", s.slices_are_caps},
                            {"normal_constancy", s.normal_constancy},
                            {"shells", s.shells},
                            {"excluded", s.excluded},
                            {"tolerance", tol},
                            {"extremal_shape", s.slices_are_caps <= tol && s.normal_constancy <= tol}};
        };
        const auto trace_csv = [&](const DirectionTrace& t)
        {
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < t.r.size(); ++i)
                {
                        rows.push_back({t.r[i], t.alpha[i], t.d[i].x, t.d[i].y, t.d[i].z, t.b[i].x, t.b[i].y, t.b[i].z,
                                        t.degenerate[i] ? 1.0 : 0.0});
                }
                run.write_csv("trace.csv", {"r", "alpha", "d1", "d2", "d3", "b1", "b2", "b3", "degenerate"}, rows);
        };
        json summary;
        if (!cfg.set.empty())
        {
                const CapFieldSet e = set_from_json(read_text(cfg.set));
                const RadialRange range = RadialRange::open(e.r_min(), e.r_max());
                summary["scores"] = scores_json(verify_equality_conditions(e, range, options), kExactScoreTolerance);
                const OdeReport ode = verify_ode(e, range);
                summary["ode"] = {{"max_residual", ode.max_residual},
                                  {"max_direction_drift", ode.max_direction_drift},
                                  {"constant_direction", ode.constant_direction},
                                  {"excluded", ode.excluded}};
                trace_csv(direction_trace(e, range, cfg.grid));
                std::vector<std::vector<double>> rows;
                for (const OdeRow& r : ode.rows)
                {
                        rows.push_back({r.r, r.b_derivative.x, r.b_derivative.y, r.b_derivative.z, r.rhs.x, r.rhs.y,
                                        r.rhs.z, r.residual});
                }
                run.write_csv("ode.csv", {"r", "db1", "db2", "db3", "rhs1", "rhs2", "rhs3", "residual"}, rows);
        }
        else if (!cfg.voxel.empty())
        {
                const VoxelSet v = load_checked_voxels(cfg);
                const RadialRange range = RadialRange::open(0, v.extent());
                summary["scores"] = scores_json(verify_equality_conditions(v, range, options), kSampledScoreTolerance);
                trace_csv(direction_trace(v, range, cfg.grid));
        }
        else
        {
                invalid_argument("equality-analyze needs --set or --voxel");
        }
        run.finish(summary);
        return kOk;
}
}

int main(int argc, char** argv)
{
        CLI::App app{"Spherical symmetrisation, perimeter and rigidity tool"};
        app.set_version_flag("--version", SPHSYM_VERSION);
        app.require_subcommand(1);
        Config cfg;

        const auto common = [&](CLI::App* c)
        {
                c->add_option("--out", cfg.out, "Output directory")->capture_default_str();
                c->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
                c->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
                c->add_option("--seed", cfg.seed, "Random seed recorded in the manifest");
                c->add_option("--grid", cfg.grid, "Shell/direction samples")->check(CLI::PositiveNumber);
                c->add_option("--mesh", cfg.mesh, "Mesh resolution of the n = 3 engine")->check(CLI::Range(3, 1 << 14));
        };
        const auto voxel_opts = [&](CLI::App* c)
        {
                c->add_option("--voxel", cfg.voxel, "Voxel file (.pgm for n = 2, .csv for n = 3)")
                        ->check(CLI::ExistingFile);
                c->add_option("--n", cfg.n, "Expected dimension of the voxel file")->check(CLI::IsMember({2, 3}));
        };

        CLI::App* sym = app.add_subcommand("symmetrize", "Spherical or circular symmetrisation");
        common(sym);
        voxel_opts(sym);
        sym->add_option("--input", cfg.input, "Set-spec JSON to rasterise")->check(CLI::ExistingFile);
        sym->add_option("--spacing", cfg.h, "Raster spacing for --input")->check(CLI::PositiveNumber);
        sym->add_flag("--circular", cfg.circular, "Circular instead of spherical symmetrisation");
        sym->add_option("--axes", cfg.axes, "Circle plane axes: 1,2 or 1,3");

        CLI::App* per = app.add_subcommand("perimeter", "Perimeter of a symmetral, cap-field set or voxel set");
        common(per);
        voxel_opts(per);
        per->add_option("--profile", cfg.profile, "Profile JSON")->check(CLI::ExistingFile);
        per->add_option("--set", cfg.set, "Set-spec JSON")->check(CLI::ExistingFile);

        CLI::App* ineq = app.add_subcommand("check-inequality", "P(E) >= P(F_v) check");
        common(ineq);
        voxel_opts(ineq);
        ineq->add_option("--set", cfg.set, "Set-spec JSON")->check(CLI::ExistingFile);

        CLI::App* rig = app.add_subcommand("rigidity", "Rigidity classification of a profile");
        common(rig);
        rig->add_option("--profile", cfg.profile, "Profile JSON")->required()->check(CLI::ExistingFile);

        CLI::App* cex = app.add_subcommand("counterexample", "Build an extremal set that is not a rotation of F_v");
        common(cex);
        cex->add_option("--kind", cfg.kind, "jump, disconnect or cantor")
                ->required()
                ->check(CLI::IsMember({"jump", "disconnect", "cantor"}));
        cex->add_option("--profile", cfg.profile, "Profile JSON")->required()->check(CLI::ExistingFile);
        cex->add_option("--r", cfg.r_bar, "Radius of the jump or disconnection");
        cex->add_option("--lambda", cfg.lambda, "Fraction in (0, 1)");
        cex->add_option("--gamma", cfg.gamma, "Rotation angle at the jump");
        cex->add_option("--angle", cfg.angle, "Rotation angle for disconnect");

        CLI::App* eq = app.add_subcommand("equality-analyze", "Equality-case conditions and direction trace");
        common(eq);
        voxel_opts(eq);
        eq->add_option("--set", cfg.set, "Set-spec JSON")->check(CLI::ExistingFile);

        try
        {
                app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp& e)
        {
                return app.exit(e);
        }
        catch (const CLI::CallForVersion& e)
        {
                return app.exit(e);
        }
        catch (const CLI::ParseError& e)
        {
                app.exit(e);
                return kInvalidInput;
        }

        set_thread_count(cfg.threads);
        const std::map<CLI::App*, int (*)(const Config&)> commands{
                {sym, cmd_symmetrize}, {per, cmd_perimeter},      {ineq, cmd_check_inequality},
                {rig, cmd_rigidity},   {cex, cmd_counterexample}, {eq, cmd_equality},
        };
        try
        {
                for (const auto& [sub, run] : commands)
                {
                        if (sub->parsed())
                        {
                                return run(cfg);
                        }
                }
        }
        catch (const InvalidArgument& e)
        {
                std::cerr << "invalid input: " << e.what() << '\n';
                return kInvalidInput;
        }
        catch (const ToleranceBreach& e)
        {
                std::cerr << "tolerance breach: " << e.what() << '\n';
                return kToleranceBreach;
        }
        catch (const fs::filesystem_error& e)
        {
                std::cerr << "file error: " << e.what() << '\n';
                return kInvalidInput;
        }
        return 1;
}
