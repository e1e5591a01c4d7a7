#include <sphsym/error.hpp>
#include <sphsym/io.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sphsym
{
namespace
{
using nlohmann::json;

json vec_json(const Vec3& v)
{
        return json::array({v.x, v.y, v.z});
}

Vec3 vec_from(const json& j)
{
        if (!j.is_array() || j.size() < 2 || j.size() > 3)
        {
                invalid_argument("set-spec: vectors need 2 or 3 components");
        }
        return {j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
}

json cantor_json(const CantorComponent& c)
{
        return {{"kind", "ternary_staircase"}, {"support", {c.a, c.b}}, {"scale", c.scale}, {"depth", c.depth}};
}

CantorComponent cantor_from(const json& j)
{
        if (j.value("kind", std::string("ternary_staircase")) != "ternary_staircase")
        {
                invalid_argument("profile: unknown Cantor kind '" + j.at("kind").get<std::string>() + "'");
        }
        const json& s = j.at("support");
        return CantorComponent(s.at(0).get<double>(), s.at(1).get<double>(), j.value("scale", 1.0), j.value("depth", 8));
}

json profile_json(const Profile& p)
{
        const BVDecomposition& a = p.alpha_bv();
        json jumps = json::array();
        for (const Jump& j : a.jumps())
        {
                jumps.push_back({{"r", j.r}, {"left", j.left}, {"right", j.right}});
        }
        json alpha = {{"ac_samples", a.ac_values()}, {"jumps", jumps}};
        if (a.cantor())
        {
                alpha["cantor"] = cantor_json(*a.cantor());
        }
        const RadialGrid& g = p.grid();
        return {{"n", p.dimension().value()},
                {"grid", {{"r_min", g.r_min()}, {"r_max", g.r_max()}, {"count", g.count()}}},
                {"alpha", alpha}};
}

std::shared_ptr<const Profile> profile_from(const json& j)
{
        const Dimension n(j.at("n").get<int>());
        const json& g = j.at("grid");
        const RadialGrid grid(g.at("r_min").get<double>(), g.at("r_max").get<double>(), g.at("count").get<int>());
        const json& a = j.at("alpha");
        AlphaSpec spec;
        if (a.contains("constant"))
        {
                spec.ac_samples.assign(grid.count(), a.at("constant").get<double>());
        }
        else
        {
                spec.ac_samples = a.at("ac_samples").get<std::vector<double>>();
        }
        for (const json& x : a.value("jumps", json::array()))
        {
                spec.jumps.push_back({x.at("r").get<double>(), x.at("left").get<double>(), x.at("right").get<double>()});
        }
        if (a.contains("cantor") && !a.at("cantor").is_null())
        {
                spec.cantor = cantor_from(a.at("cantor"));
        }
        return std::make_shared<const Profile>(make_profile(n, grid, std::move(spec)));
}

json process_json(const AngleProcess& p)
{
        json j = {{"theta0", p.theta0}, {"coefficients", p.coefficients}, {"w0", p.w0}, {"w1", p.w1}};
        if (p.flow)
        {
                j["flow"] = cantor_json(*p.flow);
                j["lambda"] = p.lambda;
                j["flow_lo"] = p.flow_lo;
                j["flow_hi"] = p.flow_hi;
        }
        return j;
}

AngleProcess process_from(const json& j)
{
        AngleProcess p;
        p.theta0 = j.value("theta0", 0.0);
        p.coefficients = j.value("coefficients", std::vector<double>{});
        p.w0 = j.value("w0", 0.0);
        p.w1 = j.value("w1", 1.0);
        if (j.contains("flow"))
        {
                p.flow = cantor_from(j.at("flow"));
                p.lambda = j.value("lambda", 0.0);
                p.flow_lo = j.value("flow_lo", p.flow->a);
                p.flow_hi = j.value("flow_hi", p.flow->b);
        }
        return p;
}

json source_json(const DirectionSource& s)
{
        if (const auto* c = std::get_if<ConstantDirection>(&s))
        {
                return {{"kind", "constant"}, {"direction", vec_json(c->direction)}};
        }
        if (const auto* a = std::get_if<AngleProcess>(&s))
        {
                json j = process_json(*a);
                j["kind"] = "angle";
                return j;
        }
        const auto& t = std::get<TiltProcess>(s);
        return {{"kind", "tilt"}, {"azimuth", process_json(t.azimuth)}, {"elevation", process_json(t.elevation)}};
}

DirectionSource source_from(const json& j)
{
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "constant")
        {
                return ConstantDirection{vec_from(j.at("direction"))};
        }
        if (kind == "angle")
        {
                return process_from(j);
        }
        if (kind == "tilt")
        {
                return TiltProcess{process_from(j.at("azimuth")), process_from(j.at("elevation"))};
        }
        invalid_argument("set-spec: unknown direction source '" + kind + "'");
}

json direction_json(const DirectionField& d)
{
        json pieces = json::array();
        for (const DirectionPiece& p : d.pieces())
        {
                pieces.push_back({{"from", p.from},
                                  {"to", p.to},
                                  {"transform", p.transform.m},
                                  {"source", source_json(p.source)}});
        }
        return {{"kind", "pieces"}, {"pieces", pieces}};
}

DirectionField direction_from(const json& j, int n, double r_min, double r_max)
{
        const std::string kind = j.value("kind", std::string("constant"));
        if (kind == "constant")
        {
                return DirectionField::constant(n, r_min, r_max,
                                                j.contains("direction") ? vec_from(j.at("direction")) : kE1);
        }
        if (kind == "rotation")
        {
                return DirectionField::piecewise_rotation(n, r_min, r_max, j.value("breaks", std::vector<double>{}),
                                                          j.at("angles").get<std::vector<double>>());
        }
        if (kind == "cantor_flow")
        {
                const CantorComponent c = cantor_from(j.at("cantor"));
                const json& s = j.value("support", json::array({c.a, c.b}));
                return DirectionField::cantor_flow(n, r_min, r_max, c, j.at("lambda").get<double>(), s.at(0).get<double>(),
                                                   s.at(1).get<double>());
        }
        if (kind == "fourier_random")
        {
                return DirectionField::fourier_random(n, r_min, r_max, j.value("seed", 0u), j.value("amplitude", 1.0),
                                                      j.value("modes", 4));
        }
        if (kind == "pieces")
        {
                std::vector<DirectionPiece> pieces;
                for (const json& p : j.at("pieces"))
                {
                        Mat3 m;
                        if (p.contains("transform"))
                        {
                                m.m = p.at("transform").get<std::array<double, 9>>();
                        }
                        pieces.push_back(
                                {p.at("from").get<double>(), p.at("to").get<double>(), source_from(p.at("source")), m});
                }
                return DirectionField(n, std::move(pieces));
        }
        invalid_argument("set-spec: unknown direction kind '" + kind + "'");
}

template <typename F>
auto guarded(const char* what, F&& f)
{
        try
        {
                return f();
        }
        catch (const json::exception& e)
        {
                invalid_argument(std::string(what) + ": " + e.what());
        }
}
}

std::shared_ptr<const Profile> profile_from_json(const std::string& text)
{
        return guarded("profile", [&] { return profile_from(json::parse(text)); });
}

std::string profile_to_json(const Profile& p)
{
        return profile_json(p).dump(2);
}

CapFieldSet set_from_json(const std::string& text)
{
        return guarded("set-spec",
                       [&]
                       {
                               const json j = json::parse(text);
                               auto p = profile_from(j.at("profile"));
                               const int n = p->dimension().value();
                               const double lo = p->grid().r_min();
                               const double hi = p->grid().r_max();
                               DirectionField d = j.contains("direction") ? direction_from(j.at("direction"), n, lo, hi)
                                                                          : DirectionField::constant(n, lo, hi);
                               return CapFieldSet(std::move(p), std::move(d));
                       });
}

std::string set_to_json(const CapFieldSet& e)
{
        const json j = {{"profile", profile_json(e.profile())}, {"direction", direction_json(e.direction())}};
        return j.dump(2);
}

std::string circular_profile_to_json(const CircularProfile& c)
{
        json layers = json::array();
        for (const Profile& p : c.layers)
        {
                layers.push_back(profile_json(p));
        }
        const json j = {{"n", c.n},
                        {"axis", c.axis},
                        {"layer_origin", c.layer_origin},
                        {"layer_spacing", c.layer_spacing},
                        {"layers", layers}};
        return j.dump(2);
}

std::string read_text(const std::string& path)
{
        std::ifstream in(path);
        if (!in)
        {
                invalid_argument("cannot open '" + path + "' for reading");
        }
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
}

void write_text(const std::string& path, const std::string& text)
{
        std::ofstream out(path);
        if (!out)
        {
                invalid_argument("cannot open '" + path + "' for writing");
        }
        out << text;
        if (text.empty() || text.back() != '\n')
        {
                out << '\n';
        }
}
}
