#include "hecke/config.hpp"

#include <fstream>

#include <json.hpp>

namespace hecke {

using nlohmann::ordered_json;

std::pair<unsigned, unsigned> factor_prime_power(unsigned long q) {
    for (unsigned p = 2; static_cast<unsigned long>(p) <= q; ++p) {
        bool prime = true;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        if (q % p != 0) continue;
        unsigned long t = q;
        unsigned k = 0;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t != 1) throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
        return {p, k};
    }
    throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    RunConfig cfg;
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    try {
        if (j.contains("curve")) {
            const auto& c = j["curve"];
            if (c.contains("q")) cfg.q = c["q"].get<unsigned long>();
            if (c.contains("coeffs")) {
                auto v = c["coeffs"].get<std::vector<long>>();
                if (v.size() != 5) throw ConfigError("curve.coeffs must be [a1,a2,a3,a4,a6]");
                for (int i = 0; i < 5; ++i) cfg.coeffs[i] = v[i];
            }
            if (c.contains("base_point") && !c["base_point"].is_null()) {
                if (c["base_point"].is_string()) {
                    std::string s = c["base_point"].get<std::string>();
                    if (s != "infinity" && s != "inf") throw ConfigError("base_point string must be 'infinity'");
                } else {
                    auto v = c["base_point"].get<std::vector<long>>();
                    if (v.size() != 2) throw ConfigError("base_point must be [x,y] or 'infinity'");
                    cfg.base_point = {v[0], v[1]};
                }
            }
            if (c.contains("max_field_degree")) cfg.max_field_degree = c["max_field_degree"].get<unsigned>();
        }
        if (j.contains("operator")) {
            const auto& o = j["operator"];
            if (o.contains("x")) {
                const auto& x = o["x"];
                if (x.contains("degree")) cfg.point_degree = x["degree"].get<unsigned>();
                if (x.contains("index")) cfg.point_index = x["index"].get<unsigned>();
            }
            if (o.contains("r")) cfg.r = o["r"].get<int>();
        }
        if (j.contains("rank")) cfg.rank = j["rank"].get<int>();
        if (j.contains("window")) {
            auto w = j["window"].get<std::vector<long long>>();
            if (w.size() != 2) throw ConfigError("window must be [lo,hi]");
            cfg.window_lo = w[0];
            cfg.window_hi = w[1];
        }
        if (j.contains("format")) cfg.format = j["format"].get<std::string>();
        if (j.contains("out_prefix")) cfg.out_prefix = j["out_prefix"].get<std::string>();
        if (j.contains("engine")) {
            const auto& e = j["engine"];
            if (e.contains("step_budget")) cfg.step_budget = e["step_budget"].get<long long>();
            if (e.contains("gamma2_constant") && !e["gamma2_constant"].is_null())
                cfg.gamma2 = e["gamma2_constant"].get<std::string>();
            if (e.contains("cache_dir") && !e["cache_dir"].is_null())
                cfg.cache_dir = e["cache_dir"].get<std::string>();
            if (e.contains("jobs")) cfg.jobs = e["jobs"].get<unsigned>();
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.format != "json" && cfg.format != "dot" && cfg.format != "both")
        throw ConfigError("format must be json, dot or both");
    return cfg;
}

std::string RunConfig::to_json_text() const {
    ordered_json j;
    j["curve"]["q"] = q;
    j["curve"]["coeffs"] = coeffs;
    if (base_point)
        j["curve"]["base_point"] = {base_point->first, base_point->second};
    else
        j["curve"]["base_point"] = "infinity";
    j["curve"]["max_field_degree"] = max_field_degree;
    j["operator"]["x"]["degree"] = point_degree;
    j["operator"]["x"]["index"] = point_index;
    j["operator"]["r"] = r;
    j["rank"] = rank;
    j["window"] = {window_lo, window_hi};
    j["format"] = format;
    j["engine"]["step_budget"] = step_budget;
    if (!gamma2.empty()) j["engine"]["gamma2_constant"] = gamma2;
    if (!cache_dir.empty()) j["engine"]["cache_dir"] = cache_dir;
    j["engine"]["jobs"] = jobs;
    return j.dump(2);
}

Session open_session(const RunConfig& cfg) {
    Session s;
    s.cfg = cfg;
    auto [p, k] = factor_prime_power(cfg.q);
    s.tower = std::make_shared<FieldTower>(p, k, cfg.max_field_degree);
    std::array<FElem, 5> a;
    const GFTable& g1 = s.tower->level(1);
    for (int i = 0; i < 5; ++i) {
        long v = cfg.coeffs[i];
        if (v >= 0 && static_cast<unsigned long>(v) < g1.size())
            a[i] = static_cast<FElem>(v);
        else
            a[i] = g1.from_int(v);
    }
    std::optional<std::pair<FElem, FElem>> bp;
    if (cfg.base_point) bp = {static_cast<FElem>(cfg.base_point->first), static_cast<FElem>(cfg.base_point->second)};
    s.curve = std::make_unique<EllipticCurve>(s.tower, a, bp);
    s.chars = std::make_unique<CharTable>(*s.curve);
    s.sym = std::make_unique<SymRing>(8);
    Engine::Options opt;
    opt.step_budget = cfg.step_budget;
    if (cfg.gamma2 == "auto")
        opt.gamma2_auto = true;
    else if (!cfg.gamma2.empty())
        opt.gamma2 = parse_vscalar(cfg.gamma2);
    s.engine = std::make_unique<Engine>(*s.curve, *s.chars, *s.sym, opt);
    s.pipeline = std::make_unique<Pipeline>(*s.engine);
    return s;
}

ClosedPointId Session::operator_point() const {
    ClosedPointId x{cfg.point_degree, cfg.point_index};
    if (x.degree == 0 || x.degree > curve->maxdeg() || x.index >= curve->closed_points(x.degree).size())
        throw ConfigError("operator point " + std::to_string(x.degree) + "." + std::to_string(x.index) +
                          " does not exist on this curve");
    return x;
}

} // namespace hecke
