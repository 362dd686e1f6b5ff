#include "hecke/export.hpp"

#include <sstream>

#include <json.hpp>

namespace hecke {

using nlohmann::ordered_json;

std::string graph_to_json(const Session& s, const HeckeGraphSlice& g) {
    const EllipticCurve& curve = *s.curve;
    ordered_json j;
    j["curve"]["q"] = s.cfg.q;
    j["curve"]["coeffs"] = s.cfg.coeffs;
    if (s.cfg.base_point)
        j["curve"]["base_point"] = {s.cfg.base_point->first, s.cfg.base_point->second};
    else
        j["curve"]["base_point"] = "infinity";
    j["operator"]["x"]["degree"] = g.x.degree;
    j["operator"]["x"]["rep"] = curve.cp_str(g.x);
    j["operator"]["r"] = g.r;
    j["rank"] = g.rank;
    j["window"] = {g.window_lo, g.window_hi};
    j["vertices"] = ordered_json::array();
    for (const auto& v : g.vertices) {
        ordered_json vj;
        vj["id"] = v.sheaf.key();
        vj["label"] = display_name(curve, v.sheaf);
        ordered_json hn = ordered_json::array();
        for (const auto& p : v.sheaf.parts())
            hn.push_back({p.cls.r, p.cls.d, curve.cp_str(p.sup), p.weight});
        vj["hn"] = hn;
        if (v.boundary) vj["boundary"] = true;
        j["vertices"].push_back(vj);
    }
    j["edges"] = ordered_json::array();
    for (const auto& e : g.edges) {
        ordered_json ej;
        ej["src"] = e.source.key();
        ej["dst"] = e.target.key();
        ej["mult"] = e.mult.str();
        j["edges"].push_back(ej);
    }
    return j.dump(2) + "\n";
}

std::string graph_to_dot(const Session& s, const HeckeGraphSlice& g) {
    const EllipticCurve& curve = *s.curve;
    std::ostringstream os;
    os << "digraph hecke {\n";
    os << "  // G_{x," << g.r << "}, x = " << curve.cp_str(g.x) << ", rank " << g.rank << "\n";
    os << "  rankdir=LR;\n";
    for (const auto& v : g.vertices) {
        os << "  \"" << v.sheaf.key() << "\" [label=\"" << display_name(curve, v.sheaf) << "\"";
        if (v.boundary) os << ", style=dashed";
        os << "];\n";
    }
    for (const auto& e : g.edges) {
        os << "  \"" << e.source.key() << "\" -> \"" << e.target.key() << "\" [label=\"" << e.mult.str()
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace hecke
