#ifndef HECKE_HECKEGRAPH_HPP
#define HECKE_HECKEGRAPH_HPP

#include <mutex>

#include "hecke/ehall.hpp"

namespace hecke {

struct HeckeEdge {
    CoherentSheaf source, target;
    BigInt mult;

    bool operator<(const HeckeEdge& o) const {
        if (!(source == o.source)) return source < o.source;
        return target < o.target;
    }
};

struct GraphVertex {
    CoherentSheaf sheaf;
    bool boundary = false;
};

struct HeckeGraphSlice {
    ClosedPointId x;
    int r = 1;
    int rank = 2;
    long long window_lo = 0, window_hi = 0;
    std::vector<GraphVertex> vertices;
    std::vector<HeckeEdge> edges;
};

// The ten-step pipeline: base change into the twisted spherical algebras,
// slope reordering, base change back, and multiplicity extraction at
// v^2 = 1/q.
class Pipeline {
public:
    explicit Pipeline(Engine& engine) : eng_(engine) {}

    Engine& engine() const { return eng_; }
    const EllipticCurve& curve() const { return eng_.curve(); }

    // character-basis expansion of K_x^{r} (slope infinity)
    HallExpression expand_skyscraper(ClosedPointId x, int r) const;

    // character-basis expansion of a vector bundle through its HN blocks
    HallExpression expand_bundle(const CoherentSheaf& E) const;

    // sources of all edges into E: v^{-n r |x|} pi^vec(K_x^r E)
    std::vector<std::pair<CoherentSheaf, BigInt>> incoming_edges(const CoherentSheaf& E, ClosedPointId x,
                                                                 int r) const;

    // outgoing edges of E (the neighbourhood V_{x,r}(E)); sum rule is a hard
    // assertion
    std::vector<HeckeEdge> neighborhood(const CoherentSheaf& E, ClosedPointId x, int r) const;

    static BigInt gaussian_binomial(int n, int r, const BigInt& qx);
    BigInt sum_rule_value(ClosedPointId x, int r, int n) const;
    bool verify_sum_rule(const std::vector<HeckeEdge>& edges, ClosedPointId x, int r, int n) const;

    HeckeGraphSlice full_graph(ClosedPointId x, int r, int n, long long lo, long long hi,
                               unsigned jobs = 1) const;

    // point-basis projection of a normal-ordered expression (step 8)
    struct PGen {
        KVector w;
        ClosedPointId y;
        // point first: same-point factors of one slope must sit adjacent
        bool operator<(const PGen& o) const {
            if (y != o.y) return y < o.y;
            return w < o.w;
        }
        bool operator==(const PGen& o) const { return w == o.w && y == o.y; }
    };
    std::map<std::vector<PGen>, VScalar> collapse_to_points(const HallExpression& normal_form) const;

private:
    HallExpression char_expand_point_gen(const KVector& w, ClosedPointId y) const;
    std::map<CoherentSheaf, VScalar> evaluate_point_terms(const std::map<std::vector<PGen>, VScalar>& terms) const;

    Engine& eng_;
    mutable std::map<std::tuple<std::string, ClosedPointId, int>, std::vector<std::pair<CoherentSheaf, BigInt>>>
        incoming_cache_;
    mutable std::mutex cache_mu_;
};

} // namespace hecke

#endif
