#ifndef HECKE_CURVE_HPP
#define HECKE_CURVE_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/finite_field.hpp"

namespace hecke {

// F_q and its extensions F_{q^n}, n <= maxdeg, each built independently on
// the lexicographically smallest irreducible polynomial, with subfield
// embeddings located by root-finding. Runs are reproducible bit for bit.
class FieldTower {
public:
    FieldTower(unsigned p, unsigned k, unsigned maxdeg);

    unsigned p() const { return p_; }
    unsigned k() const { return k_; }
    uint64_t q() const { return q_; }
    unsigned maxdeg() const { return maxdeg_; }

    const GFTable& level(unsigned n) const;
    FElem embed(FElem a, unsigned from, unsigned to) const; // from | to
    FElem frobenius_q(FElem a, unsigned n) const;           // a^q at level n

private:
    unsigned p_, k_, maxdeg_;
    uint64_t q_;
    std::vector<std::unique_ptr<GFTable>> levels_;
    mutable std::map<std::pair<unsigned, unsigned>, std::vector<FElem>> emb_;
    const std::vector<FElem>& embedding(unsigned from, unsigned to) const;
};

struct CurvePoint {
    unsigned level = 1;
    bool inf = true;
    FElem x = 0, y = 0;

    bool operator==(const CurvePoint& o) const {
        return level == o.level && inf == o.inf && (inf || (x == o.x && y == o.y));
    }
    bool operator<(const CurvePoint& o) const {
        if (inf != o.inf) return inf; // infinity sorts first
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

struct ClosedPointId {
    unsigned degree = 0;
    unsigned index = 0;
    bool operator==(const ClosedPointId& o) const { return degree == o.degree && index == o.index; }
    bool operator!=(const ClosedPointId& o) const { return !(*this == o); }
    bool operator<(const ClosedPointId& o) const {
        if (degree != o.degree) return degree < o.degree;
        return index < o.index;
    }
};

struct ClosedPoint {
    unsigned degree;
    std::vector<unsigned> orbit; // indices into the level-`degree` point list
    unsigned rep;                // smallest index of the orbit
};

// Elliptic curve in long Weierstrass form over F_q with a chosen rational
// base point x0; the group law is transported from Pic^0 so that x0 is the
// neutral element. Point sets per extension level are enumerated and cached
// at construction.
class EllipticCurve {
public:
    EllipticCurve(std::shared_ptr<FieldTower> tower, std::array<FElem, 5> a /* a1,a2,a3,a4,a6 */,
                  std::optional<std::pair<FElem, FElem>> base_point /* nullopt = infinity */);

    const FieldTower& tower() const { return *tower_; }
    uint64_t q() const { return tower_->q(); }
    unsigned maxdeg() const { return tower_->maxdeg(); }
    const std::array<FElem, 5>& coeffs() const { return a_; }
    CurvePoint base_point() const { return x0_; }

    // point sets
    const std::vector<CurvePoint>& points(unsigned n) const;
    long long point_count(unsigned n) const; // N_n, from enumeration
    long long hasse_weil_count(unsigned n) const; // N_n from the recursion
    unsigned point_index(const CurvePoint& pt) const;

    bool on_curve(const CurvePoint& pt) const;
    CurvePoint frobenius(const CurvePoint& pt) const;

    // chord-tangent law with infinity neutral
    CurvePoint std_add(const CurvePoint& a, const CurvePoint& b) const;
    CurvePoint std_neg(const CurvePoint& a) const;

    // transported law: x0 neutral
    CurvePoint group_add(const CurvePoint& a, const CurvePoint& b) const;
    CurvePoint group_neg(const CurvePoint& a) const;
    CurvePoint group_mul(const CurvePoint& a, long k) const;
    CurvePoint lift(const CurvePoint& pt, unsigned to) const;

    // Norm_m^n, m | n: oplus of the m-step Frobenius conjugates, result
    // returned at level m.
    CurvePoint point_norm(const CurvePoint& pt, unsigned m) const;

    // closed points
    const std::vector<ClosedPoint>& closed_points(unsigned degree) const;
    std::vector<ClosedPointId> closed_points_up_to(unsigned maxdegree) const;
    CurvePoint rep(ClosedPointId id) const;
    ClosedPointId closed_point_of(const CurvePoint& pt) const; // orbit of pt
    ClosedPointId cp_negate(ClosedPointId id) const;
    ClosedPointId cp_translate(ClosedPointId id, const CurvePoint& w) const; // w at level 1
    CurvePoint cp_norm_to_base(ClosedPointId id) const;
    std::string cp_str(ClosedPointId id) const;

private:
    CurvePoint reduce_level(const CurvePoint& pt) const; // to the smallest field of definition
    void enumerate_level(unsigned n);

    std::shared_ptr<FieldTower> tower_;
    std::array<FElem, 5> a_;
    std::array<FElem, 5> a_at(unsigned n) const;
    CurvePoint x0_;
    std::vector<std::vector<CurvePoint>> pts_;           // per level
    std::vector<std::map<std::pair<FElem, FElem>, unsigned>> idx_;
    std::vector<std::vector<ClosedPoint>> closed_;       // per degree
    std::vector<bool> closed_done_;
};

} // namespace hecke

#endif
