#ifndef HECKE_CHARACTERS_HPP
#define HECKE_CHARACTERS_HPP

#include <map>
#include <mutex>
#include <vector>

#include "hecke/curve.hpp"
#include "hecke/cyclo.hpp"

namespace hecke {

// Invariant-factor data of Pic^0(X_n) = X(F_{q^n}), with a discrete-log
// table over the enumerated points. At most two cyclic factors d1 | d2.
struct AbelianStructure {
    unsigned level = 1;
    std::vector<unsigned> factors;              // (d2) or (d1, d2) with d1 | d2
    std::vector<CurvePoint> gens;               // aligned with factors
    unsigned exponent = 1;                      // conductor of character values
    std::vector<std::array<unsigned, 2>> dlog;  // per point index; unused slot = 0
    unsigned order = 1;

    unsigned char_count() const { return order; }
};

struct Character {
    unsigned level = 1;
    std::array<unsigned, 2> c{0, 0}; // exponents against the factors
};

struct OrbitId {
    unsigned level = 0;
    unsigned index = 0;
    bool operator==(const OrbitId& o) const { return level == o.level && index == o.index; }
    bool operator<(const OrbitId& o) const {
        if (level != o.level) return level < o.level;
        return index < o.index;
    }
};

struct CharOrbit {
    unsigned level;
    std::vector<unsigned> members; // character indices
    unsigned rep;                  // smallest member
    bool primitive;                // orbit size == level
};

// Character tables of Pic^0(X_n) for all n up to the field tower bound,
// built lazily per degree: Frobenius orbits, primitivity, norms between
// levels, orbit-averaged values at closed points, and the resolution of
// every orbit into the unique primitive tower it belongs to.
class CharTable {
public:
    explicit CharTable(const EllipticCurve& curve);

    const EllipticCurve& curve() const { return curve_; }
    const AbelianStructure& structure(unsigned n) const;

    unsigned char_count(unsigned n) const { return structure(n).char_count(); }
    Character character(unsigned n, unsigned index) const;
    unsigned char_index(const Character& chi) const;

    Cyclo char_value(const Character& chi, const CurvePoint& pt) const;
    unsigned frobenius_char(unsigned n, unsigned index) const;

    const std::vector<CharOrbit>& orbits(unsigned n) const;
    OrbitId orbit_of_char(unsigned n, unsigned char_index) const;
    std::vector<OrbitId> primitive_orbits(unsigned n) const;

    // chi composed with Norm_m^n for m | n (degree-m character to degree n)
    unsigned norm_char(unsigned m, unsigned char_index, unsigned n) const;
    OrbitId norm_orbit(OrbitId o, unsigned n) const;

    // Frobenius-averaged value of an orbit at a closed point; |x| must
    // divide the orbit level.
    Cyclo orbit_value(OrbitId o, ClosedPointId x) const;

    // unique (primitive orbit, tower degree) with Norm = the given orbit
    OrbitId tower_primitive(OrbitId o) const;

    // Fourier transforms for a fixed vector of gcd d: coefficients over
    // character orbits of degree d <-> coefficients over closed points of
    // degree dividing d.
    std::map<ClosedPointId, Cyclo> to_point_basis(unsigned d, const std::map<OrbitId, Cyclo>& f) const;
    std::map<OrbitId, Cyclo> to_char_basis(unsigned d, const std::map<ClosedPointId, Cyclo>& g) const;

private:
    struct Level {
        AbelianStructure st;
        std::vector<unsigned> frob;          // character index -> character index
        std::vector<CharOrbit> orbits;
        std::vector<unsigned> orbit_of;      // character index -> orbit index
        std::map<unsigned, OrbitId> tower;   // orbit index -> primitive tower
        bool built = false;
    };
    Level& level(unsigned n) const;
    void build(unsigned n) const;

    const EllipticCurve& curve_;
    mutable std::vector<Level> levels_;
    mutable std::map<std::pair<OrbitId, ClosedPointId>, Cyclo> value_cache_;
    mutable std::recursive_mutex mu_;
};

} // namespace hecke

#endif
