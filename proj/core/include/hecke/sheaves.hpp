#ifndef HECKE_SHEAVES_HPP
#define HECKE_SHEAVES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hecke/curve.hpp"
#include "hecke/scalar.hpp"

namespace hecke {

// Class in the numerical Grothendieck group, restricted to the cone
// r > 0 or (r = 0 and d > 0).
struct KVector {
    long long r = 0, d = 0;

    bool in_cone() const { return r > 0 || (r == 0 && d > 0); }
    long long gamma() const;
    bool is_torsion() const { return r == 0; }
    KVector operator+(const KVector& o) const { return {r + o.r, d + o.d}; }
    KVector operator-(const KVector& o) const { return {r - o.r, d - o.d}; }
    KVector operator*(long long k) const { return {r * k, d * k}; }
    bool operator==(const KVector& o) const { return r == o.r && d == o.d; }
    bool operator<(const KVector& o) const { return r != o.r ? r < o.r : d < o.d; }
    std::string str() const;
};

long long det2(const KVector& a, const KVector& b); // a.r*b.d - a.d*b.r
int eps_sign(const KVector& a, const KVector& b);
long long euler_form(const KVector& a, const KVector& b); // rk(a)deg(b) - rk(b)deg(a)
bool collinear(const KVector& a, const KVector& b);

// slope comparison: mu(a) ? mu(b), infinity for torsion
int slope_cmp(const KVector& a, const KVector& b);

// interior lattice points of the triangle o, v, v+w via Pick's formula
long long pick_interior_count(const KVector& v, const KVector& w);

// determinant-1 integer matrix sending (n,d) to (0, gcd); row-major 2x2
std::array<long long, 4> sl2_to_vertical(long long n, long long d);
KVector apply_sl2(const std::array<long long, 4>& f, const KVector& v);
std::array<long long, 4> sl2_inverse(const std::array<long long, 4>& f);

// Indecomposable E^{(n,d)}_{(x,l)}: |x| * l = gamma(n,d).
struct IndecompSheaf {
    KVector cls;
    ClosedPointId sup;
    int weight = 1;

    bool operator==(const IndecompSheaf& o) const {
        return cls == o.cls && sup == o.sup && weight == o.weight;
    }
    bool operator<(const IndecompSheaf& o) const;
};

IndecompSheaf make_indecomp(KVector cls, ClosedPointId sup, int weight);
IndecompSheaf atiyah_relabel(const IndecompSheaf& s, const std::array<long long, 4>& f);

// Multiset of indecomposables in canonical order.
class CoherentSheaf {
public:
    CoherentSheaf() = default;
    explicit CoherentSheaf(std::vector<IndecompSheaf> parts);

    const std::vector<IndecompSheaf>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    KVector total_class() const;
    long long rank() const { return total_class().r; }
    long long degree() const { return total_class().d; }
    bool is_vector_bundle() const;

    // slope-grouped components, slopes strictly increasing, torsion last
    std::vector<std::pair<KVector, std::vector<IndecompSheaf>>> hn_decompose() const;
    std::vector<KVector> path_of() const;

    std::string key() const; // canonical id string
    bool operator==(const CoherentSheaf& o) const { return parts_ == o.parts_; }
    bool operator<(const CoherentSheaf& o) const;

private:
    std::vector<IndecompSheaf> parts_;
};

// P(x, r, E): the band between the convex path of E and its translate by
// (0, -r|x|). Contains a candidate path iff every breakpoint stays inside.
class HeckePolygon {
public:
    HeckePolygon(const std::vector<KVector>& upper_path, long long drop);

    bool contains_path(const std::vector<KVector>& path) const;
    long long drop() const { return drop_; }
    const std::vector<std::pair<long long, long long>>& upper_vertices() const { return upper_; }
    // upper boundary value at integer abscissa (exact rational: num/den via slopes);
    // returns 2*f(x) to stay integral at half-integers is not needed since
    // breakpoints are integral: value*den form below
    bool below_upper(long long x, long long y) const;  // y <= f(x)
    bool above_lower(long long x, long long y) const;  // y >= f(x) - drop

private:
    std::vector<std::pair<long long, long long>> upper_; // breakpoints of p(E)
    long long drop_;
};

HeckePolygon hecke_polygon(const CoherentSheaf& E, unsigned point_degree, int r);

// All isomorphism classes of semistable sheaves of a given class: torsion
// decorations through the Atiyah equivalence.
std::vector<CoherentSheaf> semistable_classes(const EllipticCurve& curve, const KVector& cls);

// All rank-n vertex classes whose HN path fits in the polygon with total
// class (n, deg). Candidate targets for a neighbourhood computation.
std::vector<CoherentSheaf> classes_in_polygon(const EllipticCurve& curve, long long n, long long deg,
                                              const HeckePolygon& poly);

// Rank-n bundles whose HN slopes lie in [lo, hi] (vertex window).
std::vector<CoherentSheaf> enumerate_vertices(const EllipticCurve& curve, int n, long long lo, long long hi);
std::vector<CoherentSheaf> enumerate_bun2_vertices(const EllipticCurve& curve, long long lo, long long hi);

// Rank-2 display name in the style dec / trace / E(L) / E_x(L); tuple
// notation for everything else.
std::string display_name(const EllipticCurve& curve, const CoherentSheaf& E);

// E(-x): kernel of the evaluation onto kappa(x)^{rk}; label-level twist
CoherentSheaf twist_down(const EllipticCurve& curve, const CoherentSheaf& E, ClosedPointId x);
// E(x): inverse twist
CoherentSheaf twist_up(const EllipticCurve& curve, const CoherentSheaf& E, ClosedPointId x);

} // namespace hecke

#endif
