#ifndef HECKE_EHALL_HPP
#define HECKE_EHALL_HPP

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/sheaves.hpp"
#include "hecke/symfunc.hpp"

namespace hecke {

// Character-dressed generator T_w^{rho~}; the dressing degree always equals
// gamma(w).
struct CGen {
    KVector w;
    OrbitId dressing;

    bool operator==(const CGen& o) const { return w == o.w && dressing == o.dressing; }
    bool operator<(const CGen& o) const {
        if (!(w == o.w)) return w < o.w;
        return dressing < o.dressing;
    }
};

struct CTerm {
    Cyclo coeff;
    std::vector<CGen> gens;
};

using HallExpression = std::vector<CTerm>;

HallExpression expr_add(HallExpression a, const HallExpression& b);
void canonicalize_gens(std::vector<CGen>& gens); // sort commuting equal-slope runs
HallExpression expr_mul(const HallExpression& a, const HallExpression& b);
HallExpression expr_scale(HallExpression a, const Cyclo& c);
std::string expr_str(const HallExpression& e);

// t_v-monomials of one twisted algebra E^n, coefficients in Q(v)
struct LocalTerm {
    VScalar coeff;
    std::vector<KVector> vs;
};
using LocalExpr = std::vector<LocalTerm>;

// The normal-ordering engine over the twisted spherical algebras: brackets
// are nonzero only within a tower, where they reduce to the path-algebra
// relations; triangles with interior lattice points are handled by a
// recursive decomposition through primitive transversals.
class Engine {
public:
    struct Options {
        long long step_budget = 4000000;
        std::optional<VScalar> gamma2;  // constant of the all-gamma-2 relation
        bool gamma2_auto = false;       // derive it from the other relations
        uint64_t chooser_seed = 0;      // 0 = deterministic split choice
    };

    Engine(const EllipticCurve& curve, CharTable& chars, SymRing& sym, Options opt = {});

    const EllipticCurve& curve() const { return curve_; }
    CharTable& chars() const { return chars_; }
    SymRing& sym() const { return sym_; }
    const Options& options() const { return opt_; }

    struct Tower {
        OrbitId prim;
        unsigned n;
    };
    Tower tower_of(const CGen& g) const;

    VScalar c_of(int i) const; // c_i of this curve

    // coefficient of s^{gamma(z)} of the theta generating series on the ray
    // of z, in tower degree n
    LocalExpr theta_expand(const KVector& z, unsigned n) const;

    // [t_a, t_b] in E^n, normal-ordered
    LocalExpr bracket_local(unsigned n, const KVector& a, const KVector& b) const;

    // [g1, g2] in the Hall algebra (zero across towers)
    HallExpression bracket(const CGen& g1, const CGen& g2) const;

    // slope-nondecreasing normal form with canonical like-term collection
    HallExpression normal_order(const HallExpression& expr) const;
    LocalExpr normal_order_local(unsigned n, LocalExpr expr) const;

    // chain v = z_0, ..., z_s = w of cone vectors with every consecutive
    // triangle free of interior lattice points
    std::vector<KVector> subdivide(const KVector& v, const KVector& w) const;

    // derive the all-gamma-2 constant from the other relations (Jacobi
    // route); also checks the companion t_{2z} coefficient
    VScalar derive_gamma2(unsigned n) const;

    HallExpression to_global(const LocalExpr& e, const Tower& tower) const;

private:
    LocalExpr bracket_impl(unsigned n, const KVector& a, const KVector& b, long long& budget) const;
    LocalExpr bracket_via_split(unsigned n, const KVector& other, const KVector& x, long long& budget) const;
    LocalExpr bracket_gen_expr(unsigned n, const KVector& g, const LocalExpr& e, long long& budget) const;
    LocalExpr normal_order_local_impl(unsigned n, LocalExpr expr, long long& budget) const;
    KVector choose_split(const KVector& other, const KVector& x) const;
    void spend(long long& budget, long long amount) const;

    const EllipticCurve& curve_;
    CharTable& chars_;
    SymRing& sym_;
    Options opt_;
    mutable std::map<std::tuple<unsigned, KVector, KVector>, LocalExpr> memo_;
    mutable std::map<int, VScalar> c_cache_;
    mutable std::optional<std::map<unsigned, VScalar>> derived_gamma2_;
    mutable std::mt19937_64 rng_;
    mutable std::recursive_mutex mu_;
};

} // namespace hecke

#endif
