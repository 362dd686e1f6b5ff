#include "hecke/ehall.hpp"

#include <algorithm>
#include <sstream>

namespace hecke {

void canonicalize_gens(std::vector<CGen>& gens) {
    // equal-slope generators commute; sort each maximal run
    size_t i = 0;
    while (i < gens.size()) {
        size_t j = i + 1;
        while (j < gens.size() && slope_cmp(gens[i].w, gens[j].w) == 0) ++j;
        std::sort(gens.begin() + i, gens.begin() + j);
        i = j;
    }
}

namespace {

void canonicalize_local(std::vector<KVector>& vs) {
    size_t i = 0;
    while (i < vs.size()) {
        size_t j = i + 1;
        while (j < vs.size() && slope_cmp(vs[i], vs[j]) == 0) ++j;
        std::sort(vs.begin() + i, vs.begin() + j);
        i = j;
    }
}

LocalExpr expr_local_concat(LocalExpr a, const LocalExpr& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

LocalExpr collect_local(const LocalExpr& e) {
    std::map<std::vector<KVector>, VScalar> acc;
    for (const auto& t : e) {
        if (t.coeff.is_zero()) continue;
        auto vs = t.vs;
        auto [it, fresh] = acc.emplace(std::move(vs), t.coeff);
        if (!fresh) it->second += t.coeff;
    }
    LocalExpr out;
    for (auto& [vs, c] : acc)
        if (!c.is_zero()) out.push_back(LocalTerm{c, vs});
    return out;
}

} // namespace

HallExpression expr_add(HallExpression a, const HallExpression& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

HallExpression expr_mul(const HallExpression& a, const HallExpression& b) {
    HallExpression out;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            CTerm t;
            t.coeff = ta.coeff * tb.coeff;
            if (t.coeff.is_zero()) continue;
            t.gens = ta.gens;
            t.gens.insert(t.gens.end(), tb.gens.begin(), tb.gens.end());
            out.push_back(std::move(t));
        }
    return out;
}

HallExpression expr_scale(HallExpression a, const Cyclo& c) {
    for (auto& t : a) t.coeff *= c;
    return a;
}

std::string expr_str(const HallExpression& e) {
    std::ostringstream os;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) os << " + ";
        os << "(" << e[i].coeff.str() << ")";
        for (const auto& g : e[i].gens)
            os << " T_" << g.w.str() << "^{" << g.dressing.level << ":" << g.dressing.index << "}";
    }
    return e.empty() ? "0" : os.str();
}

Engine::Engine(const EllipticCurve& curve, CharTable& chars, SymRing& sym, Options opt)
    : curve_(curve), chars_(chars), sym_(sym), opt_(opt), rng_(opt.chooser_seed) {}

void Engine::spend(long long& budget, long long amount) const {
    budget -= amount;
    if (budget < 0) throw StepBudgetExceeded("normal ordering exceeded the configured step budget");
}

Engine::Tower Engine::tower_of(const CGen& g) const {
    long long gm = g.w.gamma();
    if (static_cast<long long>(g.dressing.level) != gm)
        throw NotAGeneratorOfAnyTower("dressing degree " + std::to_string(g.dressing.level) +
                                      " != gamma " + std::to_string(gm));
    OrbitId prim = chars_.tower_primitive(g.dressing);
    unsigned n = prim.level;
    if (g.w.r % n != 0 || g.w.d % n != 0)
        throw NotAGeneratorOfAnyTower("vector " + g.w.str() + " not divisible by tower degree " +
                                      std::to_string(n));
    return Tower{prim, n};
}

VScalar Engine::c_of(int i) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto it = c_cache_.find(i);
    if (it != c_cache_.end()) return it->second;
    VScalar c = c_coeff(i, curve_.point_count(i));
    c_cache_.emplace(i, c);
    return c;
}

LocalExpr Engine::theta_expand(const KVector& z, unsigned n) const {
    if (!z.in_cone()) throw ConeViolation("theta_expand " + z.str());
    long long m = z.gamma();
    KVector z0{z.r / m, z.d / m};
    VScalar a = VScalar(static_cast<int>(n)) * (VScalar::v_pow(-1) - VScalar::v_pow(1));
    LocalExpr out;
    for (const auto& lam : partitions_of(static_cast<int>(m))) {
        // exp coefficient: prod a / prod mult_j!
        VScalar coef = VScalar(1);
        BigInt mult_fact(1);
        int run = 1;
        for (size_t i = 0; i < lam.size(); ++i) {
            coef *= a;
            if (i + 1 < lam.size() && lam[i + 1] == lam[i])
                mult_fact *= ++run;
            else
                run = 1;
        }
        coef /= VScalar(mult_fact);
        LocalTerm t;
        t.coeff = coef;
        for (auto it = lam.rbegin(); it != lam.rend(); ++it) t.vs.push_back(z0 * (*it));
        canonicalize_local(t.vs);
        out.push_back(std::move(t));
    }
    return out;
}

KVector Engine::choose_split(const KVector& other, const KVector& x) const {
    long long k = x.gamma();
    KVector x0{x.r / k, x.d / k};
    long long D = det2(other, x);
    long long delta = det2(other, x0); // = D / k
    std::vector<KVector> candidates;
    for (long long target : {1LL, -1LL}) {
        // base solution of det2(u, x0) = target
        // u.r * x0.d - u.d * x0.r = target, gcd(x0.d, x0.r) = 1
        long long a = x0.d, b = -x0.r;
        // extended gcd: find (p, q) with p*a + q*b = 1
        long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            long long qt = old_r / r;
            std::swap(old_r -= qt * r, r);
            std::swap(old_s -= qt * s, s);
            std::swap(old_t -= qt * t, t);
        }
        if (old_r != 1 && old_r != -1) continue;
        long long p = old_s, q = old_t;
        if (old_r == -1) {
            p = -p;
            q = -q;
        }
        KVector base{p * target, q * target};
        // slide along the ray so det2(other, u) sits between 0 and D
        for (long long tt = -2 * k - 4; tt <= 2 * k + 4; ++tt) {
            KVector u = base + x0 * tt;
            KVector xu = x - u;
            long long du = det2(other, u), dxu = det2(other, xu);
            auto ok_sign = [&](long long v) { return v == 0 || (v > 0) == (D > 0); };
            if (!ok_sign(du) || !ok_sign(dxu)) continue;
            if (!u.in_cone() || !xu.in_cone()) continue;
            if (collinear(u, x)) continue;
            candidates.push_back(u);
        }
        (void)delta;
    }
    if (candidates.empty())
        throw Error(ErrorKind::Internal,
                    "no split vector for [" + other.str() + ", " + x.str() + "]");
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (opt_.chooser_seed == 0) return candidates.front();
    std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng_)];
}

LocalExpr Engine::bracket_gen_expr(unsigned n, const KVector& g, const LocalExpr& e, long long& budget) const {
    // [t_g, e] by the Leibniz rule
    LocalExpr out;
    for (const auto& term : e) {
        for (size_t i = 0; i < term.vs.size(); ++i) {
            LocalExpr br = bracket_impl(n, g, term.vs[i], budget);
            for (const auto& bt : br) {
                LocalTerm t;
                t.coeff = term.coeff * bt.coeff;
                t.vs.assign(term.vs.begin(), term.vs.begin() + i);
                t.vs.insert(t.vs.end(), bt.vs.begin(), bt.vs.end());
                t.vs.insert(t.vs.end(), term.vs.begin() + i + 1, term.vs.end());
                out.push_back(std::move(t));
            }
        }
    }
    return normal_order_local_impl(n, std::move(out), budget);
}

LocalExpr Engine::bracket_via_split(unsigned n, const KVector& other, const KVector& x, long long& budget) const {
    // write t_x through theta on its ray: t_x = eps c_n^{-1} [t_{x-u}, t_u]
    //   - sum_{lambda != (k)} (n nu')^{l(lambda)-1} / prod mult! prod t_{lambda_i x0}
    // and push [t_other, .] through both parts
    long long k = x.gamma();
    KVector x0{x.r / k, x.d / k};
    KVector u = choose_split(other, x);
    KVector xu = x - u;
    VScalar nu_p = VScalar(static_cast<int>(n)) * (VScalar::v_pow(-1) - VScalar::v_pow(1));
    VScalar eps = VScalar(eps_sign(u, xu));
    VScalar cn_inv = c_of(static_cast<int>(n)).inv();

    LocalExpr out;
    {
        // eps c_n^{-1} ( [[t_other, t_{xu}], t_u] + [t_{xu}, [t_other, t_u]] )
        LocalExpr inner1 = bracket_impl(n, other, xu, budget);
        // [inner1, t_u] = -[t_u, inner1]
        LocalExpr left_part = bracket_gen_expr(n, u, inner1, budget);
        for (auto& t : left_part) t.coeff = -t.coeff;
        LocalExpr inner2 = bracket_impl(n, other, u, budget);
        LocalExpr right_part = bracket_gen_expr(n, xu, inner2, budget);
        for (auto& t : left_part) t.coeff *= eps * cn_inv;
        for (auto& t : right_part) t.coeff *= eps * cn_inv;
        out = expr_local_concat(std::move(left_part), right_part);
    }
    // correction terms from the theta series
    for (const auto& lam : partitions_of(static_cast<int>(k))) {
        if (ptn_length(lam) == 1) continue; // lambda = (k) is t_x itself
        VScalar coef = VScalar(1);
        BigInt mult_fact(1);
        int run = 1;
        for (size_t i = 0; i < lam.size(); ++i) {
            if (i + 1 > 1) coef *= nu_p; // (n nu')^{l-1}
            if (i + 1 < lam.size() && lam[i + 1] == lam[i])
                mult_fact *= ++run;
            else
                run = 1;
        }
        coef /= VScalar(mult_fact);
        LocalExpr prod(1);
        prod[0].coeff = VScalar(1);
        for (auto it = lam.rbegin(); it != lam.rend(); ++it) prod[0].vs.push_back(x0 * (*it));
        canonicalize_local(prod[0].vs);
        LocalExpr br = bracket_gen_expr(n, other, prod, budget);
        for (auto& t : br) t.coeff *= -coef;
        out = expr_local_concat(out, br);
    }
    return normal_order_local_impl(n, std::move(out), budget);
}

LocalExpr Engine::bracket_impl(unsigned n, const KVector& a, const KVector& b, long long& budget) const {
    if (collinear(a, b)) return {};
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        auto it = memo_.find({n, a, b});
        if (it != memo_.end()) return it->second;
    }
    spend(budget, 1);
    LocalExpr result;
    long long interior = pick_interior_count(a, b);
    long long ga = a.gamma(), gb = b.gamma();
    if (interior == 0 && (ga == 1 || gb == 1)) {
        long long other_gamma = gb == 1 ? ga : gb;
        VScalar coef = VScalar(eps_sign(b, a)) * c_of(static_cast<int>(n * other_gamma));
        coef /= VScalar(static_cast<int>(n)) * (VScalar::v_pow(-1) - VScalar::v_pow(1));
        result = theta_expand(a + b, n);
        for (auto& t : result) t.coeff *= coef;
    } else if (interior == 0) {
        // gamma(a) = gamma(b) = gamma(a+b) = 2, |det| = 4
        if (opt_.gamma2_auto) {
            if (b.r > 0) {
                result = bracket_via_split(n, a, b, budget);
            } else {
                result = bracket_via_split(n, b, a, budget);
                for (auto& t : result) t.coeff = -t.coeff;
            }
        } else if (opt_.gamma2.has_value()) {
            long long dt = det2(a, b);
            if (dt != 4 && dt != -4) throw Error(ErrorKind::Internal, "unexpected det in gamma-2 case");
            VScalar sign = dt == -4 ? VScalar(1) : VScalar(-1);
            KVector z{(a.r + b.r) / 2, (a.d + b.d) / 2};
            VScalar c2n = c_of(static_cast<int>(2 * n)), cn = c_of(static_cast<int>(n));
            LocalTerm sq;
            sq.coeff = sign * *opt_.gamma2;
            sq.vs = {z, z};
            LocalTerm lin;
            lin.coeff = sign * c2n * (c2n / cn - VScalar(2));
            lin.vs = {z * 2};
            result = {sq, lin};
        } else {
            throw UnsupportedRelation("empty triangle with all gcds 2 at [" + a.str() + ", " + b.str() +
                                      "]; configure the gamma-2 constant (or 'auto')");
        }
    } else {
        // interior lattice points: decompose the positive-rank side
        if (b.r > 0)
            result = bracket_via_split(n, a, b, budget);
        else if (a.r > 0) {
            result = bracket_via_split(n, b, a, budget);
            for (auto& t : result) t.coeff = -t.coeff;
        } else
            throw Error(ErrorKind::Internal, "two torsion rays are collinear");
    }
    result = collect_local(std::move(result));
    // class conservation
    for (const auto& t : result) {
        KVector s{0, 0};
        for (const auto& v : t.vs) s = s + v;
        if (!(s == a + b)) throw Error(ErrorKind::Internal, "bracket lost grading");
    }
    std::lock_guard<std::recursive_mutex> lk(mu_);
    memo_.emplace(std::make_tuple(n, a, b), result);
    return result;
}

LocalExpr Engine::bracket_local(unsigned n, const KVector& a, const KVector& b) const {
    long long budget = opt_.step_budget;
    return bracket_impl(n, a, b, budget);
}

LocalExpr Engine::normal_order_local_impl(unsigned n, LocalExpr expr, long long& budget) const {
    std::map<std::vector<KVector>, VScalar> acc;
    std::vector<LocalTerm> stack(expr.begin(), expr.end());
    while (!stack.empty()) {
        LocalTerm t = std::move(stack.back());
        stack.pop_back();
        if (t.coeff.is_zero()) continue;
        spend(budget, 1);
        size_t desc = t.vs.size();
        for (size_t i = 0; i + 1 < t.vs.size(); ++i) {
            if (slope_cmp(t.vs[i], t.vs[i + 1]) > 0) {
                desc = i;
                break;
            }
        }
        if (desc == t.vs.size()) {
            canonicalize_local(t.vs);
            auto [it, fresh] = acc.emplace(t.vs, t.coeff);
            if (!fresh) it->second += t.coeff;
            continue;
        }
        KVector a = t.vs[desc], b = t.vs[desc + 1];
        LocalTerm swapped = t;
        std::swap(swapped.vs[desc], swapped.vs[desc + 1]);
        stack.push_back(std::move(swapped));
        LocalExpr br = bracket_impl(n, a, b, budget);
        for (const auto& bt : br) {
            LocalTerm nt;
            nt.coeff = t.coeff * bt.coeff;
            nt.vs.assign(t.vs.begin(), t.vs.begin() + desc);
            nt.vs.insert(nt.vs.end(), bt.vs.begin(), bt.vs.end());
            nt.vs.insert(nt.vs.end(), t.vs.begin() + desc + 2, t.vs.end());
            stack.push_back(std::move(nt));
        }
    }
    LocalExpr out;
    for (auto& [vs, c] : acc)
        if (!c.is_zero()) out.push_back(LocalTerm{c, vs});
    return out;
}

LocalExpr Engine::normal_order_local(unsigned n, LocalExpr expr) const {
    long long budget = opt_.step_budget;
    return normal_order_local_impl(n, std::move(expr), budget);
}

HallExpression Engine::to_global(const LocalExpr& e, const Tower& tower) const {
    HallExpression out;
    for (const auto& t : e) {
        CTerm ct;
        ct.coeff = Cyclo(t.coeff);
        for (const auto& v : t.vs) {
            KVector w = v * tower.n;
            ct.gens.push_back(CGen{w, chars_.norm_orbit(tower.prim, static_cast<unsigned>(w.gamma()))});
        }
        out.push_back(std::move(ct));
    }
    return out;
}

HallExpression Engine::bracket(const CGen& g1, const CGen& g2) const {
    if (collinear(g1.w, g2.w)) return {};
    Tower t1 = tower_of(g1), t2 = tower_of(g2);
    if (!(t1.prim == t2.prim)) return {};
    KVector v1{g1.w.r / t1.n, g1.w.d / t1.n};
    KVector v2{g2.w.r / t1.n, g2.w.d / t1.n};
    return to_global(bracket_local(t1.n, v1, v2), t1);
}

HallExpression Engine::normal_order(const HallExpression& expr) const {
    long long budget = opt_.step_budget;
    std::map<std::vector<CGen>, Cyclo> acc;
    std::vector<CTerm> stack(expr.begin(), expr.end());
    while (!stack.empty()) {
        CTerm t = std::move(stack.back());
        stack.pop_back();
        if (t.coeff.is_zero()) continue;
        spend(budget, 1);
        size_t desc = t.gens.size();
        for (size_t i = 0; i + 1 < t.gens.size(); ++i) {
            if (slope_cmp(t.gens[i].w, t.gens[i + 1].w) > 0) {
                desc = i;
                break;
            }
        }
        if (desc == t.gens.size()) {
            canonicalize_gens(t.gens);
            auto [it, fresh] = acc.emplace(t.gens, t.coeff);
            if (!fresh) it->second += t.coeff;
            continue;
        }
        CGen a = t.gens[desc], b = t.gens[desc + 1];
        CTerm swapped = t;
        std::swap(swapped.gens[desc], swapped.gens[desc + 1]);
        stack.push_back(std::move(swapped));
        for (const auto& bt : bracket(a, b)) {
            CTerm nt;
            nt.coeff = t.coeff * bt.coeff;
            nt.gens.assign(t.gens.begin(), t.gens.begin() + desc);
            nt.gens.insert(nt.gens.end(), bt.gens.begin(), bt.gens.end());
            nt.gens.insert(nt.gens.end(), t.gens.begin() + desc + 2, t.gens.end());
            stack.push_back(std::move(nt));
        }
    }
    HallExpression out;
    for (auto& [gens, c] : acc)
        if (!c.is_zero()) out.push_back(CTerm{c, gens});
    return out;
}

std::vector<KVector> Engine::subdivide(const KVector& v, const KVector& w) const {
    if (collinear(v, w)) throw CollinearInput("subdivide " + v.str() + " " + w.str());
    if (pick_interior_count(v, w) == 0) return {v, w};
    // lattice points of the triangle {alpha v + beta w}, as vectors, ordered
    // angularly from v to w; BFS for the shortest chain, lexicographic
    // tie-break on the point sequence
    long long D = det2(v, w);
    std::vector<KVector> nodes;
    long long rmax = std::max({v.r, w.r, v.r + w.r, 1LL}) + 1;
    long long dlo = std::min({v.d, w.d, v.d + w.d, 0LL}) - 1;
    long long dhi = std::max({v.d, w.d, v.d + w.d, 0LL}) + 1;
    for (long long r = 0; r <= rmax; ++r) {
        for (long long d = dlo; d <= dhi; ++d) {
            KVector z{r, d};
            if (!z.in_cone()) continue;
            long long alpha_num = det2(z, w), beta_num = det2(v, z);
            // alpha = alpha_num/D, beta = beta_num/D must be in [0,1], alpha+beta <= 1
            auto frac_ok = [&](long long num) {
                return D > 0 ? (num >= 0 && num <= D) : (num <= 0 && num >= D);
            };
            if (!frac_ok(alpha_num) || !frac_ok(beta_num)) continue;
            if (D > 0 ? (alpha_num + beta_num > D) : (alpha_num + beta_num < D)) continue;
            nodes.push_back(z);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    auto empty_between = [&](const KVector& a, const KVector& b) {
        if (collinear(a, b)) return false;
        return pick_interior_count(a, b) == 0;
    };
    // BFS layers from v
    std::map<KVector, KVector> parent;
    std::vector<KVector> layer{v};
    parent[v] = v;
    while (!layer.empty()) {
        if (parent.count(w)) break;
        std::vector<KVector> next;
        for (const auto& cur : layer) {
            for (const auto& z : nodes) {
                if (parent.count(z)) continue;
                // keep the angular order v -> w
                if (eps_sign(cur, z) != eps_sign(v, w) && !(z == w)) continue;
                if (!empty_between(cur, z)) continue;
                parent[z] = cur;
                next.push_back(z);
            }
            if (empty_between(cur, w) && !parent.count(w)) {
                parent[w] = cur;
                next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    if (!parent.count(w)) throw Error(ErrorKind::Internal, "no subdivision chain found");
    std::vector<KVector> chain;
    for (KVector z = w; !(z == v); z = parent[z]) chain.push_back(z);
    chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

VScalar Engine::derive_gamma2(unsigned n) const {
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        if (derived_gamma2_ && derived_gamma2_->count(n)) return derived_gamma2_->at(n);
    }
    long long budget = opt_.step_budget;
    LocalExpr r = bracket_via_split(n, KVector{0, 2}, KVector{2, 0}, budget);
    // expect c * t_{(1,1)}^2 + beta * t_{(2,2)}
    VScalar c(0), beta(0);
    for (const auto& t : r) {
        if (t.vs.size() == 2 && t.vs[0] == KVector{1, 1} && t.vs[1] == KVector{1, 1})
            c = t.coeff;
        else if (t.vs.size() == 1 && t.vs[0] == KVector{2, 2})
            beta = t.coeff;
        else
            throw Error(ErrorKind::Internal, "unexpected term in the derived gamma-2 bracket");
    }
    VScalar c2n = c_of(static_cast<int>(2 * n)), cn = c_of(static_cast<int>(n));
    if (!(beta == c2n * (c2n / cn - VScalar(2))))
        throw Error(ErrorKind::Internal, "derived gamma-2 bracket disagrees with the stated companion term");
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (!derived_gamma2_) derived_gamma2_.emplace();
    (*derived_gamma2_)[n] = c;
    return c;
}

} // namespace hecke
