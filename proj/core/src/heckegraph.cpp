#include "hecke/heckegraph.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace hecke {

namespace {

void canonicalize_pgens(std::vector<Pipeline::PGen>& gens) {
    size_t i = 0;
    while (i < gens.size()) {
        size_t j = i + 1;
        while (j < gens.size() && slope_cmp(gens[i].w, gens[j].w) == 0) ++j;
        std::sort(gens.begin() + i, gens.begin() + j);
        i = j;
    }
}

} // namespace

HallExpression Pipeline::char_expand_point_gen(const KVector& w, ClosedPointId y) const {
    // T_{w,y} = |y| N_d^{-1} sum_rho rho(-y) T_w^rho, d = gamma(w)
    unsigned d = static_cast<unsigned>(w.gamma());
    if (d % y.degree != 0) return {}; // T_{w,y} = 0 unless |y| | gamma(w)
    const auto& chars = eng_.chars();
    const auto& curve = eng_.curve();
    ClosedPointId ny = curve.cp_negate(y);
    VScalar pre = VScalar(BigInt(y.degree), BigInt(curve.point_count(d)));
    HallExpression out;
    for (unsigned oi = 0; oi < chars.orbits(d).size(); ++oi) {
        OrbitId o{d, oi};
        Cyclo coeff = chars.orbit_value(o, ny).scaled(pre);
        if (coeff.is_zero()) continue;
        out.push_back(CTerm{coeff, {CGen{w, o}}});
    }
    return out;
}

HallExpression Pipeline::expand_skyscraper(ClosedPointId x, int r) const {
    if (r < 1) throw Error(ErrorKind::Internal, "expand_skyscraper: r < 1");
    int e = static_cast<int>(x.degree);
    SymExpansion newton = eng_.sym().newton_e_to_p(r);
    HallExpression out;
    VScalar front = VScalar::v_pow(e * r * (r - 1)); // u^{r(r-1)}, u = v^e
    for (const auto& [lam, c] : newton) {
        // Psi^{-1}(p_j) = j/[je] T_{(0,je),x}
        HallExpression term{CTerm{Cyclo(front * c), {}}};
        for (int part : lam) {
            VScalar f = VScalar(part) / qint(part * e);
            HallExpression gen = char_expand_point_gen(KVector{0, static_cast<long long>(part) * e}, x);
            term = expr_mul(term, expr_scale(std::move(gen), Cyclo(f)));
        }
        for (auto& t : term) canonicalize_gens(t.gens);
        out = expr_add(std::move(out), term);
    }
    return out;
}

HallExpression Pipeline::expand_bundle(const CoherentSheaf& E) const {
    if (!E.is_vector_bundle()) throw Error(ErrorKind::Internal, "expand_bundle: not a vector bundle");
    auto blocks = E.hn_decompose();
    // v^{sum_{i<j} <C_i, C_j>}
    long long exp_sum = 0;
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j) exp_sum += euler_form(blocks[i].first, blocks[j].first);
    HallExpression out{CTerm{Cyclo(VScalar::v_pow(static_cast<int>(exp_sum))), {}}};

    for (const auto& [cls, parts] : blocks) {
        long long g = cls.gamma();
        KVector prim{cls.r / g, cls.d / g};
        // group the block by support point: weights form the partition
        std::map<ClosedPointId, Partition> by_point;
        for (const auto& p : parts) by_point[p.sup].push_back(p.weight);
        for (auto& [y, lam] : by_point) {
            std::sort(lam.begin(), lam.end(), std::greater<int>());
            int e = static_cast<int>(y.degree);
            // K_y^{(lambda)} = u^{-2 n(lambda)} Psi^{-1}(P_lambda), transported to the ray of cls
            SymExpansion P_in_p = eng_.sym().hl_in_power(lam, e);
            VScalar front = VScalar::v_pow(-2 * e * ptn_n(lam));
            HallExpression block;
            for (const auto& [mu, c] : P_in_p) {
                HallExpression term{CTerm{Cyclo(front * c), {}}};
                for (int part : mu) {
                    VScalar f = VScalar(part) / qint(part * e);
                    KVector w = prim * (static_cast<long long>(part) * e);
                    HallExpression gen = char_expand_point_gen(w, y);
                    term = expr_mul(term, expr_scale(std::move(gen), Cyclo(f)));
                }
                block = expr_add(std::move(block), term);
            }
            out = expr_mul(out, block);
        }
    }
    for (auto& t : out) canonicalize_gens(t.gens);
    return out;
}

std::map<std::vector<Pipeline::PGen>, VScalar> Pipeline::collapse_to_points(
    const HallExpression& normal_form) const {
    const auto& chars = eng_.chars();
    const auto& curve = eng_.curve();
    std::map<std::vector<PGen>, Cyclo> acc;
    for (const auto& term : normal_form) {
        // expand each T_w^rho as sum over closed points with |y| | gamma(w)
        std::vector<std::pair<std::vector<PGen>, Cyclo>> partial{{{}, term.coeff}};
        for (const auto& g : term.gens) {
            unsigned d = static_cast<unsigned>(g.w.gamma());
            std::vector<std::pair<PGen, Cyclo>> options;
            for (unsigned e = 1; e <= d; ++e) {
                if (d % e != 0) continue;
                for (unsigned i = 0; i < curve.closed_points(e).size(); ++i) {
                    ClosedPointId y{e, i};
                    Cyclo val = chars.orbit_value(g.dressing, y);
                    if (!val.is_zero()) options.push_back({PGen{g.w, y}, val});
                }
            }
            std::vector<std::pair<std::vector<PGen>, Cyclo>> next;
            next.reserve(partial.size() * options.size());
            for (const auto& [gens, coeff] : partial)
                for (const auto& [pg, val] : options) {
                    auto gl = gens;
                    gl.push_back(pg);
                    next.push_back({std::move(gl), coeff * val});
                }
            partial = std::move(next);
        }
        for (auto& [gens, coeff] : partial) {
            canonicalize_pgens(gens);
            auto [it, fresh] = acc.emplace(std::move(gens), coeff);
            if (!fresh) it->second += coeff;
        }
    }
    std::map<std::vector<PGen>, VScalar> out;
    for (auto& [gens, coeff] : acc) {
        if (coeff.is_zero()) continue;
        out.emplace(gens, coeff.rational_part()); // orthogonality collapse must be exact
    }
    return out;
}

std::map<CoherentSheaf, VScalar> Pipeline::evaluate_point_terms(
    const std::map<std::vector<PGen>, VScalar>& terms) const {
    // steps 9-10: group same-slope same-point runs, multiply them in the
    // Macdonald ring, concatenate across runs with the Euler-form power
    std::map<CoherentSheaf, VScalar> out;
    for (const auto& [gens, coeff] : terms) {
        struct Run {
            KVector total{0, 0};
            KVector prim{0, 0};
            ClosedPointId y;
            Partition p_parts; // m_i / e per factor
        };
        std::vector<Run> runs;
        for (const auto& pg : gens) {
            long long g = pg.w.gamma();
            KVector prim{pg.w.r / g, pg.w.d / g};
            if (!runs.empty() && runs.back().y == pg.y && slope_cmp(runs.back().total, pg.w) == 0) {
                runs.back().total = runs.back().total + pg.w;
                runs.back().p_parts.push_back(static_cast<int>(g / pg.y.degree));
            } else {
                Run r;
                r.total = pg.w;
                r.prim = prim;
                r.y = pg.y;
                r.p_parts = {static_cast<int>(g / pg.y.degree)};
                runs.push_back(std::move(r));
            }
        }
        long long cross = 0;
        for (size_t i = 0; i < runs.size(); ++i)
            for (size_t j = i + 1; j < runs.size(); ++j) cross += euler_form(runs[i].total, runs[j].total);
        VScalar base = coeff * VScalar::v_pow(static_cast<int>(-cross));

        // per-run expansions: scalars prod [m_i]e/m_i, then p -> P
        std::vector<std::vector<std::pair<std::vector<IndecompSheaf>, VScalar>>> expanded;
        for (const auto& run : runs) {
            int e = static_cast<int>(run.y.degree);
            VScalar pre(1);
            for (int part : run.p_parts) pre *= qint(part * e) * VScalar(BigInt(e), BigInt(part));
            Partition mu = run.p_parts;
            std::sort(mu.begin(), mu.end(), std::greater<int>());
            std::vector<std::pair<std::vector<IndecompSheaf>, VScalar>> opts;
            if (mu.size() == 1) {
                // single factor: direct psi-inverse expansion of p_{mu_1}
                SymExpansion ex = eng_.sym().psi_inverse_p(mu[0], e);
                for (const auto& [lam, c] : ex) {
                    std::vector<IndecompSheaf> parts;
                    for (int part : lam)
                        parts.push_back(make_indecomp(run.prim * (static_cast<long long>(part) * e), run.y, part));
                    opts.push_back({std::move(parts), pre * c});
                }
            } else {
                // product of power sums in P basis, P_nu -> u^{-2n(nu)} K^{(nu)}
                SymExpansion in_P = eng_.sym().p_to_hl(mu, e);
                for (const auto& [nu, c] : in_P) {
                    std::vector<IndecompSheaf> parts;
                    for (int part : nu)
                        parts.push_back(make_indecomp(run.prim * (static_cast<long long>(part) * e), run.y, part));
                    VScalar s = pre * c * VScalar::v_pow(-2 * e * ptn_n(nu));
                    opts.push_back({std::move(parts), s});
                }
            }
            expanded.push_back(std::move(opts));
        }
        // cartesian product across runs
        std::vector<std::pair<std::vector<IndecompSheaf>, VScalar>> combos{{{}, base}};
        for (const auto& opts : expanded) {
            std::vector<std::pair<std::vector<IndecompSheaf>, VScalar>> next;
            next.reserve(combos.size() * opts.size());
            for (const auto& [parts, c] : combos)
                for (const auto& [add, ca] : opts) {
                    auto np = parts;
                    np.insert(np.end(), add.begin(), add.end());
                    next.push_back({std::move(np), c * ca});
                }
            combos = std::move(next);
        }
        for (auto& [parts, c] : combos) {
            if (c.is_zero()) continue;
            CoherentSheaf H(std::move(parts));
            auto [it, fresh] = out.emplace(std::move(H), c);
            if (!fresh) it->second += c;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::vector<std::pair<CoherentSheaf, BigInt>> Pipeline::incoming_edges(const CoherentSheaf& E,
                                                                       ClosedPointId x, int r) const {
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = incoming_cache_.find({E.key(), x, r});
        if (it != incoming_cache_.end()) return it->second;
    }
    const auto& curve = eng_.curve();
    int n = static_cast<int>(E.rank());
    std::vector<std::pair<CoherentSheaf, BigInt>> result;
    if (r == n) {
        // determinant-twist shortcut: single extension of E by kappa(x)^n
        result.push_back({twist_up(curve, E, x), BigInt(1)});
    } else {
        HallExpression K = expand_skyscraper(x, r);
        HallExpression B = expand_bundle(E);
        HallExpression product = expr_mul(K, B);
        HallExpression nf = eng_.normal_order(product);

        // class conservation and the vector-bundle projection
        KVector want = E.total_class() + KVector{0, static_cast<long long>(r) * x.degree};
        HallExpression vec_part;
        for (const auto& t : nf) {
            KVector s{0, 0};
            bool has_torsion = false;
            for (const auto& g : t.gens) {
                s = s + g.w;
                has_torsion |= g.w.is_torsion();
            }
            if (!(s == want)) throw Error(ErrorKind::Internal, "normal form lost the grading");
            if (!has_torsion) vec_part.push_back(t);
        }

        auto points = collapse_to_points(vec_part);
        auto sheaves = evaluate_point_terms(points);

        VScalar rescale = VScalar::v_pow(-n * r * static_cast<int>(x.degree));
        for (const auto& [H, c] : sheaves) {
            BigRat m = (c * rescale).eval_at_curve(static_cast<unsigned long>(curve.q()));
            if (boost::multiprecision::denominator(m) != 1 || m < 0)
                throw NonIntegerMultiplicity(H.key() + ": " + (c * rescale).str());
            BigInt mi = boost::multiprecision::numerator(m);
            if (mi == 0) continue;
            // containment theorem: p(E) lies in the polygon of the source
            HeckePolygon poly = hecke_polygon(H, x.degree, r);
            if (!poly.contains_path(E.path_of()))
                throw Error(ErrorKind::Internal, "polygon containment violated by " + H.key());
            result.push_back({H, mi});
        }
    }
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::lock_guard<std::mutex> lk(cache_mu_);
    incoming_cache_.emplace(std::make_tuple(E.key(), x, r), result);
    return result;
}

BigInt Pipeline::gaussian_binomial(int n, int r, const BigInt& qx) {
    BigInt num(1), den(1);
    for (int j = r + 1; j <= n; ++j) num *= boost::multiprecision::pow(qx, j) - 1;
    for (int j = 1; j <= n - r; ++j) den *= boost::multiprecision::pow(qx, j) - 1;
    if (num % den != 0) throw Error(ErrorKind::Internal, "Grassmannian count not integral");
    return num / den;
}

BigInt Pipeline::sum_rule_value(ClosedPointId x, int r, int n) const {
    BigInt qx = boost::multiprecision::pow(BigInt(curve().q()), x.degree);
    return gaussian_binomial(n, r, qx);
}

bool Pipeline::verify_sum_rule(const std::vector<HeckeEdge>& edges, ClosedPointId x, int r, int n) const {
    BigInt total(0);
    for (const auto& e : edges) total += e.mult;
    return total == sum_rule_value(x, r, n);
}

std::vector<HeckeEdge> Pipeline::neighborhood(const CoherentSheaf& E, ClosedPointId x, int r) const {
    const auto& curve = eng_.curve();
    int n = static_cast<int>(E.rank());
    if (r < 1 || r > n) throw Error(ErrorKind::Internal, "neighborhood: r out of range");
    std::vector<HeckeEdge> edges;
    if (r == n) {
        edges.push_back(HeckeEdge{E, twist_down(curve, E, x), BigInt(1)});
    } else {
        HeckePolygon poly = hecke_polygon(E, x.degree, r);
        long long target_deg = E.degree() - static_cast<long long>(r) * x.degree;
        auto candidates = classes_in_polygon(curve, n, target_deg, poly);
        for (const auto& T : candidates) {
            for (const auto& [H, m] : incoming_edges(T, x, r)) {
                if (H == E) edges.push_back(HeckeEdge{E, T, m});
            }
        }
    }
    if (!verify_sum_rule(edges, x, r, n)) {
        std::ostringstream os;
        os << "sum rule failed at " << E.key() << " x=" << curve.cp_str(x) << " r=" << r << ": edges";
        for (const auto& e : edges) os << " [" << e.target.key() << " m=" << e.mult.str() << "]";
        os << " expected " << sum_rule_value(x, r, n).str();
        throw SumRuleViolation(os.str());
    }
    return edges;
}

HeckeGraphSlice Pipeline::full_graph(ClosedPointId x, int r, int n, long long lo, long long hi,
                                     unsigned jobs) const {
    const auto& curve = eng_.curve();
    HeckeGraphSlice slice;
    slice.x = x;
    slice.r = r;
    slice.rank = n;
    slice.window_lo = lo;
    slice.window_hi = hi;
    auto vertices = enumerate_vertices(curve, n, lo, hi);

    std::vector<std::vector<HeckeEdge>> per_vertex(vertices.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < vertices.size(); ++i) per_vertex[i] = neighborhood(vertices[i], x, r);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::mutex err_mu;
        std::exception_ptr err;
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= vertices.size()) return;
                    try {
                        per_vertex[i] = neighborhood(vertices[i], x, r);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!err) err = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    std::map<std::string, GraphVertex> vmap;
    for (const auto& v : vertices) vmap[v.key()] = GraphVertex{v, false};
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (const auto& e : per_vertex[i]) {
            slice.edges.push_back(e);
            if (!vmap.count(e.target.key())) vmap[e.target.key()] = GraphVertex{e.target, true};
        }
    }
    for (auto& [k, v] : vmap) slice.vertices.push_back(v);
    std::sort(slice.edges.begin(), slice.edges.end());
    std::sort(slice.vertices.begin(), slice.vertices.end(), [](const GraphVertex& a, const GraphVertex& b) {
        if (a.sheaf.degree() != b.sheaf.degree()) return a.sheaf.degree() < b.sheaf.degree();
        return a.sheaf < b.sheaf;
    });
    return slice;
}

} // namespace hecke
