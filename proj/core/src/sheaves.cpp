#include "hecke/sheaves.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace hecke {

long long KVector::gamma() const { return std::gcd(r < 0 ? -r : r, d < 0 ? -d : d); }

std::string KVector::str() const {
    std::ostringstream os;
    os << "(" << r << "," << d << ")";
    return os.str();
}

long long det2(const KVector& a, const KVector& b) { return a.r * b.d - a.d * b.r; }

int eps_sign(const KVector& a, const KVector& b) {
    long long dt = det2(a, b);
    return dt > 0 ? 1 : dt < 0 ? -1 : 0;
}

long long euler_form(const KVector& a, const KVector& b) { return a.r * b.d - b.r * a.d; }

bool collinear(const KVector& a, const KVector& b) { return det2(a, b) == 0; }

int slope_cmp(const KVector& a, const KVector& b) {
    // compare d/r with infinity for r = 0; both vectors in the cone
    if (a.r == 0 && b.r == 0) return 0;
    if (a.r == 0) return 1;
    if (b.r == 0) return -1;
    long long lhs = a.d * b.r, rhs = b.d * a.r;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

long long pick_interior_count(const KVector& v, const KVector& w) {
    if (collinear(v, w)) throw CollinearInput(v.str() + " " + w.str());
    long long dt = det2(v, w);
    if (dt < 0) dt = -dt;
    long long s = dt - v.gamma() - w.gamma() - (v + w).gamma() + 2;
    if (s < 0 || s % 2 != 0) throw Error(ErrorKind::Internal, "Pick count inconsistency");
    return s / 2;
}

std::array<long long, 4> sl2_to_vertical(long long n, long long d) {
    if (n == 0 && d == 0) throw ConeViolation("sl2_to_vertical(0,0)");
    if (d == 0) return {0, -1, 1, 0}; // axis flip
    long long g = std::gcd(n < 0 ? -n : n, d < 0 ? -d : d);
    // f = [[d/g, -n/g], [alpha, beta]] with alpha n + beta d = g, det = 1
    long long a = n / g, b = d / g;
    // extended gcd for alpha*a + beta*b = 1
    long long x0 = 0, x1 = 1, y0 = 1, y1 = 0, r0 = b, r1 = a;
    while (r1 != 0) {
        long long qt = r0 / r1;
        std::swap(r0 -= qt * r1, r1);
        std::swap(x0 -= qt * x1, x1);
        std::swap(y0 -= qt * y1, y1);
    }
    // r0 = gcd = +-1 with y0*a + x0*b = r0
    long long alpha = y0, beta = x0;
    if (r0 < 0) {
        alpha = -alpha;
        beta = -beta;
    }
    // canonical: smallest non-negative alpha modulo b when b != 0
    if (b != 0) {
        long long bb = b < 0 ? -b : b;
        long long k = ((alpha % bb) + bb) % bb;
        long long shift = (alpha - k) / b;
        alpha -= shift * b;
        beta += shift * a;
    }
    return {d / g, -n / g, alpha, beta};
}

KVector apply_sl2(const std::array<long long, 4>& f, const KVector& v) {
    return {f[0] * v.r + f[1] * v.d, f[2] * v.r + f[3] * v.d};
}

std::array<long long, 4> sl2_inverse(const std::array<long long, 4>& f) {
    return {f[3], -f[1], -f[2], f[0]};
}

IndecompSheaf make_indecomp(KVector cls, ClosedPointId sup, int weight) {
    if (!cls.in_cone()) throw ConeViolation("indecomposable class " + cls.str());
    if (static_cast<long long>(sup.degree) * weight != cls.gamma())
        throw Error(ErrorKind::Internal, "label invariant |x| l = gamma broken for " + cls.str());
    return IndecompSheaf{cls, sup, weight};
}

IndecompSheaf atiyah_relabel(const IndecompSheaf& s, const std::array<long long, 4>& f) {
    KVector img = apply_sl2(f, s.cls);
    if (!img.in_cone()) throw ConeViolation("relabel image " + img.str());
    return make_indecomp(img, s.sup, s.weight);
}

bool IndecompSheaf::operator<(const IndecompSheaf& o) const {
    int sc = slope_cmp(cls, o.cls);
    if (sc != 0) return sc < 0;
    if (!(cls == o.cls)) return cls < o.cls;
    if (sup != o.sup) return sup < o.sup;
    return weight < o.weight;
}

CoherentSheaf::CoherentSheaf(std::vector<IndecompSheaf> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end());
}

KVector CoherentSheaf::total_class() const {
    KVector t{0, 0};
    for (const auto& p : parts_) t = t + p.cls;
    return t;
}

bool CoherentSheaf::is_vector_bundle() const {
    for (const auto& p : parts_)
        if (p.cls.is_torsion()) return false;
    return !parts_.empty();
}

std::vector<std::pair<KVector, std::vector<IndecompSheaf>>> CoherentSheaf::hn_decompose() const {
    std::vector<std::pair<KVector, std::vector<IndecompSheaf>>> out;
    for (const auto& p : parts_) {
        if (!out.empty() && slope_cmp(out.back().second.front().cls, p.cls) == 0) {
            out.back().first = out.back().first + p.cls;
            out.back().second.push_back(p);
        } else {
            out.push_back({p.cls, {p}});
        }
    }
    return out;
}

std::vector<KVector> CoherentSheaf::path_of() const {
    std::vector<KVector> path;
    for (const auto& [cls, parts] : hn_decompose()) path.push_back(cls);
    return path;
}

std::string CoherentSheaf::key() const {
    std::ostringstream os;
    for (size_t i = 0; i < parts_.size(); ++i) {
        const auto& p = parts_[i];
        if (i) os << "+";
        os << "E^" << p.cls.str() << "_(" << p.sup.degree << "." << p.sup.index << "," << p.weight << ")";
    }
    return os.str();
}

bool CoherentSheaf::operator<(const CoherentSheaf& o) const { return parts_ < o.parts_; }

HeckePolygon::HeckePolygon(const std::vector<KVector>& upper_path, long long drop) : drop_(drop) {
    long long x = 0, y = 0;
    upper_.push_back({0, 0});
    for (const auto& seg : upper_path) {
        x += seg.r;
        y += seg.d;
        upper_.push_back({x, y});
    }
}

bool HeckePolygon::below_upper(long long x, long long y) const {
    // y <= f(x) along the piecewise-linear upper boundary
    for (size_t i = 0; i + 1 < upper_.size(); ++i) {
        auto [x0, y0] = upper_[i];
        auto [x1, y1] = upper_[i + 1];
        if (x < x0 || x > x1 || x0 == x1) continue;
        // y <= y0 + (x-x0)(y1-y0)/(x1-x0)
        return (y - y0) * (x1 - x0) <= (x - x0) * (y1 - y0);
    }
    return false; // outside [0, rk]
}

bool HeckePolygon::above_lower(long long x, long long y) const {
    for (size_t i = 0; i + 1 < upper_.size(); ++i) {
        auto [x0, y0] = upper_[i];
        auto [x1, y1] = upper_[i + 1];
        if (x < x0 || x > x1 || x0 == x1) continue;
        return (y + drop_ - y0) * (x1 - x0) >= (x - x0) * (y1 - y0);
    }
    return false;
}

bool HeckePolygon::contains_path(const std::vector<KVector>& path) const {
    // breakpoints of both chains are integral, so comparing the two
    // piecewise-linear functions at every integer abscissa is exact
    std::vector<std::pair<long long, long long>> cand;
    long long x = 0, y = 0;
    cand.push_back({0, 0});
    for (const auto& seg : path) {
        x += seg.r;
        y += seg.d;
        cand.push_back({x, y});
    }
    if (x != upper_.back().first) return false;
    auto eval = [](const std::vector<std::pair<long long, long long>>& chain, long long xq,
                   long long& num, long long& den) -> bool {
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            auto [x0, y0] = chain[i];
            auto [x1, y1] = chain[i + 1];
            if (xq < x0 || xq > x1 || x0 == x1) continue;
            num = y0 * (x1 - x0) + (xq - x0) * (y1 - y0);
            den = x1 - x0;
            return true;
        }
        return false;
    };
    for (long long xq = 0; xq <= upper_.back().first; ++xq) {
        long long pn, pd, un, ud;
        if (!eval(cand, xq, pn, pd)) return false;
        if (!eval(upper_, xq, un, ud)) return false;
        if (pn * ud > un * pd) return false;                    // above the roof
        if (pn * ud < (un - drop_ * ud) * pd) return false;     // below the floor
    }
    return true;
}

HeckePolygon hecke_polygon(const CoherentSheaf& E, unsigned point_degree, int r) {
    return HeckePolygon(E.path_of(), static_cast<long long>(point_degree) * r);
}

namespace {

// multisets {(y_i, lambda_i)} with sum |y_i| |lambda_i| = g, mapped through
// the slope equivalence to indecomposables on the ray of cls
void decorate(const EllipticCurve& curve, const KVector& cls, long long budget,
              std::vector<ClosedPointId> pool, size_t pool_at, std::vector<IndecompSheaf>& acc,
              std::vector<CoherentSheaf>& out) {
    if (budget == 0) {
        out.push_back(CoherentSheaf(acc));
        return;
    }
    long long g = cls.gamma();
    KVector prim{cls.r / g, cls.d / g};
    for (size_t pi = pool_at; pi < pool.size(); ++pi) {
        ClosedPointId y = pool[pi];
        if (y.degree > budget) continue;
        long long maxw = budget / y.degree;
        for (long long w = 1; w <= maxw; ++w) {
            for (const auto& lam : partitions_of(static_cast<int>(w))) {
                std::vector<IndecompSheaf> add;
                bool ok = true;
                for (int part : lam) {
                    long long sub = static_cast<long long>(part) * y.degree;
                    KVector sc = prim * sub;
                    if (!sc.in_cone()) {
                        ok = false;
                        break;
                    }
                    add.push_back(make_indecomp(sc, y, part));
                }
                if (!ok) continue;
                size_t before = acc.size();
                acc.insert(acc.end(), add.begin(), add.end());
                decorate(curve, cls, budget - w * y.degree, pool, pi + 1, acc, out);
                acc.resize(before);
            }
        }
    }
}

} // namespace

std::vector<CoherentSheaf> semistable_classes(const EllipticCurve& curve, const KVector& cls) {
    if (!cls.in_cone()) throw ConeViolation("semistable_classes " + cls.str());
    long long g = cls.gamma();
    if (g > curve.maxdeg())
        throw DegreeBoundExceeded("semistable decorations need closed points of degree up to " + std::to_string(g));
    std::vector<ClosedPointId> pool;
    for (unsigned d = 1; d <= static_cast<unsigned>(g); ++d)
        for (unsigned i = 0; i < curve.closed_points(d).size(); ++i) pool.push_back({d, i});
    std::vector<CoherentSheaf> out;
    std::vector<IndecompSheaf> acc;
    decorate(curve, cls, g, pool, 0, acc, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

void paths_from(const HeckePolygon& poly, long long n, long long deg, KVector at,
                std::vector<KVector>& cur, std::vector<std::vector<KVector>>& out) {
    if (at.r == n) {
        if (at.d == deg) out.push_back(cur);
        return;
    }
    long long floor_y = 0;
    for (const auto& [vx, vy] : poly.upper_vertices()) floor_y = std::min(floor_y, vy);
    floor_y -= poly.drop();
    for (long long rr = 1; rr + at.r <= n; ++rr) {
        long long x = at.r + rr;
        for (long long dd = floor_y;; ++dd) {
            if (!poly.above_lower(x, dd)) continue;
            if (!poly.below_upper(x, dd)) break;
            KVector seg{rr, dd - at.d};
            if (!cur.empty() && slope_cmp(cur.back(), seg) >= 0) continue;
            cur.push_back(seg);
            paths_from(poly, n, deg, KVector{x, dd}, cur, out);
            cur.pop_back();
        }
    }
}

} // namespace

std::vector<CoherentSheaf> classes_in_polygon(const EllipticCurve& curve, long long n, long long deg,
                                              const HeckePolygon& poly) {
    std::vector<std::vector<KVector>> paths;
    std::vector<KVector> cur;
    paths_from(poly, n, deg, KVector{0, 0}, cur, paths);
    std::vector<CoherentSheaf> out;
    for (const auto& path : paths) {
        if (!poly.contains_path(path)) continue;
        // decorate each segment independently and take products
        std::vector<std::vector<CoherentSheaf>> per_seg;
        for (const auto& seg : path) per_seg.push_back(semistable_classes(curve, seg));
        std::vector<std::vector<IndecompSheaf>> combos{{}};
        for (const auto& opts : per_seg) {
            std::vector<std::vector<IndecompSheaf>> next;
            for (const auto& base : combos)
                for (const auto& opt : opts) {
                    auto ext = base;
                    ext.insert(ext.end(), opt.parts().begin(), opt.parts().end());
                    next.push_back(std::move(ext));
                }
            combos = std::move(next);
        }
        for (auto& c : combos) out.push_back(CoherentSheaf(std::move(c)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<CoherentSheaf> enumerate_vertices(const EllipticCurve& curve, int n, long long lo, long long hi) {
    // HN paths with all slopes in [lo, hi]; segment of rank r and degree d
    // has slope d/r in the window iff lo*r <= d <= hi*r.
    std::vector<CoherentSheaf> out;
    std::vector<KVector> segs;
    std::vector<std::vector<KVector>> paths;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            paths.push_back(segs);
            return;
        }
        for (int rr = 1; rr <= left; ++rr) {
            for (long long dd = lo * rr; dd <= hi * rr; ++dd) {
                KVector seg{rr, dd};
                if (!segs.empty() && slope_cmp(segs.back(), seg) >= 0) continue;
                segs.push_back(seg);
                rec(left - rr);
                segs.pop_back();
            }
        }
    };
    rec(n);
    for (const auto& path : paths) {
        std::vector<std::vector<CoherentSheaf>> per_seg;
        for (const auto& seg : path) per_seg.push_back(semistable_classes(curve, seg));
        std::vector<std::vector<IndecompSheaf>> combos{{}};
        for (const auto& opts : per_seg) {
            std::vector<std::vector<IndecompSheaf>> next;
            for (const auto& base : combos)
                for (const auto& opt : opts) {
                    auto ext = base;
                    ext.insert(ext.end(), opt.parts().begin(), opt.parts().end());
                    next.push_back(std::move(ext));
                }
            combos = std::move(next);
        }
        for (auto& c : combos) out.push_back(CoherentSheaf(std::move(c)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<CoherentSheaf> enumerate_bun2_vertices(const EllipticCurve& curve, long long lo, long long hi) {
    return enumerate_vertices(curve, 2, lo, hi);
}

std::string display_name(const EllipticCurve& curve, const CoherentSheaf& E) {
    const auto& parts = E.parts();
    auto line_name = [&](const IndecompSheaf& L) {
        std::ostringstream os;
        os << "O(" << L.cls.d << ")";
        if (L.sup.degree != 1 || !(curve.rep(L.sup) == curve.base_point()))
            os << "[p" << L.sup.degree << "." << L.sup.index << "]";
        return os.str();
    };
    if (E.rank() == 2 && parts.size() == 1) {
        const auto& p = parts[0];
        std::ostringstream os;
        if (p.cls.d % 2 == 0 && p.weight == 2) {
            // self-extension of a line bundle
            os << "E(" << line_name(make_indecomp(KVector{1, p.cls.d / 2}, p.sup, 1)) << ")";
            return os.str();
        }
        if (p.cls.d % 2 == 0 && p.sup.degree == 2) {
            os << "pi_*(L' deg" << p.cls.d / 2 << " [p2." << p.sup.index << "])";
            return os.str();
        }
        // gamma = 1: E_x(L) with x the support label
        os << "E_x(deg " << (p.cls.d - 1) / 2 << ")[x=p" << p.sup.degree << "." << p.sup.index << "]";
        return os.str();
    }
    if (E.is_vector_bundle() && E.rank() == static_cast<long long>(parts.size())) {
        bool all_lines = true;
        for (const auto& p : parts) all_lines &= p.cls.r == 1;
        if (all_lines) {
            std::ostringstream os;
            for (size_t i = 0; i < parts.size(); ++i) os << (i ? " (+) " : "") << line_name(parts[i]);
            return os.str();
        }
    }
    return E.key();
}

namespace {

CoherentSheaf twist_by(const EllipticCurve& curve, const CoherentSheaf& E, ClosedPointId x, int sign) {
    // tensoring with O(sign * x): class (m, e) -> (m, e + sign m|x|); the
    // support label translates by sign (m/gamma) s_x where s_x is the
    // base-field sum of the geometric points of x
    CurvePoint sx = curve.cp_norm_to_base(x);
    if (sign < 0) sx = curve.group_neg(sx);
    std::vector<IndecompSheaf> parts;
    for (const auto& p : E.parts()) {
        long long g = p.cls.gamma();
        long long scale = p.cls.r / g;
        KVector cls{p.cls.r, p.cls.d + sign * p.cls.r * static_cast<long long>(x.degree)};
        CurvePoint shift = curve.group_mul(sx, static_cast<long>(scale));
        ClosedPointId sup = curve.cp_translate(p.sup, shift);
        parts.push_back(make_indecomp(cls, sup, p.weight));
    }
    return CoherentSheaf(std::move(parts));
}

} // namespace

CoherentSheaf twist_down(const EllipticCurve& curve, const CoherentSheaf& E, ClosedPointId x) {
    return twist_by(curve, E, x, -1);
}

CoherentSheaf twist_up(const EllipticCurve& curve, const CoherentSheaf& E, ClosedPointId x) {
    return twist_by(curve, E, x, +1);
}

} // namespace hecke
