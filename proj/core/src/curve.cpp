#include "hecke/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hecke {

FieldTower::FieldTower(unsigned p, unsigned k, unsigned maxdeg) : p_(p), k_(k), maxdeg_(maxdeg) {
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) q_ *= p;
    levels_.resize(maxdeg + 1);
    for (unsigned n = 1; n <= maxdeg; ++n) levels_[n] = std::make_unique<GFTable>(p, k * n);
}

const GFTable& FieldTower::level(unsigned n) const {
    if (n == 0 || n > maxdeg_) throw DegreeBoundExceeded("field level " + std::to_string(n));
    return *levels_[n];
}

const std::vector<FElem>& FieldTower::embedding(unsigned from, unsigned to) const {
    auto key = std::make_pair(from, to);
    auto it = emb_.find(key);
    if (it != emb_.end()) return it->second;
    if (to % from != 0) throw NonDividingDegree("field embedding");
    const GFTable& gs = level(from);
    const GFTable& gt = level(to);
    // smallest root of the source modulus in the target field
    const auto& f = gs.modulus();
    FElem root = 0;
    bool found = false;
    for (uint64_t z = 0; z < gt.size(); ++z) {
        FElem acc = 0;
        for (size_t i = f.size(); i-- > 0;) {
            acc = gt.add(gt.mul(acc, static_cast<FElem>(z)), gt.from_int(static_cast<long>(f[i])));
        }
        if (acc == 0) {
            root = static_cast<FElem>(z);
            found = true;
            break;
        }
    }
    if (!found) throw Error(ErrorKind::Internal, "no root for subfield embedding");
    std::vector<FElem> map(gs.size());
    for (uint64_t a = 0; a < gs.size(); ++a) {
        // digits of a are coordinates in the power basis of the source generator
        FElem acc = 0;
        uint64_t t = a;
        std::vector<unsigned> digits(gs.m());
        for (unsigned i = 0; i < gs.m(); ++i) {
            digits[i] = static_cast<unsigned>(t % p_);
            t /= p_;
        }
        for (size_t i = digits.size(); i-- > 0;) {
            acc = gt.add(gt.mul(acc, root), gt.from_int(static_cast<long>(digits[i])));
        }
        map[a] = acc;
    }
    return emb_.emplace(key, std::move(map)).first->second;
}

FElem FieldTower::embed(FElem a, unsigned from, unsigned to) const {
    if (from == to) return a;
    return embedding(from, to)[a];
}

FElem FieldTower::frobenius_q(FElem a, unsigned n) const { return level(n).pow(a, q_); }

EllipticCurve::EllipticCurve(std::shared_ptr<FieldTower> tower, std::array<FElem, 5> a,
                             std::optional<std::pair<FElem, FElem>> base_point)
    : tower_(std::move(tower)), a_(a) {
    pts_.resize(maxdeg() + 1);
    idx_.resize(maxdeg() + 1);
    closed_.resize(maxdeg() + 1);
    closed_done_.assign(maxdeg() + 1, false);
    for (unsigned n = 1; n <= maxdeg(); ++n) enumerate_level(n);

    // discriminant (long Weierstrass form)
    const GFTable& g = tower_->level(1);
    auto mulc = [&](FElem u, FElem v) { return g.mul(u, v); };
    auto addc = [&](FElem u, FElem v) { return g.add(u, v); };
    FElem a1 = a_[0], a2 = a_[1], a3 = a_[2], a4 = a_[3], a6 = a_[4];
    FElem b2 = addc(mulc(a1, a1), mulc(g.from_int(4), a2));
    FElem b4 = addc(mulc(g.from_int(2), a4), mulc(a1, a3));
    FElem b6 = addc(mulc(a3, a3), mulc(g.from_int(4), a6));
    FElem b8 = addc(addc(mulc(mulc(a1, a1), a6), mulc(g.from_int(4), mulc(a2, a6))),
                    g.add(g.neg(mulc(a1, mulc(a3, a4))),
                          addc(mulc(a2, mulc(a3, a3)), g.neg(mulc(a4, a4)))));
    FElem disc = g.add(
        g.add(g.neg(mulc(mulc(b2, b2), b8)), g.neg(mulc(g.from_int(8), mulc(b4, mulc(b4, b4))))),
        g.add(g.neg(mulc(g.from_int(27), mulc(b6, b6))), mulc(g.from_int(9), mulc(b2, mulc(b4, b6)))));
    if (disc == 0) throw ConfigError("singular Weierstrass equation");

    if (base_point) {
        x0_ = CurvePoint{1, false, base_point->first, base_point->second};
        if (!on_curve(x0_)) throw ConfigError("base point is not on the curve");
    } else {
        x0_ = CurvePoint{1, true, 0, 0};
    }
}

std::array<FElem, 5> EllipticCurve::a_at(unsigned n) const {
    std::array<FElem, 5> r;
    for (int i = 0; i < 5; ++i) r[i] = tower_->embed(a_[i], 1, n);
    return r;
}

bool EllipticCurve::on_curve(const CurvePoint& pt) const {
    if (pt.inf) return true;
    const GFTable& g = tower_->level(pt.level);
    auto a = a_at(pt.level);
    FElem lhs = g.add(g.add(g.mul(pt.y, pt.y), g.mul(a[0], g.mul(pt.x, pt.y))), g.mul(a[2], pt.y));
    FElem rhs = g.add(g.add(g.mul(pt.x, g.mul(pt.x, pt.x)), g.mul(a[1], g.mul(pt.x, pt.x))),
                      g.add(g.mul(a[3], pt.x), a[4]));
    return lhs == rhs;
}

void EllipticCurve::enumerate_level(unsigned n) {
    const GFTable& g = tower_->level(n);
    std::vector<CurvePoint> pts;
    pts.push_back(CurvePoint{n, true, 0, 0});
    for (uint64_t x = 0; x < g.size(); ++x) {
        for (uint64_t y = 0; y < g.size(); ++y) {
            CurvePoint pt{n, false, static_cast<FElem>(x), static_cast<FElem>(y)};
            if (on_curve(pt)) pts.push_back(pt);
        }
    }
    std::sort(pts.begin(), pts.end());
    for (unsigned i = 0; i < pts.size(); ++i)
        if (!pts[i].inf) idx_[n][{pts[i].x, pts[i].y}] = i;
    pts_[n] = std::move(pts);
}

const std::vector<CurvePoint>& EllipticCurve::points(unsigned n) const {
    if (n == 0 || n > maxdeg()) throw DegreeBoundExceeded("point level " + std::to_string(n));
    return pts_[n];
}

long long EllipticCurve::point_count(unsigned n) const { return static_cast<long long>(points(n).size()); }

long long EllipticCurve::hasse_weil_count(unsigned n) const {
    // N_i = q^i + 1 - (s_i) with s_i = sigma^i + sigmabar^i satisfying
    // s_1 = q + 1 - N_1, s_{i+1} = s_1 s_i - q s_{i-1}.
    long long qi = static_cast<long long>(q());
    long long s1 = qi + 1 - point_count(1);
    long long s_prev = 2, s_cur = s1; // s_0 = 2
    long long qe = qi;
    for (unsigned i = 1; i < n; ++i) {
        long long s_next = s1 * s_cur - qi * s_prev;
        s_prev = s_cur;
        s_cur = s_next;
        qe *= qi;
    }
    return qe + 1 - s_cur;
}

unsigned EllipticCurve::point_index(const CurvePoint& pt) const {
    if (pt.inf) return 0;
    auto it = idx_[pt.level].find({pt.x, pt.y});
    if (it == idx_[pt.level].end()) throw Error(ErrorKind::Internal, "point not in table");
    return it->second;
}

CurvePoint EllipticCurve::frobenius(const CurvePoint& pt) const {
    if (pt.inf) return pt;
    return CurvePoint{pt.level, false, tower_->frobenius_q(pt.x, pt.level),
                      tower_->frobenius_q(pt.y, pt.level)};
}

CurvePoint EllipticCurve::std_neg(const CurvePoint& a) const {
    if (a.inf) return a;
    const GFTable& g = tower_->level(a.level);
    auto c = a_at(a.level);
    // -(x, y) = (x, -y - a1 x - a3)
    FElem ny = g.neg(g.add(a.y, g.add(g.mul(c[0], a.x), c[2])));
    return CurvePoint{a.level, false, a.x, ny};
}

CurvePoint EllipticCurve::std_add(const CurvePoint& A, const CurvePoint& B) const {
    if (A.inf) return B;
    if (B.inf) return A;
    if (A.level != B.level) throw Error(ErrorKind::Internal, "std_add: mixed levels");
    const GFTable& g = tower_->level(A.level);
    auto c = a_at(A.level);
    FElem a1 = c[0], a2 = c[1], a3 = c[2], a4 = c[3];
    CurvePoint negB = std_neg(B);
    if (A.x == negB.x && A.y == negB.y && !negB.inf) return CurvePoint{A.level, true, 0, 0};
    FElem lam;
    if (A.x == B.x && A.y == B.y) {
        // tangent slope (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
        FElem num = g.add(g.add(g.mul(g.from_int(3), g.mul(A.x, A.x)), g.mul(g.from_int(2), g.mul(a2, A.x))),
                          g.sub(a4, g.mul(a1, A.y)));
        FElem den = g.add(g.mul(g.from_int(2), A.y), g.add(g.mul(a1, A.x), a3));
        lam = g.mul(num, g.inv(den));
    } else {
        lam = g.mul(g.sub(B.y, A.y), g.inv(g.sub(B.x, A.x)));
    }
    FElem nu = g.sub(A.y, g.mul(lam, A.x));
    FElem x3 = g.sub(g.sub(g.add(g.mul(lam, lam), g.mul(a1, lam)), a2), g.add(A.x, B.x));
    FElem y3 = g.neg(g.add(g.add(g.mul(g.add(lam, a1), x3), nu), a3));
    return CurvePoint{A.level, false, x3, y3};
}

CurvePoint EllipticCurve::lift(const CurvePoint& pt, unsigned to) const {
    if (pt.level == to) return pt;
    if (to % pt.level != 0) throw NonDividingDegree("point lift");
    if (pt.inf) return CurvePoint{to, true, 0, 0};
    return CurvePoint{to, false, tower_->embed(pt.x, pt.level, to), tower_->embed(pt.y, pt.level, to)};
}

CurvePoint EllipticCurve::reduce_level(const CurvePoint& pt) const {
    // smallest m | level with Fr^m(pt) = pt, then pull back through the embedding
    for (unsigned m = 1; m < pt.level; ++m) {
        if (pt.level % m != 0) continue;
        CurvePoint f = pt;
        for (unsigned i = 0; i < m; ++i) f = frobenius(f);
        if (f == pt) {
            for (const auto& cand : points(m)) {
                if (lift(cand, pt.level) == pt) return cand;
            }
            throw Error(ErrorKind::Internal, "fixed point not found in subfield");
        }
    }
    return pt;
}

CurvePoint EllipticCurve::group_add(const CurvePoint& a, const CurvePoint& b) const {
    unsigned lvl = std::lcm(a.level, b.level);
    CurvePoint s = std_add(std_add(lift(a, lvl), lift(b, lvl)), std_neg(lift(x0_, lvl)));
    return reduce_level(s);
}

CurvePoint EllipticCurve::group_neg(const CurvePoint& a) const {
    CurvePoint two_x0 = std_add(lift(x0_, a.level), lift(x0_, a.level));
    return reduce_level(std_add(two_x0, std_neg(a)));
}

CurvePoint EllipticCurve::group_mul(const CurvePoint& a, long k) const {
    CurvePoint acc = x0_;
    CurvePoint base = k >= 0 ? a : group_neg(a);
    long e = k >= 0 ? k : -k;
    while (e) {
        if (e & 1) acc = group_add(acc, base);
        base = group_add(base, base);
        e >>= 1;
    }
    return acc;
}

CurvePoint EllipticCurve::point_norm(const CurvePoint& pt, unsigned m) const {
    if (pt.level % m != 0) throw NonDividingDegree("point_norm");
    CurvePoint acc{pt.level, true, 0, 0};
    acc = lift(x0_, pt.level);
    CurvePoint cur = pt;
    for (unsigned i = 0; i < pt.level / m; ++i) {
        acc = lift(group_add(acc, cur), pt.level);
        for (unsigned j = 0; j < m; ++j) cur = frobenius(cur);
    }
    CurvePoint red = reduce_level(acc);
    if (m % red.level != 0) throw Error(ErrorKind::Internal, "norm not Fr^m-fixed");
    return red;
}

const std::vector<ClosedPoint>& EllipticCurve::closed_points(unsigned degree) const {
    if (degree == 0 || degree > maxdeg()) throw DegreeBoundExceeded("closed points of degree " + std::to_string(degree));
    auto* self = const_cast<EllipticCurve*>(this);
    if (self->closed_done_[degree]) return closed_[degree];
    auto& slot = self->closed_[degree];
    const auto& pl = points(degree);
    std::vector<bool> seen(pl.size(), false);
    std::vector<ClosedPoint> out;
    for (unsigned i = 0; i < pl.size(); ++i) {
        if (seen[i]) continue;
        std::vector<unsigned> orbit;
        CurvePoint cur = pl[i];
        do {
            unsigned j = point_index(cur);
            orbit.push_back(j);
            seen[j] = true;
            cur = frobenius(cur);
        } while (!(cur == pl[i]));
        if (orbit.size() == degree) {
            unsigned rep = *std::min_element(orbit.begin(), orbit.end());
            out.push_back(ClosedPoint{degree, std::move(orbit), rep});
        }
    }
    std::sort(out.begin(), out.end(), [](const ClosedPoint& a, const ClosedPoint& b) { return a.rep < b.rep; });
    slot = std::move(out);
    self->closed_done_[degree] = true;
    return slot;
}

std::vector<ClosedPointId> EllipticCurve::closed_points_up_to(unsigned maxdegree) const {
    std::vector<ClosedPointId> out;
    for (unsigned d = 1; d <= maxdegree; ++d)
        for (unsigned i = 0; i < closed_points(d).size(); ++i) out.push_back(ClosedPointId{d, i});
    return out;
}

CurvePoint EllipticCurve::rep(ClosedPointId id) const {
    const auto& cps = closed_points(id.degree);
    if (id.index >= cps.size()) throw Error(ErrorKind::Internal, "closed point index out of range");
    return points(id.degree)[cps[id.index].rep];
}

ClosedPointId EllipticCurve::closed_point_of(const CurvePoint& pt) const {
    CurvePoint red = reduce_level(pt);
    // orbit size of red equals its degree
    unsigned d = 1;
    CurvePoint cur = frobenius(red);
    while (!(cur == red)) {
        cur = frobenius(cur);
        ++d;
    }
    const auto& cps = closed_points(d);
    CurvePoint at_d = lift(red, d);
    unsigned idx = point_index(at_d);
    for (unsigned i = 0; i < cps.size(); ++i) {
        if (std::find(cps[i].orbit.begin(), cps[i].orbit.end(), idx) != cps[i].orbit.end())
            return ClosedPointId{d, i};
    }
    throw Error(ErrorKind::Internal, "closed point lookup failed");
}

ClosedPointId EllipticCurve::cp_negate(ClosedPointId id) const { return closed_point_of(group_neg(rep(id))); }

ClosedPointId EllipticCurve::cp_translate(ClosedPointId id, const CurvePoint& w) const {
    return closed_point_of(group_add(rep(id), w));
}

CurvePoint EllipticCurve::cp_norm_to_base(ClosedPointId id) const { return point_norm(rep(id), 1); }

std::string EllipticCurve::cp_str(ClosedPointId id) const {
    std::ostringstream os;
    os << id.degree << "." << id.index;
    return os.str();
}

} // namespace hecke
