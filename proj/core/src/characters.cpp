#include "hecke/characters.hpp"

#include <algorithm>
#include <numeric>

namespace hecke {

CharTable::CharTable(const EllipticCurve& curve) : curve_(curve) {
    levels_.resize(curve.maxdeg() + 1);
}

CharTable::Level& CharTable::level(unsigned n) const {
    if (n == 0 || n >= levels_.size()) throw DegreeBoundExceeded("character level " + std::to_string(n));
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (!levels_[n].built) build(n);
    return levels_[n];
}

const AbelianStructure& CharTable::structure(unsigned n) const { return level(n).st; }

namespace {

unsigned point_order(const EllipticCurve& c, const CurvePoint& p) {
    CurvePoint acc = p;
    unsigned ord = 1;
    while (!(acc == c.base_point())) {
        acc = c.group_add(acc, p);
        ++ord;
    }
    return ord;
}

} // namespace

void CharTable::build(unsigned n) const {
    // caller holds mu_
    Level& L = levels_[n];
    if (L.built) return;

    const auto& pts = curve_.points(n);
    unsigned N = static_cast<unsigned>(pts.size());
    AbelianStructure st;
    st.level = n;
    st.order = N;
    st.dlog.assign(N, {0, 0});

    if (N == 1) {
        st.factors = {1};
        st.gens = {curve_.base_point()};
        st.exponent = 1;
    } else {
        std::vector<unsigned> ord(N);
        unsigned d2 = 1, gi = 0;
        for (unsigned i = 0; i < N; ++i) {
            ord[i] = point_order(curve_, pts[i]);
            if (ord[i] > d2) {
                d2 = ord[i];
                gi = i;
            }
        }
        if (d2 == N) {
            st.factors = {d2};
            st.gens = {pts[gi]};
            st.exponent = d2;
            CurvePoint acc = curve_.base_point();
            for (unsigned j = 0; j < d2; ++j) {
                st.dlog[curve_.point_index(curve_.lift(acc, n))] = {j, 0};
                acc = curve_.group_add(acc, pts[gi]);
            }
        } else {
            unsigned d1 = N / d2;
            st.factors = {d1, d2};
            st.exponent = d2;
            bool done = false;
            for (unsigned hi = 0; hi < N && !done; ++hi) {
                if (ord[hi] != d1) continue;
                std::vector<bool> seen(N, false);
                std::vector<std::array<unsigned, 2>> dl(N, {0, 0});
                CurvePoint hpow = curve_.base_point();
                bool ok = true;
                unsigned cnt = 0;
                for (unsigned i = 0; i < d1 && ok; ++i) {
                    CurvePoint acc = hpow;
                    for (unsigned j = 0; j < d2; ++j) {
                        unsigned pi = curve_.point_index(curve_.lift(acc, n));
                        if (seen[pi]) {
                            ok = false;
                            break;
                        }
                        seen[pi] = true;
                        dl[pi] = {i, j};
                        ++cnt;
                        acc = curve_.group_add(acc, pts[gi]);
                    }
                    hpow = curve_.group_add(hpow, pts[hi]);
                }
                if (ok && cnt == N) {
                    st.gens = {pts[hi], pts[gi]};
                    st.dlog = std::move(dl);
                    done = true;
                }
            }
            if (!done) throw Error(ErrorKind::Internal, "invariant factor decomposition failed");
        }
    }
    L.st = std::move(st);

    // Frobenius action on characters, by matching values on the generators.
    const AbelianStructure& S = L.st;
    unsigned M = S.exponent;
    auto value_exponent = [&](const Character& chi, const CurvePoint& pt) -> unsigned {
        if (M == 1) return 0;
        auto dl = S.dlog[curve_.point_index(curve_.lift(pt, n))];
        unsigned long long e = 0;
        for (size_t j = 0; j < S.factors.size(); ++j)
            e += static_cast<unsigned long long>(M / S.factors[j]) * chi.c[j] * dl[j];
        return static_cast<unsigned>(e % M);
    };
    L.frob.assign(S.char_count(), 0);
    for (unsigned ci = 0; ci < S.char_count(); ++ci) {
        Character chi = character(n, ci);
        Character img;
        img.level = n;
        for (size_t j = 0; j < S.factors.size(); ++j) {
            unsigned e = value_exponent(chi, curve_.frobenius(curve_.lift(S.gens[j], n)));
            unsigned step = M / S.factors[j];
            if (e % step != 0) throw Error(ErrorKind::Internal, "Frobenius image is not a character");
            img.c[j] = (e / step) % S.factors[j];
        }
        L.frob[ci] = char_index(img);
    }

    // orbits
    L.orbit_of.assign(S.char_count(), 0);
    std::vector<bool> seen(S.char_count(), false);
    for (unsigned ci = 0; ci < S.char_count(); ++ci) {
        if (seen[ci]) continue;
        CharOrbit orb;
        orb.level = n;
        unsigned cur = ci;
        do {
            orb.members.push_back(cur);
            seen[cur] = true;
            cur = L.frob[cur];
        } while (cur != ci);
        orb.rep = *std::min_element(orb.members.begin(), orb.members.end());
        orb.primitive = orb.members.size() == n;
        L.orbits.push_back(std::move(orb));
    }
    std::sort(L.orbits.begin(), L.orbits.end(),
              [](const CharOrbit& a, const CharOrbit& b) { return a.rep < b.rep; });
    for (unsigned oi = 0; oi < L.orbits.size(); ++oi)
        for (unsigned m : L.orbits[oi].members) L.orbit_of[m] = oi;

    L.built = true;

    // primitive-tower resolution; uses lower levels, built recursively
    for (unsigned m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        const Level& Lm = m == n ? L : level(m);
        for (unsigned oi = 0; oi < Lm.orbits.size(); ++oi) {
            if (!Lm.orbits[oi].primitive) continue;
            unsigned img = norm_char(m, Lm.orbits[oi].rep, n);
            unsigned target = L.orbit_of[img];
            auto it = L.tower.find(target);
            OrbitId prim{m, oi};
            if (it != L.tower.end() && !(it->second == prim))
                throw Error(ErrorKind::Internal, "orbit belongs to two primitive towers");
            L.tower[target] = prim;
        }
    }
    for (unsigned oi = 0; oi < L.orbits.size(); ++oi)
        if (!L.tower.count(oi))
            throw NotAGeneratorOfAnyTower("degree " + std::to_string(n) + " orbit " + std::to_string(oi));
}

Character CharTable::character(unsigned n, unsigned index) const {
    const AbelianStructure& S = structure(n);
    Character chi;
    chi.level = n;
    if (S.factors.size() == 1) {
        chi.c = {index % S.factors[0], 0};
    } else {
        chi.c = {index / S.factors[1], index % S.factors[1]};
    }
    return chi;
}

unsigned CharTable::char_index(const Character& chi) const {
    const AbelianStructure& S = structure(chi.level);
    if (S.factors.size() == 1) return chi.c[0] % S.factors[0];
    return (chi.c[0] % S.factors[0]) * S.factors[1] + (chi.c[1] % S.factors[1]);
}

Cyclo CharTable::char_value(const Character& chi, const CurvePoint& pt) const {
    const AbelianStructure& S = structure(chi.level);
    if (S.exponent == 1) return Cyclo(VScalar(1));
    auto dl = S.dlog[curve_.point_index(curve_.lift(pt, chi.level))];
    unsigned long long e = 0;
    for (size_t j = 0; j < S.factors.size(); ++j)
        e += static_cast<unsigned long long>(S.exponent / S.factors[j]) * chi.c[j] * dl[j];
    return Cyclo::root_of_unity(S.exponent, static_cast<long>(e % S.exponent));
}

unsigned CharTable::frobenius_char(unsigned n, unsigned index) const { return level(n).frob[index]; }

const std::vector<CharOrbit>& CharTable::orbits(unsigned n) const { return level(n).orbits; }

OrbitId CharTable::orbit_of_char(unsigned n, unsigned char_index) const {
    return OrbitId{n, level(n).orbit_of[char_index]};
}

std::vector<OrbitId> CharTable::primitive_orbits(unsigned n) const {
    std::vector<OrbitId> out;
    const auto& os = orbits(n);
    for (unsigned i = 0; i < os.size(); ++i)
        if (os[i].primitive) out.push_back(OrbitId{n, i});
    return out;
}

unsigned CharTable::norm_char(unsigned m, unsigned char_index, unsigned n) const {
    if (n % m != 0) throw NonDividingDegree("norm_char");
    Character chi = character(m, char_index);
    const AbelianStructure& Sm = structure(m);
    const AbelianStructure& Sn = structure(n);
    Character img;
    img.level = n;
    for (size_t j = 0; j < Sn.factors.size(); ++j) {
        CurvePoint npt = curve_.point_norm(curve_.lift(Sn.gens[j], n), m);
        if (Sm.exponent == 1) {
            img.c[j] = 0;
            continue;
        }
        auto dl = Sm.dlog[curve_.point_index(curve_.lift(npt, m))];
        unsigned long long e = 0;
        for (size_t i = 0; i < Sm.factors.size(); ++i)
            e += static_cast<unsigned long long>(Sm.exponent / Sm.factors[i]) * chi.c[i] * dl[i];
        e %= Sm.exponent;
        // value zeta_{Mm}^e as a d'_j-th root of unity
        unsigned dj = Sn.factors[j];
        unsigned long long num = e * dj;
        if (num % Sm.exponent != 0) throw Error(ErrorKind::Internal, "norm_char: value of wrong order");
        img.c[j] = static_cast<unsigned>((num / Sm.exponent) % dj);
    }
    return char_index(img);
}

OrbitId CharTable::norm_orbit(OrbitId o, unsigned n) const {
    unsigned img = norm_char(o.level, orbits(o.level)[o.index].rep, n);
    return orbit_of_char(n, img);
}

Cyclo CharTable::orbit_value(OrbitId o, ClosedPointId x) const {
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        auto it = value_cache_.find({o, x});
        if (it != value_cache_.end()) return it->second;
    }
    unsigned n = o.level;
    if (n % x.degree != 0) throw NonDividingDegree("orbit_value: closed point degree");
    Character rep_chi = character(n, orbits(n)[o.index].rep);
    CurvePoint p = curve_.lift(curve_.rep(x), n);
    Cyclo acc;
    acc = Cyclo(VScalar(0));
    CurvePoint cur = p;
    for (unsigned i = 0; i < n; ++i) {
        acc += char_value(rep_chi, cur);
        cur = curve_.frobenius(cur);
    }
    Cyclo out = acc.scaled(VScalar(BigInt(1), BigInt(n)));
    std::lock_guard<std::recursive_mutex> lk(mu_);
    value_cache_.emplace(std::make_pair(o, x), out);
    return out;
}

OrbitId CharTable::tower_primitive(OrbitId o) const {
    const Level& L = level(o.level);
    auto it = L.tower.find(o.index);
    if (it == L.tower.end()) throw NotAGeneratorOfAnyTower(std::to_string(o.level) + ":" + std::to_string(o.index));
    return it->second;
}

std::map<ClosedPointId, Cyclo> CharTable::to_point_basis(unsigned d, const std::map<OrbitId, Cyclo>& f) const {
    std::map<ClosedPointId, Cyclo> g;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        for (unsigned i = 0; i < curve_.closed_points(e).size(); ++i) {
            ClosedPointId y{e, i};
            Cyclo acc{VScalar(0)};
            for (const auto& [o, coeff] : f) acc += coeff * orbit_value(o, y);
            if (!acc.is_zero()) g[y] = acc;
        }
    }
    return g;
}

std::map<OrbitId, Cyclo> CharTable::to_char_basis(unsigned d, const std::map<ClosedPointId, Cyclo>& g) const {
    std::map<OrbitId, Cyclo> f;
    VScalar inv_nd = VScalar(BigInt(1), BigInt(curve_.point_count(d)));
    for (unsigned oi = 0; oi < orbits(d).size(); ++oi) {
        OrbitId o{d, oi};
        Cyclo acc{VScalar(0)};
        for (const auto& [y, coeff] : g) {
            ClosedPointId ny = curve_.cp_negate(y);
            acc += coeff * orbit_value(o, ny).scaled(VScalar(BigInt(y.degree)));
        }
        acc = acc.scaled(inv_nd);
        if (!acc.is_zero()) f[o] = acc;
    }
    return f;
}

} // namespace hecke
