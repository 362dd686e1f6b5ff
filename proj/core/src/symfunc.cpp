#include "hecke/symfunc.hpp"

#include <algorithm>
#include <sstream>

namespace hecke {

int ptn_weight(const Partition& p) {
    int w = 0;
    for (int x : p) w += x;
    return w;
}

int ptn_length(const Partition& p) { return static_cast<int>(p.size()); }

int ptn_n(const Partition& p) {
    int s = 0;
    for (size_t i = 0; i < p.size(); ++i) s += static_cast<int>(i) * p[i];
    return s;
}

Partition ptn_union(const Partition& a, const Partition& b) {
    Partition r = a;
    r.insert(r.end(), b.begin(), b.end());
    std::sort(r.begin(), r.end(), std::greater<int>());
    return r;
}

static void gen_partitions(int rest, int maxpart, Partition& cur, std::vector<Partition>& out) {
    if (rest == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(rest - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int w) {
    std::vector<Partition> out;
    Partition cur;
    if (w == 0) {
        out.push_back({});
        return out;
    }
    gen_partitions(w, w, cur, out);
    return out;
}

bool dominates(const Partition& a, const Partition& b) {
    if (ptn_weight(a) != ptn_weight(b)) return false;
    int sa = 0, sb = 0;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return true;
}

std::string ptn_str(const Partition& p) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

namespace {

// z_lambda = prod i^{m_i} m_i!
VScalar z_lambda(const Partition& p) {
    BigInt z(1);
    int run = 1;
    for (size_t i = 0; i < p.size(); ++i) {
        z *= p[i];
        if (i + 1 < p.size() && p[i + 1] == p[i])
            z *= ++run;
        else
            run = 1;
    }
    return VScalar(z);
}

VScalar hl_norm_factor(const Partition& p, int e) {
    // z_lambda * prod (1 - t^{lambda_i})^{-1} at t = v^{2e}
    VScalar r = z_lambda(p);
    for (int part : p) r /= (VScalar(1) - VScalar::v_pow(2 * e * part));
    return r;
}

VScalar inner(const SymExpansion& f, const SymExpansion& g, int e) {
    VScalar acc(0);
    for (const auto& [l, cf] : f) {
        auto it = g.find(l);
        if (it == g.end()) continue;
        acc += cf * it->second * hl_norm_factor(l, e);
    }
    return acc;
}

void add_scaled(SymExpansion& dst, const SymExpansion& src, const VScalar& s) {
    if (s.is_zero()) return;
    for (const auto& [l, c] : src) {
        auto [it, fresh] = dst.emplace(l, c * s);
        if (!fresh) {
            it->second += c * s;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

// lexicographic on part vectors; extends dominance order
bool lex_less(const Partition& a, const Partition& b) { return a < b; }

} // namespace

VScalar SymRing::n_u(int l, int e) {
    VScalar r(1);
    for (int i = 1; i <= l; ++i) r *= (VScalar(1) - VScalar::v_pow(-2 * e * i));
    return r;
}

void SymRing::check_weight(int w) const {
    if (w > bound_) throw WeightBoundExceeded("weight " + std::to_string(w) + " > bound " + std::to_string(bound_));
}

SymExpansion SymRing::newton_e_to_p(int m) const {
    check_weight(m);
    // e_0 = 1, m e_m = sum_{i=1}^m (-1)^{i-1} p_i e_{m-i}
    std::vector<SymExpansion> e(m + 1);
    e[0][{}] = VScalar(1);
    for (int k = 1; k <= m; ++k) {
        SymExpansion acc;
        for (int i = 1; i <= k; ++i) {
            VScalar sign = (i % 2 == 1) ? VScalar(1) : VScalar(-1);
            for (const auto& [l, c] : e[k - i]) {
                Partition u = ptn_union(l, {i});
                VScalar add = c * sign;
                auto [it, fresh] = acc.emplace(u, add);
                if (!fresh) it->second += add;
            }
        }
        for (auto& [l, c] : acc) c /= VScalar(k);
        for (auto it = acc.begin(); it != acc.end();)
            it = it->second.is_zero() ? acc.erase(it) : std::next(it);
        e[k] = std::move(acc);
    }
    return e[m];
}

const SymRing::WeightTables& SymRing::tables(int w, int e) const {
    check_weight(w);
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_pair(w, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    WeightTables T;
    T.ptns = partitions_of(w);
    std::sort(T.ptns.begin(), T.ptns.end(), lex_less);

    // p_lambda over monomials: expand in w variables, read coefficients of
    // the canonical (sorted) exponent vectors.
    {
        using Mono = std::vector<int>;
        for (const auto& lam : T.ptns) {
            std::map<Mono, BigInt> poly;
            poly[Mono(w, 0)] = 1;
            for (int part : lam) {
                std::map<Mono, BigInt> next;
                for (const auto& [mono, c] : poly) {
                    for (int j = 0; j < w; ++j) {
                        Mono m2 = mono;
                        m2[j] += part;
                        next[m2] += c;
                    }
                }
                poly = std::move(next);
            }
            SymExpansion row;
            for (const auto& mu : T.ptns) {
                Mono canon(w, 0);
                for (size_t i = 0; i < mu.size(); ++i) canon[i] = mu[i];
                std::sort(canon.begin(), canon.end(), std::greater<int>());
                auto f = poly.find(canon);
                if (f != poly.end() && f->second != 0) row[mu] = VScalar(f->second);
            }
            T.p_in_m[lam] = std::move(row);
        }
    }

    // invert: m_lambda over p, back substitution from the lex top
    for (auto itp = T.ptns.rbegin(); itp != T.ptns.rend(); ++itp) {
        const Partition& lam = *itp;
        SymExpansion rest;   // p_lam - sum_{mu > lam} R_{lam,mu} m_mu, in p coords
        rest[lam] = VScalar(1);
        const SymExpansion& row = T.p_in_m.at(lam);
        VScalar diag;
        for (const auto& [mu, c] : row) {
            if (mu == lam) {
                diag = c;
                continue;
            }
            add_scaled(rest, T.m_in_p.at(mu), -c);
        }
        for (auto& [mu, c] : rest) c /= diag;
        for (auto it2 = rest.begin(); it2 != rest.end();)
            it2 = it2->second.is_zero() ? rest.erase(it2) : std::next(it2);
        T.m_in_p[lam] = std::move(rest);
    }

    // Gram-Schmidt upward: P_lam = m_lam - sum_{mu < lam} <m_lam, P_mu>/<P_mu,P_mu> P_mu
    for (const auto& lam : T.ptns) {
        SymExpansion cur = T.m_in_p.at(lam);
        for (const auto& mu : T.ptns) {
            if (!(mu < lam)) break;
            const SymExpansion& Pmu = T.P_in_p.at(mu);
            VScalar coef = inner(cur, Pmu, e) / inner(Pmu, Pmu, e);
            add_scaled(cur, Pmu, -coef);
        }
        T.P_in_p[lam] = std::move(cur);
    }

    // p_mu over P via orthogonality: coeff_nu = <p_mu, P_nu>/<P_nu, P_nu>
    for (const auto& mu : T.ptns) {
        SymExpansion unit;
        unit[mu] = VScalar(1);
        SymExpansion row;
        for (const auto& nu : T.ptns) {
            const SymExpansion& Pnu = T.P_in_p.at(nu);
            VScalar c = inner(unit, Pnu, e) / inner(Pnu, Pnu, e);
            if (!c.is_zero()) row[nu] = c;
        }
        T.p_in_P[mu] = std::move(row);
    }

    return cache_.emplace(key, std::move(T)).first->second;
}

SymExpansion SymRing::hl_expand(const Partition& lambda, int e) const {
    int w = ptn_weight(lambda);
    const WeightTables& T = tables(w, e);
    SymExpansion out;
    for (const auto& [mu, c] : T.P_in_p.at(lambda)) add_scaled(out, T.p_in_m.at(mu), c);
    return out;
}

SymExpansion SymRing::hl_in_power(const Partition& lambda, int e) const {
    return tables(ptn_weight(lambda), e).P_in_p.at(lambda);
}

SymExpansion SymRing::p_to_hl(const Partition& mu, int e) const {
    return tables(ptn_weight(mu), e).p_in_P.at(mu);
}

SymExpansion SymRing::psi_inverse_p(int m, int e) const {
    check_weight(m);
    SymExpansion out;
    for (const auto& lam : partitions_of(m)) out[lam] = n_u(ptn_length(lam) - 1, e);
    return out;
}

SymExpansion SymRing::mult_torsion_same_point(const Partition& lambda, const Partition& mu, int e) const {
    int w = ptn_weight(lambda) + ptn_weight(mu);
    check_weight(w);
    const WeightTables& T = tables(w, e);
    // through Psi: K^{(l)} -> u^{-2n(l)} P_l, multiply in the power basis
    SymExpansion prod_p;
    const SymExpansion& A = tables(ptn_weight(lambda), e).P_in_p.at(lambda);
    const SymExpansion& B = tables(ptn_weight(mu), e).P_in_p.at(mu);
    for (const auto& [la, ca] : A)
        for (const auto& [lb, cb] : B) {
            Partition u = ptn_union(la, lb);
            VScalar add = ca * cb;
            auto [it, fresh] = prod_p.emplace(u, add);
            if (!fresh) it->second += add;
        }
    SymExpansion in_P;
    for (const auto& [l, c] : prod_p) add_scaled(in_P, T.p_in_P.at(l), c);
    // u^{2n(lambda)+2n(mu)} forward, u^{-2n(nu)} back
    SymExpansion out;
    int base = 2 * e * (ptn_n(lambda) + ptn_n(mu));
    for (const auto& [nu, c] : in_P) {
        VScalar s = c * VScalar::v_pow(base - 2 * e * ptn_n(nu));
        if (!s.is_zero()) out[nu] = s;
    }
    return out;
}

} // namespace hecke
