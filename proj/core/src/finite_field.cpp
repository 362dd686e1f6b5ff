#include "hecke/finite_field.hpp"

#include <algorithm>
#include <numeric>

namespace hecke {

namespace {

using Poly = std::vector<unsigned>; // over F_p, low-to-high, trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

Poly poly_mod(Poly a, const Poly& f, unsigned p) {
    trim(a);
    unsigned lead_inv = 1;
    // f monic in all our uses
    while (a.size() >= f.size()) {
        unsigned c = (a.back() * lead_inv) % p;
        size_t sh = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i) {
            unsigned sub = (c * f[i]) % p;
            a[sh + i] = (a[sh + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, unsigned p) {
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, unsigned p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic for poly_mod
        unsigned lb = b.back();
        if (lb != 1) {
            unsigned inv = 1;
            for (unsigned t = 1; t < p; ++t)
                if ((t * lb) % p == 1) inv = t;
            for (auto& c : b) c = (c * inv) % p;
        }
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

uint64_t ipow(uint64_t b, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

bool is_irreducible(const Poly& f, unsigned p) {
    unsigned m = static_cast<unsigned>(f.size()) - 1;
    // x^{p^m} == x mod f
    Poly x{0, 1};
    Poly xq = poly_powmod(x, ipow(p, m), f, p);
    Poly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    // gcd(x^{p^{m/l}} - x, f) = 1 for prime divisors l of m
    for (unsigned l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        bool prime = true;
        for (unsigned d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        Poly xe = poly_powmod(x, ipow(p, m / l), f, p);
        Poly g = xe;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        trim(g);
        Poly gc = poly_gcd(g, f, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

} // namespace

std::vector<unsigned> GFTable::smallest_irreducible(unsigned p, unsigned m) {
    if (m == 1) return {0, 1}; // z
    uint64_t bound = ipow(p, m);
    for (uint64_t low = 0; low < bound; ++low) {
        Poly f(m + 1, 0);
        uint64_t t = low;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<unsigned>(t % p);
            t /= p;
        }
        f[m] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw Error(ErrorKind::Internal, "no irreducible polynomial found");
}

GFTable::GFTable(unsigned p, unsigned m) : p_(p), m_(m), size_(ipow(p, m)) {
    mod_ = smallest_irreducible(p, m);
    exp_.assign(2 * (size_ - 1), 0);
    log_.assign(size_, 0);
    // find a generator of the multiplicative group
    for (FElem g = 2; g < size_; ++g) {
        FElem cur = 1;
        uint64_t ord = 0;
        do {
            cur = raw_mul(cur, g);
            ++ord;
        } while (cur != 1);
        if (ord != size_ - 1) continue;
        cur = 1;
        for (uint64_t i = 0; i < size_ - 1; ++i) {
            exp_[i] = cur;
            exp_[i + size_ - 1] = cur;
            log_[cur] = static_cast<uint32_t>(i);
            cur = raw_mul(cur, g);
        }
        return;
    }
    if (size_ == 2) { // F_2 has trivial unit group
        exp_.assign(2, 1);
        log_.assign(2, 0);
        return;
    }
    throw Error(ErrorKind::Internal, "no multiplicative generator found");
}

FElem GFTable::raw_mul(FElem a, FElem b) const {
    Poly pa(m_), pb(m_);
    FElem t = a;
    for (unsigned i = 0; i < m_; ++i) {
        pa[i] = t % p_;
        t /= p_;
    }
    t = b;
    for (unsigned i = 0; i < m_; ++i) {
        pb[i] = t % p_;
        t /= p_;
    }
    Poly prod = poly_mod(poly_mul(pa, pb, p_), mod_, p_);
    FElem r = 0;
    for (size_t i = prod.size(); i-- > 0;) r = r * p_ + prod[i];
    return r;
}

FElem GFTable::add(FElem a, FElem b) const {
    if (p_ == 2) return a ^ b;
    FElem r = 0, mult = 1;
    while (a || b) {
        unsigned da = a % p_, db = b % p_;
        r += ((da + db) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

FElem GFTable::neg(FElem a) const {
    if (p_ == 2) return a;
    FElem r = 0, mult = 1;
    while (a) {
        unsigned d = a % p_;
        r += ((p_ - d) % p_) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

FElem GFTable::mul(FElem a, FElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

FElem GFTable::inv(FElem a) const {
    if (a == 0) throw Error(ErrorKind::Internal, "GF inverse of zero");
    return exp_[(size_ - 1) - log_[a]];
}

FElem GFTable::pow(FElem a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    uint64_t le = (static_cast<uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1);
    return exp_[le];
}

FElem GFTable::from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<FElem>(r);
}

} // namespace hecke
