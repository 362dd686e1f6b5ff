#include "hecke/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hecke {

namespace {

std::mutex g_tab_mutex;
std::map<unsigned, std::vector<BigInt>> g_phi;                 // m -> Phi_m coefficients
std::map<unsigned, std::vector<std::vector<VScalar>>> g_pows;  // m -> reductions of z^j, j < 2*deg

// Divide integer polynomials exactly (monic divisor).
std::vector<BigInt> poly_div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    std::vector<BigInt> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigInt(0));
    while (a.size() >= b.size() && !a.empty()) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
        BigInt f = a.back(); // b monic
        size_t sh = a.size() - b.size();
        q[sh] = f;
        for (size_t i = 0; i < b.size(); ++i) a[sh + i] -= f * b[i];
    }
    for (const auto& c : a)
        if (c != 0) throw Error(ErrorKind::Internal, "cyclotomic division not exact");
    while (!q.empty() && q.back() == 0) q.pop_back();
    return q;
}

const std::vector<BigInt>& phi_locked(unsigned m) {
    auto it = g_phi.find(m);
    if (it != g_phi.end()) return it->second;
    // z^m - 1 divided by all Phi_d, d | m, d < m
    std::vector<BigInt> f(m + 1, BigInt(0));
    f[0] = -1;
    f[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        f = poly_div_exact(std::move(f), phi_locked(d));
    }
    return g_phi.emplace(m, std::move(f)).first->second;
}

const std::vector<std::vector<VScalar>>& pow_table_locked(unsigned m) {
    auto it = g_pows.find(m);
    if (it != g_pows.end()) return it->second;
    const auto& phi = phi_locked(m);
    size_t deg = phi.size() - 1;
    size_t count = std::max<size_t>(2 * deg, m + 1);
    std::vector<std::vector<VScalar>> rows;
    rows.reserve(count);
    // z^j mod Phi_m for products of reduced elements and conductor promotion
    std::vector<VScalar> cur(deg, VScalar(0));
    cur[0] = VScalar(1);
    for (size_t j = 0; j < count; ++j) {
        rows.push_back(cur);
        // multiply by z
        VScalar top = cur[deg - 1];
        for (size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = VScalar(0);
        if (!top.is_zero()) {
            for (size_t i = 0; i < deg; ++i) cur[i] -= top * VScalar(BigInt(phi[i]));
        }
    }
    return g_pows.emplace(m, std::move(rows)).first->second;
}

} // namespace

const std::vector<BigInt>& Cyclo::cyclotomic_poly(unsigned m) {
    std::lock_guard<std::mutex> lk(g_tab_mutex);
    return phi_locked(m);
}

Cyclo Cyclo::root_of_unity(unsigned m, long k) {
    if (m == 0) throw Error(ErrorKind::Internal, "root_of_unity: conductor 0");
    long kk = k % static_cast<long>(m);
    if (kk < 0) kk += m;
    if (m == 1) return Cyclo(VScalar(1));
    std::lock_guard<std::mutex> lk(g_tab_mutex);
    const auto& rows = pow_table_locked(m);
    size_t deg = rows[0].size();
    Cyclo r;
    r.m_ = m;
    if (static_cast<size_t>(kk) < deg) {
        r.c_.assign(deg, VScalar(0));
        r.c_[kk] = VScalar(1);
    } else {
        r.c_ = rows[kk];
    }
    r.reduce_conductor();
    return r;
}

bool Cyclo::is_zero() const {
    for (const auto& s : c_)
        if (!s.is_zero()) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

VScalar Cyclo::rational_part() const {
    if (!is_rational())
        throw Error(ErrorKind::Internal, "Cyclo value did not collapse to a rational: " + str());
    return c_[0];
}

void Cyclo::reduce_conductor() {
    if (m_ == 1) return;
    if (is_rational()) {
        VScalar v = c_[0];
        m_ = 1;
        c_.assign(1, v);
    }
}

Cyclo Cyclo::promoted(unsigned target) const {
    if (m_ == target) return *this;
    if (target % m_ != 0) throw Error(ErrorKind::Internal, "Cyclo promotion to non-multiple");
    std::lock_guard<std::mutex> lk(g_tab_mutex);
    const auto& rows = pow_table_locked(target);
    size_t deg = rows[0].size();
    unsigned step = target / m_;
    Cyclo r;
    r.m_ = target;
    r.c_.assign(deg, VScalar(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        const auto& row = rows[i * step]; // i*step < target, table holds target+1 rows
        for (size_t j = 0; j < deg; ++j) r.c_[j] += c_[i] * row[j];
    }
    return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    unsigned L = std::lcm(m_, o.m_);
    Cyclo a = promoted(L), b = o.promoted(L);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    a.reduce_conductor();
    return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
    unsigned L = std::lcm(m_, o.m_);
    Cyclo a = promoted(L), b = o.promoted(L);
    size_t deg = a.c_.size();
    std::vector<VScalar> prod(2 * deg - 1, VScalar(0));
    for (size_t i = 0; i < deg; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < deg; ++j) {
            if (b.c_[j].is_zero()) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
        }
    }
    Cyclo r;
    r.m_ = L;
    r.c_.assign(deg, VScalar(0));
    if (L == 1) {
        r.c_[0] = prod[0];
        return r;
    }
    std::lock_guard<std::mutex> lk(g_tab_mutex);
    const auto& rows = pow_table_locked(L);
    for (size_t e = 0; e < prod.size(); ++e) {
        if (prod[e].is_zero()) continue;
        for (size_t j = 0; j < deg; ++j) r.c_[j] += prod[e] * rows[e][j];
    }
    r.reduce_conductor();
    return r;
}

bool Cyclo::operator==(const Cyclo& o) const {
    unsigned L = std::lcm(m_, o.m_);
    Cyclo a = promoted(L), b = o.promoted(L);
    return a.c_ == b.c_;
}

Cyclo Cyclo::scaled(const VScalar& s) const {
    Cyclo r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

std::string Cyclo::str() const {
    if (is_rational()) return c_[0].str();
    std::ostringstream os;
    os << "[z" << m_ << "]";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        os << " + (" << c_[i].str() << ")z^" << i;
    }
    return os.str();
}

} // namespace hecke
