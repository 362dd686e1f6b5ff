#include "hecke/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hecke {

VPoly::VPoly(BigInt c) {
    if (c != 0) c_.push_back(std::move(c));
}

VPoly VPoly::monomial(BigInt c, int deg) {
    VPoly p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, BigInt(0));
    p.c_[deg] = std::move(c);
    return p;
}

const BigInt& VPoly::coeff(int i) const {
    static const BigInt zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

BigInt& VPoly::at(int i) {
    if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, BigInt(0));
    return c_[i];
}

void VPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

VPoly VPoly::operator+(const VPoly& o) const {
    VPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(int(i)) + o.coeff(int(i));
    r.trim();
    return r;
}

VPoly VPoly::operator-(const VPoly& o) const { return *this + (-o); }

VPoly VPoly::operator-() const {
    VPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

VPoly VPoly::operator*(const VPoly& o) const {
    VPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

BigInt VPoly::content() const {
    BigInt g(0);
    for (const auto& c : c_) g = boost::multiprecision::gcd(g, c);
    if (!c_.empty() && c_.back() < 0) g = -g;
    return g;
}

VPoly VPoly::primitive_part() const {
    if (is_zero()) return VPoly();
    BigInt g = content();
    VPoly r = *this;
    for (auto& c : r.c_) c /= g;
    return r;
}

VPoly VPoly::shifted(int k) const {
    if (is_zero()) return VPoly();
    VPoly r;
    r.c_.assign(c_.size() + k, BigInt(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
}

VPoly VPoly::div_exact(const VPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::Internal, "VPoly division by zero");
    VPoly rem = *this, q;
    if (rem.is_zero()) return q;
    q.c_.assign(std::max<int>(degree() - d.degree() + 1, 0), BigInt(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        BigInt lead = rem.c_.back();
        const BigInt& dl = d.c_.back();
        if (lead % dl != 0) throw Error(ErrorKind::Internal, "VPoly non-exact division");
        BigInt f = lead / dl;
        int sh = rem.degree() - d.degree();
        q.c_[sh] = f;
        rem = rem - d.shifted(sh) * VPoly(f);
    }
    if (!rem.is_zero()) throw Error(ErrorKind::Internal, "VPoly non-exact division (remainder)");
    q.trim();
    return q;
}

BigRat VPoly::eval(const BigRat& x) const {
    BigRat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigRat(*it);
    return acc;
}

std::string VPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = c_[i];
        if (c == 0) continue;
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || i == 0) os << a.str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << "v";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Pseudo-remainder of a by b, both nonzero, deg a >= deg b.
VPoly prem(VPoly a, const VPoly& b) {
    int k = a.degree() - b.degree() + 1;
    BigInt lb = b.coeffs().back();
    VPoly scale(boost::multiprecision::pow(lb, k));
    a = a * scale;
    while (!a.is_zero() && a.degree() >= b.degree()) {
        BigInt f = a.coeffs().back() / lb;
        a = a - b.shifted(a.degree() - b.degree()) * VPoly(f);
    }
    return a;
}

} // namespace

VPoly VPoly::gcd(VPoly a, VPoly b) {
    if (a.is_zero()) return b.is_zero() ? VPoly() : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    a = a.primitive_part();
    b = b.primitive_part();
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) std::swap(a, b);
        if (b.is_zero()) break;
        VPoly r = prem(a, b);
        a = b;
        b = r.is_zero() ? VPoly() : r.primitive_part();
    }
    return a.primitive_part();
}

VScalar::VScalar(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
VScalar::VScalar(VPoly n, VPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

VScalar VScalar::v_pow(int k) {
    VScalar s;
    if (k >= 0) {
        s.num_ = VPoly::monomial(BigInt(1), k);
        s.den_ = VPoly(BigInt(1));
    } else {
        s.num_ = VPoly(BigInt(1));
        s.den_ = VPoly::monomial(BigInt(1), -k);
    }
    return s;
}

VScalar VScalar::from_rat(const BigRat& r) {
    return VScalar(VPoly(boost::multiprecision::numerator(r)), VPoly(boost::multiprecision::denominator(r)));
}

bool VScalar::is_one() const {
    return num_.degree() == 0 && den_.degree() == 0 && num_.coeff(0) == 1 && den_.coeff(0) == 1;
}

void VScalar::normalize() {
    if (den_.is_zero()) throw Error(ErrorKind::Internal, "VScalar zero denominator");
    if (num_.is_zero()) {
        den_ = VPoly(BigInt(1));
        return;
    }
    VPoly g = VPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.div_exact(g);
        den_ = den_.div_exact(g);
    }
    BigInt cn = num_.content(), cd = den_.content();
    if (cn < 0) cn = -cn;
    BigInt cg = boost::multiprecision::gcd(cn, cd < 0 ? BigInt(-cd) : cd);
    if (den_.coeffs().back() < 0) cg = -cg;
    if (cg != 1) {
        VPoly d(cg);
        num_ = num_.div_exact(d);
        den_ = den_.div_exact(d);
    }
}

VScalar VScalar::operator+(const VScalar& o) const {
    return VScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
VScalar VScalar::operator-(const VScalar& o) const {
    return VScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
VScalar VScalar::operator*(const VScalar& o) const { return VScalar(num_ * o.num_, den_ * o.den_); }
VScalar VScalar::operator/(const VScalar& o) const {
    if (o.is_zero()) throw Error(ErrorKind::Internal, "VScalar division by zero");
    return VScalar(num_ * o.den_, den_ * o.num_);
}
VScalar VScalar::operator-() const {
    VScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

VScalar VScalar::inv() const { return VScalar(1) / *this; }

VScalar VScalar::pow(int k) const {
    VScalar base = k >= 0 ? *this : inv();
    int e = k >= 0 ? k : -k;
    VScalar acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

BigRat VScalar::eval_at_curve(unsigned long q) const {
    // Split f = (a(v^2) + v b(v^2)) / (c(v^2) + v d(v^2)) and evaluate at
    // v^2 = 1/q; the odd component must vanish.
    BigRat X(1, q);
    auto split_eval = [&](const VPoly& p, BigRat& even, BigRat& odd) {
        even = 0;
        odd = 0;
        BigRat xp(1);
        for (int i = 0; i <= p.degree(); i += 2) {
            even += BigRat(p.coeff(i)) * xp;
            if (i + 1 <= p.degree()) odd += BigRat(p.coeff(i + 1)) * xp;
            xp *= X;
        }
    };
    BigRat A, B, C, D;
    split_eval(num_, A, B);
    split_eval(den_, C, D);
    if (B * C != A * D) throw OddPowerPresent(str());
    BigRat dd = C * C - X * D * D;
    if (dd == 0) throw OddPowerPresent("pole at v^2 = 1/q in " + str());
    return (A * C - X * B * D) / dd;
}

std::string VScalar::str() const {
    if (den_.degree() == 0 && den_.coeff(0) == 1) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

VScalar qint(int s) {
    if (s < 0) throw Error(ErrorKind::Internal, "qint: negative argument");
    // [s] = v^{s-1} + v^{s-3} + ... + v^{1-s}
    VScalar acc(0);
    for (int e = s - 1; e >= 1 - s; e -= 2) acc += VScalar::v_pow(e);
    return acc;
}

VScalar c_coeff(int i, long long Ni) {
    return VScalar::v_pow(i) * qint(i) * VScalar(BigInt(Ni), BigInt(i));
}

namespace {

struct ExprParser {
    const std::string& s;
    size_t pos = 0;

    explicit ExprParser(const std::string& t) : s(t) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    VScalar parse_expr() {
        VScalar r = parse_term();
        for (;;) {
            if (eat('+'))
                r += parse_term();
            else if (eat('-'))
                r -= parse_term();
            else
                return r;
        }
    }
    VScalar parse_term() {
        VScalar r = parse_factor();
        for (;;) {
            if (eat('*'))
                r *= parse_factor();
            else if (eat('/'))
                r /= parse_factor();
            else
                return r;
        }
    }
    VScalar parse_factor() {
        VScalar base = parse_atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            long e = parse_int();
            return base.pow(static_cast<int>(neg ? -e : e));
        }
        return base;
    }
    long parse_int() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ConfigError("scalar expression: expected integer at '" + s.substr(start) + "'");
        return std::stol(s.substr(start, pos - start));
    }
    VScalar parse_atom() {
        skip();
        if (eat('(')) {
            VScalar r = parse_expr();
            if (!eat(')')) throw ConfigError("scalar expression: missing ')'");
            return r;
        }
        if (eat('-')) return -parse_atom();
        if (pos < s.size() && (s[pos] == 'v' || s[pos] == 'V')) {
            ++pos;
            return VScalar::v_pow(1);
        }
        return VScalar(BigInt(parse_int()));
    }
};

} // namespace

VScalar parse_vscalar(const std::string& text) {
    ExprParser p(text);
    VScalar r = p.parse_expr();
    p.skip();
    if (p.pos != text.size()) throw ConfigError("scalar expression: trailing input '" + text.substr(p.pos) + "'");
    return r;
}

} // namespace hecke
