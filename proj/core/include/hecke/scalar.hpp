#ifndef HECKE_SCALAR_HPP
#define HECKE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Dense polynomial in v with integer coefficients, coeff[i] <-> v^i.
// Trailing zeros are always trimmed; zero is the empty vector.
class VPoly {
public:
    VPoly() = default;
    explicit VPoly(BigInt c);
    static VPoly monomial(BigInt c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const BigInt& coeff(int i) const;
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt& at(int i);
    void trim();

    VPoly operator+(const VPoly& o) const;
    VPoly operator-(const VPoly& o) const;
    VPoly operator*(const VPoly& o) const;
    VPoly operator-() const;
    bool operator==(const VPoly& o) const { return c_ == o.c_; }

    BigInt content() const;          // gcd of coefficients, sign of leading coeff
    VPoly primitive_part() const;
    VPoly shifted(int k) const;      // * v^k, k >= 0

    // Exact division; throws if not exact.
    VPoly div_exact(const VPoly& d) const;

    BigRat eval(const BigRat& x) const;
    std::string str() const;

    static VPoly gcd(VPoly a, VPoly b); // primitive, positive leading coeff

private:
    std::vector<BigInt> c_;
};

// Rational function in v over Q, stored as num/den with integer-coefficient
// polynomials in canonical reduced form: gcd(num, den) = 1, den primitive
// with positive leading coefficient.
class VScalar {
public:
    VScalar() : num_(), den_(BigInt(1)) {}
    VScalar(int n) : num_(BigInt(n)), den_(BigInt(1)) {}
    VScalar(BigInt n) : num_(std::move(n)), den_(BigInt(1)) {}
    VScalar(BigInt n, BigInt d);
    VScalar(VPoly n, VPoly d);

    static VScalar v_pow(int k); // v^k, any sign of k
    static VScalar from_rat(const BigRat& r);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    const VPoly& num() const { return num_; }
    const VPoly& den() const { return den_; }

    VScalar operator+(const VScalar& o) const;
    VScalar operator-(const VScalar& o) const;
    VScalar operator*(const VScalar& o) const;
    VScalar operator/(const VScalar& o) const;
    VScalar operator-() const;
    VScalar& operator+=(const VScalar& o) { return *this = *this + o; }
    VScalar& operator-=(const VScalar& o) { return *this = *this - o; }
    VScalar& operator*=(const VScalar& o) { return *this = *this * o; }
    VScalar& operator/=(const VScalar& o) { return *this = *this / o; }
    bool operator==(const VScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const VScalar& o) const { return !(*this == o); }

    VScalar inv() const;
    VScalar pow(int k) const;

    // Value at v^2 = 1/q. Throws OddPowerPresent if an odd power of v
    // survives, i.e. the function is not a function of v^2.
    BigRat eval_at_curve(unsigned long q) const;

    std::string str() const;

private:
    void normalize();
    VPoly num_, den_;
};

// Symmetric quantum integer [s] = (v^s - v^-s)/(v - v^-1), s >= 0.
VScalar qint(int s);

// c_i of the path-algebra presentation for a curve with #X(F_{q^i}) = Ni:
// c_i = v^i [i] Ni / i.
VScalar c_coeff(int i, long long Ni);

// Tiny expression parser for scalar config values: integers, `v`, + - * / ^
// and parentheses. Used by --gamma2-constant.
VScalar parse_vscalar(const std::string& text);

} // namespace hecke

#endif
