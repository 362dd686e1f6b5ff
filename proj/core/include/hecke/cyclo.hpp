#ifndef HECKE_CYCLO_HPP
#define HECKE_CYCLO_HPP

#include <string>
#include <vector>

#include "hecke/scalar.hpp"

namespace hecke {

// Element of Q(v)(zeta_M), stored in the power basis 1, z, ..., z^{phi(M)-1}
// modulo the M-th cyclotomic polynomial. Conductors are promoted to the lcm
// on mixed arithmetic. Character values of all the finite groups in play live
// here; coefficients stay exact rational functions in v.
class Cyclo {
public:
    Cyclo() : m_(1), c_(1) {}
    Cyclo(const VScalar& s) : m_(1), c_{s} {}
    Cyclo(int n) : Cyclo(VScalar(n)) {}

    static Cyclo root_of_unity(unsigned m, long k); // zeta_m^k
    static const std::vector<BigInt>& cyclotomic_poly(unsigned m);

    unsigned conductor() const { return m_; }
    bool is_zero() const;
    bool is_rational() const;
    VScalar rational_part() const; // throws if not rational

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    bool operator==(const Cyclo& o) const;

    Cyclo scaled(const VScalar& s) const;
    std::string str() const;

private:
    Cyclo promoted(unsigned target) const;
    void reduce_conductor();

    unsigned m_;
    std::vector<VScalar> c_; // size = deg Phi_m
};

} // namespace hecke

#endif
