#ifndef HECKE_FINITE_FIELD_HPP
#define HECKE_FINITE_FIELD_HPP

#include <cstdint>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

using FElem = uint32_t; // base-p digit encoding of a polynomial residue

// F_{p^m} as F_p[z]/(f) with f the lexicographically smallest monic
// irreducible of degree m. Multiplication runs over log/antilog tables,
// addition digitwise. Elements are their encodings in [0, p^m).
class GFTable {
public:
    GFTable(unsigned p, unsigned m);

    unsigned p() const { return p_; }
    unsigned m() const { return m_; }
    uint64_t size() const { return size_; }
    const std::vector<unsigned>& modulus() const { return mod_; }

    FElem add(FElem a, FElem b) const;
    FElem neg(FElem a) const;
    FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }
    FElem mul(FElem a, FElem b) const;
    FElem inv(FElem a) const;
    FElem pow(FElem a, uint64_t e) const;
    FElem from_int(long v) const; // prime-subfield element

    // Lexicographically smallest monic irreducible of degree m over F_p,
    // low-to-high coefficients, leading coefficient 1.
    static std::vector<unsigned> smallest_irreducible(unsigned p, unsigned m);

private:
    FElem raw_mul(FElem a, FElem b) const;

    unsigned p_, m_;
    uint64_t size_;
    std::vector<unsigned> mod_;
    std::vector<FElem> exp_;
    std::vector<uint32_t> log_;
};

} // namespace hecke

#endif
