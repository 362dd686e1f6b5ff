#ifndef HECKE_SYMFUNC_HPP
#define HECKE_SYMFUNC_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hecke/scalar.hpp"

namespace hecke {

// weakly decreasing positive parts
using Partition = std::vector<int>;

int ptn_weight(const Partition& p);
int ptn_length(const Partition& p);
int ptn_n(const Partition& p); // n(lambda) = sum (i-1) lambda_i
Partition ptn_union(const Partition& a, const Partition& b);
std::vector<Partition> partitions_of(int w);
bool dominates(const Partition& a, const Partition& b); // a >= b, same weight
std::string ptn_str(const Partition& p);

enum class Basis { Monomial, Elementary, Power, HallLittlewood };

// One graded basis expansion: partition -> coefficient.
using SymExpansion = std::map<Partition, VScalar>;

// The Macdonald ring at t = v^{2e}, per point degree e, with transition
// matrices computed per weight and cached. Hall-Littlewood P's come from
// Gram-Schmidt against <p_l, p_m> = delta z_l prod (1 - t^{l_i})^{-1},
// processed upward in dominance order extended lexicographically.
class SymRing {
public:
    explicit SymRing(int weight_bound = 8) : bound_(weight_bound) {}

    int weight_bound() const { return bound_; }

    // e_m as a polynomial in power sums (weight-m expansion, t-free)
    SymExpansion newton_e_to_p(int m) const;

    // P_lambda at t = v^{2e} in the monomial basis
    SymExpansion hl_expand(const Partition& lambda, int e) const;

    // product of power sums p_mu -> Hall-Littlewood basis at t = v^{2e}
    SymExpansion p_to_hl(const Partition& mu, int e) const;

    // Psi^{-1}(p_m) = sum_{|l|=m} n_u(l(l)-1) I_l at u = v^e
    SymExpansion psi_inverse_p(int m, int e) const;

    // classical Hall product K^{(lambda)} K^{(mu)} at a degree-e point,
    // coefficients over partitions labelling K^{(nu)}
    SymExpansion mult_torsion_same_point(const Partition& lambda, const Partition& mu, int e) const;

    // P_lambda at t = v^{2e} in the power basis (step 2 of the pipeline)
    SymExpansion hl_in_power(const Partition& lambda, int e) const;

    // n_u(l) = prod_{i=1}^{l} (1 - u^{-2i}) at u = v^e
    static VScalar n_u(int l, int e);

private:
    struct WeightTables {
        std::vector<Partition> ptns;                       // ascending in the GS order
        std::map<Partition, SymExpansion> p_in_m;          // p_lambda over m
        std::map<Partition, SymExpansion> m_in_p;          // m_lambda over p
        std::map<Partition, SymExpansion> P_in_p;          // P_lambda over p, per t
        std::map<Partition, SymExpansion> p_in_P;          // p_lambda over P, per t
    };
    const WeightTables& tables(int w, int e) const;
    void check_weight(int w) const;

    int bound_;
    mutable std::map<std::pair<int, int>, WeightTables> cache_; // (weight, e)
    mutable std::mutex mu_;
};

} // namespace hecke

#endif
