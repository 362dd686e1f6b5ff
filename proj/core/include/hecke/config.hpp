#ifndef HECKE_CONFIG_HPP
#define HECKE_CONFIG_HPP

#include <memory>
#include <optional>
#include <string>

#include "hecke/characters.hpp"
#include "hecke/curve.hpp"
#include "hecke/ehall.hpp"
#include "hecke/heckegraph.hpp"

namespace hecke {

struct RunConfig {
    // curve
    unsigned long q = 2;
    std::array<long, 5> coeffs{0, 0, 1, 1, 1};       // a1, a2, a3, a4, a6 (integer encodings in F_q)
    std::optional<std::pair<long, long>> base_point; // nullopt = infinity
    unsigned max_field_degree = 6;

    // operator
    unsigned point_degree = 1;
    unsigned point_index = 0;
    int r = 1;

    int rank = 2;
    long long window_lo = 0, window_hi = 4;

    std::string format = "json"; // json | dot | both
    std::string out_prefix = "graph";

    // engine options
    long long step_budget = 4000000;
    std::string gamma2; // "", "auto", or a scalar expression
    std::string cache_dir;
    unsigned jobs = 1;

    static RunConfig from_json_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// Bundle of the live objects a run needs, built from a config.
struct Session {
    std::shared_ptr<FieldTower> tower;
    std::unique_ptr<EllipticCurve> curve;
    std::unique_ptr<CharTable> chars;
    std::unique_ptr<SymRing> sym;
    std::unique_ptr<Engine> engine;
    std::unique_ptr<Pipeline> pipeline;
    RunConfig cfg;

    ClosedPointId operator_point() const;
};

Session open_session(const RunConfig& cfg);

// decompose p^k = q for a prime power
std::pair<unsigned, unsigned> factor_prime_power(unsigned long q);

} // namespace hecke

#endif
