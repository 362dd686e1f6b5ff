#ifndef HECKE_EXPORT_HPP
#define HECKE_EXPORT_HPP

#include <string>

#include "hecke/config.hpp"
#include "hecke/heckegraph.hpp"

namespace hecke {

std::string graph_to_json(const Session& s, const HeckeGraphSlice& g);
std::string graph_to_dot(const Session& s, const HeckeGraphSlice& g);

} // namespace hecke

#endif
