#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "zdim/generators.hpp"
#include "zdim/set_core.hpp"

namespace zdim {

// Textual generator specs, e.g. "squares", "digits:k=3,allow=02",
// "code:k=3,delta=2,B=0|2", "subst:c=2,d=2,rule=000-,depth=6",
// "tower:a=0.3,b=0.5,g=0.7,set=B", "pascal:depth=10", "file:path".
struct SpecContext {
  std::optional<unsigned> depth;  // fallback depth for lattice generators
};

AnySet parse_set_spec(const std::string& spec, const SpecContext& ctx = {});

// "k=3,delta=2,B=0|2"
InstantaneousCodeSpec parse_code_body(const std::string& body);
// "k=3,allow=02" -> (k, digits)
std::pair<unsigned, std::vector<unsigned>> parse_digits_body(const std::string& body);
// "c=2,d=2,rule=000-" (an optional depth=... is returned separately)
SubstitutionRule parse_subst_body(const std::string& body, std::optional<unsigned>* depth = nullptr);
TowerPairSpec parse_tower_body(const std::string& body, char* which = nullptr);
// "d=2,v=1;0|0;1" -> (d, flattened vectors)
std::pair<unsigned, std::vector<std::int64_t>> parse_vectors_body(const std::string& body);

std::map<std::string, std::string> parse_params(const std::string& body);

}  // namespace zdim
