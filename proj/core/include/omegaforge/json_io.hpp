#ifndef OMEGAFORGE_JSON_IO_HPP
#define OMEGAFORGE_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "omegaforge/construct.hpp"
#include "omegaforge/polyreal.hpp"

namespace omegaforge {

// Deterministic JSON with exact rationals rendered as "p/q" strings.
using Json = nlohmann::ordered_json;

Json to_json(const Rat& q);
Json to_json(const PLFunction& f);
Json to_json(const OmegaProfile& p);
Json to_json(const ExtremaSequence& s);
Json to_json(const TreePtr& t);
Json to_json(const RatPoly& p);
Json to_json(const OmegaSet& s);
Json to_json(const SequenceWitness& w);
Json to_json(const PolyWitness& w);

Rat rat_from_json(const Json& j);
PLFunction pl_from_json(const Json& j);
TreePtr tree_from_json(const Json& j);
RatPoly poly_from_json(const Json& j);

// Polynomial coefficient list "c0,c1,..." lowest degree first, "p/q" allowed.
RatPoly parse_coeff_list(const std::string& text);
std::string coeff_list(const RatPoly& p);

}  // namespace omegaforge

#endif
