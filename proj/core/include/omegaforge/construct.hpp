#ifndef OMEGAFORGE_CONSTRUCT_HPP
#define OMEGAFORGE_CONSTRUCT_HPP

#include "omegaforge/waves.hpp"

namespace omegaforge {

enum class RecipeCase {
  Identity,
  Prop1Case1,
  Prop1Case2,
  Prop1Case3,
  Prop1Case4,
  Prop1Case5,
  Thm1Case1,
  Thm1Case2,
  WithInfinity
};

const char* recipe_name(RecipeCase c);

struct Construction {
  TreePtr tree;
  RecipeCase recipe;
  OmegaSet spectrum;  // verified through omega_sym
};

// Builds a continuous witness with spectrum exactly S. Requires 0 in S,
// |S| >= 2, no infinity flag, and the Theorem-1 inequality; throws
// std::invalid_argument("not continuously realizable") when it fails.
// Every result is verified through omega_sym before being returned.
Construction construct_continuous(const CardinalitySpec& s);

// Builds a witness with spectrum A united with {infinity}; works for every
// finitely described A containing 0.
Construction construct_with_infinity(const CardinalitySpec& a);

}  // namespace omegaforge

#endif
