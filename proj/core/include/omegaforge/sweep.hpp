#ifndef OMEGAFORGE_SWEEP_HPP
#define OMEGAFORGE_SWEEP_HPP

#include "omegaforge/plfun.hpp"

namespace omegaforge {

// Builds a piecewise linear function realizing an accepted extrema sequence
// by a bottom-up strand sweep: levels 1..m carry the odd-index counts, bands
// the even-index counts. Turning events pair adjacent strands, endpoint
// events use the extreme positions, positions are chosen rightmost-legal.
// The result is re-verified through omega_pl before being returned.
//
// Throws std::invalid_argument("not analytically realizable") when the
// sequence fails conditions i-v, and
// std::runtime_error("witness construction failed") on a sweep dead end.
PLFunction build_witness(const ExtremaSequence& seq);

}  // namespace omegaforge

#endif
