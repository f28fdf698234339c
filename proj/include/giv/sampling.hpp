#pragma once

// Seeded random fields for the property suites. Values are uniform in
// [-pi, pi).

#include <random>

#include "giv/lattice.hpp"
#include "giv/transform.hpp"

namespace giv {

using Rng = std::mt19937_64;

double uniform_angle(Rng& rng);

// Random links; open-boundary links leaving the lattice stay zero.
LinkField random_links(const Geometry& geo, Rng& rng);
VertexField random_vertex(const Geometry& geo, Rng& rng);

// Independent random variables: phi (normalized), strips on their domains,
// and loops under PBC with zero transition data. Symmetric: 2d only, via
// asym_to_sym_shift.
GaugeInvariantRep random_rep(const Geometry& geo, Construction c, Rng& rng);

}  // namespace giv
