#pragma once

// Non-compact pure-gauge action, S = beta * sum_n sum_{mu>nu} F_{mu nu}(n)^2,
// evaluated either from links or from the (2+1)d strip variables
//   a = Fbar_10,  c = Fbar_20,  b = Fbar_21 on the n_0 = N plane.

#include <vector>

#include "giv/lattice.hpp"
#include "giv/transform.hpp"

namespace giv {

struct ActionParams {
    double beta = 1.0;

    // Throws unless beta is finite and > 0.
    void validate() const;
};

// Strip variables of a 3d open lattice, indexed by site. a and c vanish off
// their domains; b is read at (N, n_1, n_2) only.
struct StripTriple2p1 {
    Geometry geometry;
    std::vector<double> a;
    std::vector<double> c;
    std::vector<double> b;

    explicit StripTriple2p1(Geometry geo);
    static StripTriple2p1 from_rep(const GaugeInvariantRep& rep);
};

double action_from_links(const LinkField& links, const ActionParams& params);
double action_from_strips(const StripTriple2p1& strips, const ActionParams& params);

// F_10 = a_n - a_{n+0}, F_20 = c_n - c_{n+0},
// F_21 = a_{n+2} - a_n + c_n - c_{n+1} + b_n - b_{n+1}.
PlaquetteField plaquettes_from_strips(const StripTriple2p1& strips);

}  // namespace giv
