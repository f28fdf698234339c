#include "doctest.h"

#include <cmath>

#include "giv/action.hpp"
#include "giv/sampling.hpp"

using namespace giv;

TEST_CASE("action from links")
{
    const ActionParams unit{1.0};
    const Geometry o(3, 3, Boundary::Open);
    CHECK(action_from_links(LinkField(o), unit) == 0.0);
    Rng rng(1);
    CHECK(action_from_links(apply_gauge_transformation(LinkField(o), random_vertex(o, rng)), unit) <= 1e-24);

    // One plaquette on the 2x2 open lattice, F_10 = 1.
    const Geometry s(2, 2, Boundary::Open);
    std::vector<double> v(s.num_links(), 0.0);
    v[s.link_index(0, 1)] = 1.0;
    CHECK(action_from_links(LinkField(s, v), ActionParams{2.0}) == 2.0);
}

TEST_CASE("beta validation")
{
    CHECK_NOTHROW(ActionParams{0.5}.validate());
    CHECK_THROWS_AS(ActionParams{-1.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ActionParams{std::nan("")}.validate(), std::invalid_argument);
}

TEST_CASE("strip action equals link action")
{
    Rng rng(77);
    for (int N : {2, 3, 4, 5})
        for (double beta : {0.5, 1.0, 2.0}) {
            const Geometry g(3, N, Boundary::Open);
            for (int i = 0; i < 20; ++i) {
                const LinkField a = random_links(g, rng);
                const double sl = action_from_links(a, {beta});
                const double ss = action_from_strips(StripTriple2p1::from_rep(extract_giv(a, Construction::Asymmetric)), {beta});
                CHECK(std::abs(ss - sl) / std::max(1.0, std::abs(sl)) <= 1e-10);
            }
        }
    CHECK(action_from_strips(StripTriple2p1(Geometry(3, 3, Boundary::Open)), {1.0}) == 0.0);
}

TEST_CASE("plaquettes from strips")
{
    Rng rng(78);
    for (int N : {2, 3, 4}) {
        const Geometry g(3, N, Boundary::Open);
        const LinkField a = random_links(g, rng);
        const PlaquetteField F = plaquettes_from_strips(StripTriple2p1::from_rep(extract_giv(a, Construction::Asymmetric)));
        CHECK(F.max_abs_diff(field_strength(a)) <= 1e-12);
        CHECK(bianchi_residual(F) <= 1e-12);
    }
    const Geometry g(3, 4, Boundary::Open);
    CHECK(plaquettes_from_strips(StripTriple2p1(g)).max_abs_diff(PlaquetteField(g)) == 0.0);

    // Constant a on its domain: F_10 telescopes to zero except on the last
    // row before the edge, where a_{n+0} is outside and read as zero.
    StripTriple2p1 t(g);
    for (std::size_t s = 0; s < g.num_sites(); ++s)
        if (g.coord(s, 0) < 4 && g.coord(s, 1) < 4) t.a[s] = 0.7;
    const PlaquetteField F = plaquettes_from_strips(t);
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const Coords n = g.coords(s);
        if (n[0] < 3 && n[1] < 4) CHECK(F(s, 1, 0) == 0.0);
        if (n[0] == 3 && n[1] < 4) CHECK(F(s, 1, 0) == doctest::Approx(0.7));
    }
}

TEST_CASE("boundary strip term scales with N")
{
    // b(N, 1, 1) = 1 and nothing else: S = beta N sum (Delta_1 b)^2 = beta N.
    // The strip feeds A_2(n) at n_1 = n_2 = 1 on every n_0 plane.
    for (double beta : {0.5, 2.0})
        for (int N : {2, 3, 4, 5, 6}) {
            const Geometry g(3, N, Boundary::Open);
            StripTriple2p1 t(g);
            t.b[g.index({N, 1, 1, 0})] = 1.0;
            const double s = action_from_strips(t, {beta});
            CHECK(s == doctest::Approx(beta * N).epsilon(1e-14));

            std::vector<double> v(g.num_links(), 0.0);
            for (std::size_t x = 0; x < g.num_sites(); ++x)
                if (g.coord(x, 1) == 1 && g.coord(x, 2) == 1) v[g.link_index(x, 2)] = 1.0;
            CHECK(action_from_links(LinkField(g, v), {beta}) == doctest::Approx(s));
        }
}

TEST_CASE("strip action preconditions")
{
    CHECK_THROWS_AS(StripTriple2p1(Geometry(3, 3, Boundary::Periodic)), std::invalid_argument);
    CHECK_THROWS_AS(StripTriple2p1(Geometry(4, 3, Boundary::Open)), std::invalid_argument);
    CHECK_THROWS_AS(StripTriple2p1::from_rep(extract_giv(LinkField(Geometry(2, 3, Boundary::Open)), Construction::Symmetric)),
                    std::invalid_argument);
}
