#include "doctest.h"

#include <cmath>

#include "giv/lattice.hpp"
#include "giv/sampling.hpp"

using namespace giv;

namespace {

LinkField pure_gauge(const Geometry& g, const VertexField& lambda) { return apply_gauge_transformation(LinkField(g), lambda); }

}  // namespace

TEST_CASE("geometry indexing")
{
    const Geometry g(3, 4, Boundary::Periodic);
    CHECK(g.num_sites() == 64);
    CHECK(g.num_links() == 192);
    CHECK(g.num_planes() == 3);
    for (std::size_t s = 0; s < g.num_sites(); ++s) CHECK(g.index(g.coords(s)) == s);
    CHECK(g.index({1, 1, 1, 0}) == 0);
    CHECK(g.index({1, 1, 2, 0}) == 1);
    CHECK(g.index({2, 1, 1, 0}) == 16);
    CHECK(g.far_corner() == g.index({4, 4, 4, 0}));

    const std::size_t edge = g.index({4, 2, 3, 0});
    CHECK(g.coords(g.wrapped(edge, 0)) == Coords{1, 2, 3, 0});
    CHECK(g.coords(g.wrapped(g.index({1, 2, 3, 0}), 0, -1)) == Coords{4, 2, 3, 0});

    const Geometry o(2, 3, Boundary::Open);
    CHECK_FALSE(o.neighbor(o.index({3, 1, 0, 0}), 0).has_value());
    CHECK(o.neighbor(o.index({2, 1, 0, 0}), 0).value() == o.index({3, 1, 0, 0}));
    CHECK(o.is_boundary_link(o.index({3, 1, 0, 0}), 0));
    CHECK_FALSE(o.is_boundary_link(o.index({3, 1, 0, 0}), 1));

    CHECK_THROWS_AS(Geometry(1, 3, Boundary::Open), std::invalid_argument);
    CHECK_THROWS_AS(Geometry(5, 3, Boundary::Open), std::invalid_argument);
    CHECK_THROWS_AS(Geometry(2, 1, Boundary::Open), std::invalid_argument);
    CHECK_THROWS_AS(g.index({5, 1, 1, 0}), std::out_of_range);
}

TEST_CASE("link field validation")
{
    const Geometry o(2, 3, Boundary::Open);
    std::vector<double> v(o.num_links(), 0.0);
    v[o.link_index(o.index({3, 2, 0, 0}), 0)] = 1.0;
    CHECK_THROWS_AS(LinkField(o, v), std::invalid_argument);
    v.assign(o.num_links(), 0.0);
    v[0] = std::nan("");
    CHECK_THROWS_AS(LinkField(o, v), std::invalid_argument);
    CHECK_THROWS_AS(LinkField(o, std::vector<double>(5, 0.0)), std::invalid_argument);
}

TEST_CASE("field strength examples")
{
    const Geometry o(2, 3, Boundary::Open);
    CHECK(field_strength(LinkField(o)).max_abs_diff(PlaquetteField(o)) == 0.0);

    // A_1(2,1) = 1: F_10(2,1) = +1 through the +A_1(n) term, F_10(1,1) = -1
    // through -A_1(n+0).
    std::vector<double> v(o.num_links(), 0.0);
    v[o.link_index(o.index({2, 1, 0, 0}), 1)] = 1.0;
    const PlaquetteField F = field_strength(LinkField(o, v));
    for (std::size_t s = 0; s < o.num_sites(); ++s) {
        const Coords n = o.coords(s);
        double want = 0.0;
        if (n == Coords{2, 1, 0, 0}) want = 1.0;
        if (n == Coords{1, 1, 0, 0}) want = -1.0;
        CHECK(F(s, 1, 0) == want);
        CHECK(F(s, 0, 1) == -want);
    }

    Rng rng(11);
    for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
        const Geometry g(3, 3, bc);
        const VertexField lambda = random_vertex(g, rng);
        CHECK(field_strength(pure_gauge(g, lambda)).max_abs_diff(PlaquetteField(g)) <= 1e-12);
        const LinkField a = random_links(g, rng), b = random_links(g, rng);
        const PlaquetteField fa = field_strength(a), fb = field_strength(b), fab = field_strength(a + b);
        double worst = 0.0;
        for (std::size_t s = 0; s < g.num_sites(); ++s)
            for (int mu = 0; mu < 3; ++mu)
                for (int nu = 0; nu < 3; ++nu) worst = std::max(worst, std::abs(fab(s, mu, nu) - fa(s, mu, nu) - fb(s, mu, nu)));
        CHECK(worst <= 1e-14);
    }
}

TEST_CASE("open plaquette domain")
{
    const Geometry o(3, 3, Boundary::Open);
    CHECK(o.plaquette_in_domain(o.index({2, 2, 3, 0}), 1, 0));
    CHECK_FALSE(o.plaquette_in_domain(o.index({3, 2, 1, 0}), 1, 0));
    CHECK_FALSE(o.plaquette_in_domain(o.index({1, 3, 1, 0}), 1, 0));
}

TEST_CASE("Bianchi identity")
{
    Rng rng(2024);
    for (int dim : {3, 4})
        for (int N : {2, 3, 4})
            for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
                const Geometry g(dim, N, bc);
                const int trials = dim == 4 && N == 4 ? 100 : 1000;
                double worst = 0.0;
                for (int i = 0; i < trials; ++i) worst = std::max(worst, bianchi_residual(field_strength(random_links(g, rng))));
                CHECK(worst <= 1e-12);
            }

    const Geometry g(3, 3, Boundary::Periodic);
    CHECK(bianchi_residual(PlaquetteField(g)) == 0.0);
    std::vector<double> v(g.num_sites() * g.num_planes(), 0.0);
    v[g.index({2, 2, 2, 0}) * g.num_planes() + plane_index(2, 1)] = 1.0;
    CHECK(bianchi_residual(PlaquetteField(g, v)) == 1.0);

    CHECK_THROWS_AS(bianchi_residual(PlaquetteField(Geometry(2, 3, Boundary::Open))), std::invalid_argument);
}

TEST_CASE("gauge transformations")
{
    Rng rng(5);
    const Geometry p(3, 3, Boundary::Periodic);
    const LinkField a = random_links(p, rng);
    CHECK(apply_gauge_transformation(a, VertexField(p, std::vector<double>(p.num_sites(), 2.5))).max_abs_diff(a) <= 1e-15);
    const LinkField b = apply_gauge_transformation(a, random_vertex(p, rng));
    CHECK(field_strength(b).max_abs_diff(field_strength(a)) <= 1e-12);

    // Lambda(n) = n_0 on an open lattice: A_0 = 1 wherever the link stays
    // inside, boundary links remain zero.
    const Geometry o(2, 3, Boundary::Open);
    std::vector<double> lam(o.num_sites());
    for (std::size_t s = 0; s < o.num_sites(); ++s) lam[s] = o.coord(s, 0);
    const LinkField c = apply_gauge_transformation(LinkField(o), VertexField(o, lam));
    for (std::size_t s = 0; s < o.num_sites(); ++s) {
        CHECK(c(s, 0) == (o.coord(s, 0) < 3 ? 1.0 : 0.0));
        CHECK(c(s, 1) == 0.0);
    }
    CHECK_THROWS_AS(apply_gauge_transformation(a, VertexField(o)), std::invalid_argument);
}

TEST_CASE("Wilson lines")
{
    const Geometry p(2, 4, Boundary::Periodic);
    CHECK(wilson_line_sum(LinkField(p), 0, {1, 2, 0, 0}) == 0.0);
    std::vector<double> v(p.num_links(), 0.0);
    for (std::size_t s = 0; s < p.num_sites(); ++s) v[p.link_index(s, 0)] = 0.75;
    CHECK(wilson_line_sum(LinkField(p, v), 0, {3, 2, 0, 0}) == doctest::Approx(3.0));

    Rng rng(8);
    const LinkField a = random_links(p, rng);
    const LinkField b = apply_gauge_transformation(a, random_vertex(p, rng));
    for (int mu = 0; mu < 2; ++mu)
        for (int k = 1; k <= 4; ++k) {
            const Coords n{k, k, 0, 0};
            CHECK(std::abs(wilson_line_sum(a, mu, n) - wilson_line_sum(b, mu, n)) <= 1e-12);
        }
    CHECK_THROWS_AS(wilson_line_sum(LinkField(Geometry(2, 3, Boundary::Open)), 0, {1, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("link JSON")
{
    Rng rng(3);
    const Geometry o(3, 2, Boundary::Open);
    const LinkField a = random_links(o, rng);
    const auto j = links_to_json(a);
    CHECK(j["links"].size() == o.num_links());
    CHECK(links_from_json(nlohmann::json::parse(j.dump())).max_abs_diff(a) == 0.0);

    auto dup = j;
    dup["links"].push_back(dup["links"][0]);
    CHECK_THROWS_AS(links_from_json(dup), std::invalid_argument);
    auto missing = j;
    missing["links"].erase(missing["links"].begin());
    CHECK_THROWS_AS(links_from_json(missing), std::invalid_argument);
}
