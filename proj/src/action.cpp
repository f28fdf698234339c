#include "giv/action.hpp"

#include <cmath>
#include <stdexcept>

namespace giv {

namespace {

void require_2p1(const Geometry& g)
{
    if (g.dim() != 3 || g.periodic()) throw std::invalid_argument("strip action needs a 3d open lattice");
}

// Value at n shifted by one step in mu; zero once the step leaves the lattice.
double shifted(const std::vector<double>& f, const Geometry& g, std::size_t s, int mu)
{
    return g.coord(s, mu) < g.size() ? f[g.wrapped(s, mu)] : 0.0;
}

std::size_t pinned0(const Geometry& g, std::size_t s)
{
    Coords n = g.coords(s);
    n[0] = g.size();
    return g.index(n);
}

}  // namespace

void ActionParams::validate() const
{
    if (!std::isfinite(beta) || beta <= 0.0) throw std::invalid_argument("beta must be finite and positive");
}

StripTriple2p1::StripTriple2p1(Geometry geo)
    : geometry(geo), a(geo.num_sites(), 0.0), c(geo.num_sites(), 0.0), b(geo.num_sites(), 0.0)
{
    require_2p1(geo);
}

StripTriple2p1 StripTriple2p1::from_rep(const GaugeInvariantRep& rep)
{
    if (rep.construction() != Construction::Asymmetric)
        throw std::invalid_argument("strip action uses the asymmetric construction");
    StripTriple2p1 t(rep.geometry());
    const auto copy = [](const StripField& s) { return std::vector<double>(s.values().begin(), s.values().end()); };
    t.a = copy(rep.strip(1, 0));
    t.c = copy(rep.strip(2, 0));
    t.b = copy(rep.strip(2, 1));
    return t;
}

double action_from_links(const LinkField& links, const ActionParams& params)
{
    const PlaquetteField F = field_strength(links);
    const Geometry& g = links.geometry();
    double sum = 0.0;
    for (std::size_t s = 0; s < g.num_sites(); ++s)
        for (int mu = 1; mu < g.dim(); ++mu)
            for (int nu = 0; nu < mu; ++nu) {
                const double f = F(s, mu, nu);
                sum += f * f;
            }
    return params.beta * sum;
}

double action_from_strips(const StripTriple2p1& t, const ActionParams& params)
{
    const Geometry& g = t.geometry;
    require_2p1(g);
    const int N = g.size();
    double bulk = 0.0, boundary = 0.0, cross = 0.0;
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const Coords n = g.coords(s);
        const double d0a = shifted(t.a, g, s, 0) - t.a[s];
        const double d0c = shifted(t.c, g, s, 0) - t.c[s];
        bulk += d0a * d0a + d0c * d0c;
        if (n[1] == N || n[2] == N) continue;
        const std::size_t p = pinned0(g, s);
        const double d1b = shifted(t.b, g, p, 1) - t.b[p];
        if (n[0] == N) {
            boundary += d1b * d1b;
            continue;
        }
        const double x = shifted(t.a, g, s, 2) - t.a[s] - shifted(t.c, g, s, 1) + t.c[s];
        bulk += x * x;
        cross += d1b * x;
    }
    return params.beta * (bulk + N * boundary - 2.0 * cross);
}

PlaquetteField plaquettes_from_strips(const StripTriple2p1& t)
{
    const Geometry& g = t.geometry;
    require_2p1(g);
    const std::size_t planes = g.num_planes();
    std::vector<double> out(g.num_sites() * planes, 0.0);
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const std::size_t p = pinned0(g, s);
        out[s * planes + plane_index(1, 0)] = t.a[s] - shifted(t.a, g, s, 0);
        out[s * planes + plane_index(2, 0)] = t.c[s] - shifted(t.c, g, s, 0);
        out[s * planes + plane_index(2, 1)] = shifted(t.a, g, s, 2) - t.a[s] + t.c[s] - shifted(t.c, g, s, 1) + t.b[p] -
                                              shifted(t.b, g, p, 1);
    }
    return PlaquetteField(g, std::move(out));
}

}  // namespace giv
