#include "giv/sampling.hpp"

#include <numbers>
#include <stdexcept>

namespace giv {

double uniform_angle(Rng& rng)
{
    std::uniform_real_distribution<double> d(-std::numbers::pi, std::numbers::pi);
    return d(rng);
}

LinkField random_links(const Geometry& geo, Rng& rng)
{
    std::vector<double> v(geo.num_links(), 0.0);
    for (std::size_t s = 0; s < geo.num_sites(); ++s)
        for (int mu = 0; mu < geo.dim(); ++mu)
            if (geo.periodic() || !geo.is_boundary_link(s, mu)) v[geo.link_index(s, mu)] = uniform_angle(rng);
    return LinkField(geo, std::move(v));
}

VertexField random_vertex(const Geometry& geo, Rng& rng)
{
    std::vector<double> v(geo.num_sites());
    for (double& x : v) x = uniform_angle(rng);
    return VertexField(geo, std::move(v));
}

GaugeInvariantRep random_rep(const Geometry& geo, Construction c, Rng& rng)
{
    // The two symmetric strip families are tied together, so draw the
    // asymmetric variables and shift.
    if (c == Construction::Symmetric) {
        if (geo.dim() != 2) throw std::invalid_argument("random symmetric representations exist in 2d only");
        return asym_to_sym_shift(random_rep(geo, Construction::Asymmetric, rng));
    }
    std::vector<double> phi(geo.num_sites());
    for (double& x : phi) x = uniform_angle(rng);
    phi[geo.far_corner()] = 0.0;

    std::vector<StripField> strips;
    for (const auto& lay : strip_layout(c, geo.dim())) {
        StripField shape(geo, lay);
        std::vector<double> v(geo.num_sites(), 0.0);
        for (std::size_t s = 0; s < geo.num_sites(); ++s)
            if (shape.in_domain(s)) v[s] = uniform_angle(rng);
        strips.emplace_back(geo, lay, std::move(v));
    }

    std::vector<LoopField> loops;
    if (geo.periodic()) {
        for (int mu = 0; mu < geo.dim(); ++mu) {
            LoopField shape(geo, mu);
            std::vector<double> v(shape.num_lines());
            for (double& x : v) x = uniform_angle(rng);
            loops.emplace_back(geo, mu, std::move(v));
        }
    }
    return GaugeInvariantRep(c, VertexField(geo, std::move(phi)), std::move(strips), std::move(loops),
                             TransitionData::zero(geo.dim()));
}

}  // namespace giv
