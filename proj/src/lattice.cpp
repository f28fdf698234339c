#include "giv/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace giv {

std::string to_string(Boundary bc) { return bc == Boundary::Open ? "open" : "periodic"; }

Boundary boundary_from_string(const std::string& s)
{
    if (s == "open" || s == "obc") return Boundary::Open;
    if (s == "periodic" || s == "pbc") return Boundary::Periodic;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

Geometry::Geometry(int dim, int size, Boundary bc) : dim_(dim), size_(size), bc_(bc)
{
    if (dim < 2 || dim > kMaxDim)
        throw std::invalid_argument("lattice dimension must be 2, 3 or 4, got " + std::to_string(dim));
    if (size < 2) throw std::invalid_argument("lattice size must be >= 2, got " + std::to_string(size));
    num_sites_ = 1;
    for (int i = dim - 1; i >= 0; --i) {
        stride_[i] = num_sites_;
        num_sites_ *= static_cast<std::size_t>(size);
    }
}

bool Geometry::contains(const Coords& n) const
{
    for (int i = 0; i < dim_; ++i)
        if (n[i] < 1 || n[i] > size_) return false;
    return true;
}

std::size_t Geometry::index(const Coords& n) const
{
    if (!contains(n)) throw std::out_of_range("site outside lattice");
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) idx += static_cast<std::size_t>(n[i] - 1) * stride_[i];
    return idx;
}

Coords Geometry::coords(std::size_t site) const
{
    Coords n{};
    for (int i = 0; i < dim_; ++i) {
        n[i] = static_cast<int>(site / stride_[i]) + 1;
        site %= stride_[i];
    }
    return n;
}

std::optional<std::size_t> Geometry::neighbor(std::size_t site, int mu, int steps) const
{
    const int c = coord(site, mu) + steps;
    if (c >= 1 && c <= size_)
        return site + static_cast<std::size_t>(steps) * stride_[mu];
    if (!periodic()) return std::nullopt;
    return wrapped(site, mu, steps);
}

std::size_t Geometry::wrapped(std::size_t site, int mu, int steps) const
{
    const int c = coord(site, mu);
    const int w = ((c - 1 + steps) % size_ + size_) % size_ + 1;
    return site + static_cast<std::size_t>(w - c) * stride_[mu];
}

bool Geometry::plaquette_in_domain(std::size_t site, int mu, int nu) const
{
    if (mu == nu) return false;
    if (periodic()) return true;
    const Coords n = coords(site);
    return n[mu] < size_ && n[nu] < size_;
}

// ---------------------------------------------------------------------------

LinkField::LinkField(Geometry geo) : geo_(geo), values_(geo.num_links(), 0.0) {}

LinkField::LinkField(Geometry geo, std::vector<double> values) : geo_(geo), values_(std::move(values))
{
    if (values_.size() != geo_.num_links())
        throw std::invalid_argument("link field has " + std::to_string(values_.size()) + " values, expected " +
                                    std::to_string(geo_.num_links()));
    for (std::size_t s = 0; s < geo_.num_sites(); ++s) {
        for (int mu = 0; mu < geo_.dim(); ++mu) {
            const double v = values_[geo_.link_index(s, mu)];
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite link value");
            if (!geo_.periodic() && geo_.is_boundary_link(s, mu) && v != 0.0)
                throw std::invalid_argument("open-boundary link leaving the lattice must be zero");
        }
    }
}

LinkField LinkField::operator+(const LinkField& o) const
{
    if (!(geo_ == o.geo_)) throw std::invalid_argument("geometry mismatch");
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
    return LinkField(geo_, std::move(v));
}

double LinkField::max_abs_diff(const LinkField& o) const
{
    if (!(geo_ == o.geo_)) throw std::invalid_argument("geometry mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - o.values_[i]));
    return m;
}

VertexField::VertexField(Geometry geo) : geo_(geo), values_(geo.num_sites(), 0.0) {}

VertexField::VertexField(Geometry geo, std::vector<double> values) : geo_(geo), values_(std::move(values))
{
    if (values_.size() != geo_.num_sites()) throw std::invalid_argument("vertex field size mismatch");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite vertex value");
}

double VertexField::max_abs_diff(const VertexField& o) const
{
    if (!(geo_ == o.geo_)) throw std::invalid_argument("geometry mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - o.values_[i]));
    return m;
}

PlaquetteField::PlaquetteField(Geometry geo) : geo_(geo), values_(geo.num_sites() * geo.num_planes(), 0.0) {}

PlaquetteField::PlaquetteField(Geometry geo, std::vector<double> values) : geo_(geo), values_(std::move(values))
{
    const std::size_t planes = geo_.num_planes();
    if (values_.size() != geo_.num_sites() * planes) throw std::invalid_argument("plaquette field size mismatch");
    for (std::size_t s = 0; s < geo_.num_sites(); ++s)
        for (int mu = 1; mu < geo_.dim(); ++mu)
            for (int nu = 0; nu < mu; ++nu)
                if (!geo_.plaquette_in_domain(s, mu, nu)) values_[s * planes + plane_index(mu, nu)] = 0.0;
}

double PlaquetteField::operator()(std::size_t site, int mu, int nu) const
{
    if (mu == nu) return 0.0;
    if (mu > nu) return values_[site * geo_.num_planes() + plane_index(mu, nu)];
    return -values_[site * geo_.num_planes() + plane_index(nu, mu)];
}

double PlaquetteField::max_abs_diff(const PlaquetteField& o) const
{
    if (!(geo_ == o.geo_)) throw std::invalid_argument("geometry mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - o.values_[i]));
    return m;
}

// ---------------------------------------------------------------------------

PlaquetteField field_strength(const LinkField& links)
{
    const Geometry& g = links.geometry();
    const std::size_t planes = g.num_planes();
    std::vector<double> out(g.num_sites() * planes, 0.0);
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        for (int mu = 1; mu < g.dim(); ++mu) {
            for (int nu = 0; nu < mu; ++nu) {
                if (!g.plaquette_in_domain(s, mu, nu)) continue;
                const std::size_t s_mu = g.wrapped(s, mu);
                const std::size_t s_nu = g.wrapped(s, nu);
                out[s * planes + plane_index(mu, nu)] = links(s_mu, nu) - links(s, nu) - links(s_nu, mu) + links(s, mu);
            }
        }
    }
    return PlaquetteField(g, std::move(out));
}

double bianchi_residual(const PlaquetteField& plaq)
{
    const Geometry& g = plaq.geometry();
    if (g.dim() < 3) throw std::invalid_argument("Bianchi identity needs at least three directions");
    double worst = 0.0;
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const Coords n = g.coords(s);
        for (int mu = 2; mu < g.dim(); ++mu) {
            for (int nu = 1; nu < mu; ++nu) {
                for (int al = 0; al < nu; ++al) {
                    if (!g.periodic() && (n[mu] == g.size() || n[nu] == g.size() || n[al] == g.size())) continue;
                    const double r = plaq(g.wrapped(s, al), mu, nu) - plaq(s, mu, nu) +
                                     plaq(g.wrapped(s, nu), al, mu) - plaq(s, al, mu) +
                                     plaq(g.wrapped(s, mu), nu, al) - plaq(s, nu, al);
                    worst = std::max(worst, std::abs(r));
                }
            }
        }
    }
    return worst;
}

LinkField apply_gauge_transformation(const LinkField& links, const VertexField& lambda)
{
    const Geometry& g = links.geometry();
    if (!(lambda.geometry() == g)) throw std::invalid_argument("gauge function geometry mismatch");
    std::vector<double> out(links.values().begin(), links.values().end());
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        for (int mu = 0; mu < g.dim(); ++mu) {
            if (!g.periodic() && g.is_boundary_link(s, mu)) continue;
            out[g.link_index(s, mu)] += lambda(g.wrapped(s, mu)) - lambda(s);
        }
    }
    return LinkField(g, std::move(out));
}

double wilson_line_sum(const LinkField& links, int mu, const Coords& through)
{
    const Geometry& g = links.geometry();
    if (!g.periodic()) throw std::invalid_argument("Wilson lines are only closed on a periodic lattice");
    if (mu < 0 || mu >= g.dim()) throw std::out_of_range("direction out of range");
    Coords n = through;
    n[mu] = 1;
    std::size_t s = g.index(n);
    double sum = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        sum += links(s, mu);
        s = g.wrapped(s, mu);
    }
    return sum;
}

nlohmann::json links_to_json(const LinkField& links)
{
    const Geometry& g = links.geometry();
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const Coords n = g.coords(s);
        for (int mu = 0; mu < g.dim(); ++mu) {
            nlohmann::json row = nlohmann::json::array();
            for (int i = 0; i < g.dim(); ++i) row.push_back(n[i]);
            row.push_back(mu);
            row.push_back(links(s, mu));
            entries.push_back(std::move(row));
        }
    }
    return {{"dim", g.dim()}, {"size", g.size()}, {"bc", to_string(g.bc())}, {"links", std::move(entries)}};
}

LinkField links_from_json(const nlohmann::json& j)
{
    const Geometry g(j.at("dim").get<int>(), j.at("size").get<int>(),
                     boundary_from_string(j.at("bc").get<std::string>()));
    const auto& entries = j.at("links");
    if (!entries.is_array()) throw std::invalid_argument("\"links\" must be an array");
    std::vector<double> values(g.num_links(), 0.0);
    std::vector<char> seen(g.num_links(), 0);
    for (const auto& row : entries) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(g.dim() + 2))
            throw std::invalid_argument("link entry must be [coords..., mu, value]");
        Coords n{};
        for (int i = 0; i < g.dim(); ++i) n[i] = row[i].get<int>();
        const int mu = row[g.dim()].get<int>();
        if (!g.contains(n) || mu < 0 || mu >= g.dim()) throw std::invalid_argument("link entry out of range");
        const std::size_t li = g.link_index(g.index(n), mu);
        if (seen[li]) throw std::invalid_argument("duplicate link entry");
        seen[li] = 1;
        values[li] = row[g.dim() + 1].get<double>();
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw std::invalid_argument("missing link entries");
    return LinkField(g, std::move(values));
}

}  // namespace giv
