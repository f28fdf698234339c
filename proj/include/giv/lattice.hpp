#pragma once

// Hypercubic lattice geometry and the real-valued (non-compact) abelian
// fields that live on it: link potentials, plaquette field strengths and
// site scalars.
//
// Coordinates in the public API are 1-based, n_i in [1, N]. Storage is a
// flat array with n_0 as the most significant coordinate, so increasing the
// flat index walks sites in lexicographic order.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace giv {

inline constexpr int kMaxDim = 4;

using Coords = std::array<int, kMaxDim>;

enum class Boundary { Open, Periodic };

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& s);

class Geometry {
public:
    Geometry(int dim, int size, Boundary bc);

    int dim() const { return dim_; }
    int size() const { return size_; }
    Boundary bc() const { return bc_; }
    bool periodic() const { return bc_ == Boundary::Periodic; }

    std::size_t num_sites() const { return num_sites_; }
    std::size_t num_links() const { return num_sites_ * static_cast<std::size_t>(dim_); }
    std::size_t num_planes() const { return static_cast<std::size_t>(dim_ * (dim_ - 1) / 2); }

    bool contains(const Coords& n) const;
    std::size_t index(const Coords& n) const;
    Coords coords(std::size_t site) const;
    int coord(std::size_t site, int mu) const { return coords(site)[mu]; }

    std::size_t link_index(std::size_t site, int mu) const { return site * dim_ + mu; }

    // Neighbour at n + steps * mu-hat. Wraps under PBC; empty when the
    // target leaves an open lattice.
    std::optional<std::size_t> neighbor(std::size_t site, int mu, int steps = 1) const;
    // Same, but always wraps. Used where only in-range targets can occur.
    std::size_t wrapped(std::size_t site, int mu, int steps = 1) const;

    // Links that point out of an open lattice (n_mu = N). These are held at
    // zero under OBC.
    bool is_boundary_link(std::size_t site, int mu) const { return coord(site, mu) == size_; }

    // Plaquettes in the (mu, nu) plane rooted at `site`; under OBC both
    // n_mu and n_nu must be < N.
    bool plaquette_in_domain(std::size_t site, int mu, int nu) const;

    // The corner (N, ..., N).
    std::size_t far_corner() const { return num_sites_ - 1; }

    bool operator==(const Geometry& o) const = default;

private:
    int dim_;
    int size_;
    Boundary bc_;
    std::size_t num_sites_;
    std::array<std::size_t, kMaxDim> stride_{};
};

// Index of the unordered plane mu > nu inside per-site plaquette storage.
inline int plane_index(int mu, int nu) { return mu * (mu - 1) / 2 + nu; }

class LinkField {
public:
    explicit LinkField(Geometry geo);
    // Throws std::invalid_argument on size mismatch, non-finite values, or a
    // nonzero OBC boundary link.
    LinkField(Geometry geo, std::vector<double> values);

    const Geometry& geometry() const { return geo_; }
    double operator()(std::size_t site, int mu) const { return values_[geo_.link_index(site, mu)]; }
    double at(const Coords& n, int mu) const { return (*this)(geo_.index(n), mu); }
    std::span<const double> values() const { return values_; }

    LinkField operator+(const LinkField& o) const;
    double max_abs_diff(const LinkField& o) const;

private:
    Geometry geo_;
    std::vector<double> values_;
};

class VertexField {
public:
    explicit VertexField(Geometry geo);
    VertexField(Geometry geo, std::vector<double> values);

    const Geometry& geometry() const { return geo_; }
    double operator()(std::size_t site) const { return values_[site]; }
    double at(const Coords& n) const { return values_[geo_.index(n)]; }
    std::span<const double> values() const { return values_; }

    double max_abs_diff(const VertexField& o) const;

private:
    Geometry geo_;
    std::vector<double> values_;
};

// F_{mu nu}(n) on the planes mu > nu. Reading (nu, mu) gives -F_{mu nu};
// reading a plaquette outside the OBC domain gives 0.
class PlaquetteField {
public:
    explicit PlaquetteField(Geometry geo);
    // `values` holds num_sites * num_planes entries, plane-minor. Entries
    // outside the domain are dropped.
    PlaquetteField(Geometry geo, std::vector<double> values);

    const Geometry& geometry() const { return geo_; }
    double operator()(std::size_t site, int mu, int nu) const;
    double at(const Coords& n, int mu, int nu) const { return (*this)(geo_.index(n), mu, nu); }
    bool in_domain(std::size_t site, int mu, int nu) const { return geo_.plaquette_in_domain(site, mu, nu); }

    double max_abs_diff(const PlaquetteField& o) const;

private:
    Geometry geo_;
    std::vector<double> values_;
};

// F_{mu nu}(n) = A_nu(n+mu) - A_nu(n) - A_mu(n+nu) + A_mu(n).
PlaquetteField field_strength(const LinkField& links);

// Largest violation of the six-term lattice Bianchi identity over every
// elementary cube of the lattice. Requires dim >= 3.
double bianchi_residual(const PlaquetteField& plaq);

// A'_mu(n) = A_mu(n) + L(n+mu) - L(n). Under OBC the boundary links leave
// the lattice and stay zero.
LinkField apply_gauge_transformation(const LinkField& links, const VertexField& lambda);

// Sum of A_mu along the closed straight line through `through` (its mu
// coordinate is ignored). Periodic lattices only.
double wilson_line_sum(const LinkField& links, int mu, const Coords& through);

// {"dim", "size", "bc", "links": [[n_0, ..., n_{d}, mu, value], ...]}
nlohmann::json links_to_json(const LinkField& links);
LinkField links_from_json(const nlohmann::json& j);

}  // namespace giv
