#pragma once

// Change of variables A_mu <-> {phi, strips, loops} for abelian lattice
// gauge fields.
//
// Every link is rewritten as a lattice gradient of a vertex field phi plus a
// weighted sum of plaquette strips,
//
//     A_mu(n) = sum_s w_s Fbar_s(pin_s(n)) + phi(n + mu) - phi(n),    n_mu < N,
//
// where a strip Fbar_{mu nu}(p) = sum_{l=0}^{N-p_nu-1} F_{mu nu}(p + l nu) is
// the plaquette sum from p to the lattice edge along nu, and pin_s(n) sets
// some leading coordinates of n to N. Under PBC the links that wrap around
// (n_mu = N) are carried by the gauge-invariant loops
//
//     fbar_mu = sum_{n_mu=1}^{N} A_mu - varphi_mu(n with n_mu = 1).
//
// Asymmetric construction (any dimension): strip (mu, nu) for every mu > nu,
// weight 1, coordinates 0..nu-1 pinned. Symmetric construction: (1+1)d with
// both strip families at weight 1/2, and the isotropic 3d Hofstadter layout
// with weights 2/3 and 1/3 (reconstruction only).

#include <array>
#include <cstddef>
#include <vector>

#include "giv/lattice.hpp"
#include "json.hpp"

namespace giv {

enum class Construction { Asymmetric, Symmetric };

std::string to_string(Construction c);
Construction construction_from_string(const std::string& s);

// Transition function varphi(n) = offset + sum_i slope_i n_i, defined on all
// of Z^D so that it can be evaluated on periodic images of the lattice.
struct AffineFunction {
    double offset = 0.0;
    std::array<double, kMaxDim> slope{};

    double operator()(const Coords& n, int dim) const;
};

struct TransitionData {
    std::vector<AffineFunction> functions;                      // one per direction
    std::array<std::array<double, kMaxDim>, kMaxDim> twist{};  // twist[nu][mu] = varphi_{nu mu}

    static TransitionData zero(int dim);
    bool is_zero() const;
};

// Largest violation of
//   varphi_nu(n + N mu) + varphi_mu(n) = varphi_mu(n + N nu) + varphi_nu(n) + varphi_{nu mu}
// over the fundamental domain and all mu != nu.
double cocycle_violation(const TransitionData& t, const Geometry& geo);

struct StripLayout {
    int mu;            // link direction the strip feeds
    int nu;            // summation direction
    double weight;     // coefficient in the link rewriting
    unsigned pinned;   // bit i set: coordinate i held at N
    bool independent;  // counts as an independent variable
};

std::vector<StripLayout> strip_layout(Construction c, int dim);

class StripField {
public:
    StripField(Geometry geo, StripLayout layout);
    // Values are indexed by site; entries off the independent domain must be 0.
    StripField(Geometry geo, StripLayout layout, std::vector<double> values);

    const StripLayout& layout() const { return layout_; }
    int mu() const { return layout_.mu; }
    int nu() const { return layout_.nu; }
    double operator()(std::size_t site) const { return values_[site]; }
    std::span<const double> values() const { return values_; }

    // Pinned coordinates at N, and n_mu, n_nu < N.
    bool in_domain(std::size_t site) const;
    std::size_t pin(std::size_t site) const;
    // Strip value seen by the link at `site`: Fbar(pin(site)).
    double feed(std::size_t site) const { return values_[pin(site)]; }
    std::size_t domain_size() const;

private:
    Geometry geo_;
    StripLayout layout_;
    std::vector<double> values_;
};

// fbar_mu, one value per straight line along mu.
class LoopField {
public:
    LoopField(Geometry geo, int mu);
    LoopField(Geometry geo, int mu, std::vector<double> values);

    int mu() const { return mu_; }
    std::size_t num_lines() const { return values_.size(); }
    // Line through `site` (its mu coordinate is irrelevant).
    std::size_t line(std::size_t site) const;
    double operator()(std::size_t site) const { return values_[line(site)]; }
    std::span<const double> values() const { return values_; }

private:
    Geometry geo_;
    int mu_;
    std::vector<double> values_;
};

class GaugeInvariantRep {
public:
    // Validates layout, normalization phi(N,...,N) = 0, domains, and the
    // boundary-condition-specific parts (loops and transition data only for
    // PBC).
    GaugeInvariantRep(Construction c, VertexField phi, std::vector<StripField> strips, std::vector<LoopField> loops,
                      TransitionData transition);

    Construction construction() const { return construction_; }
    const Geometry& geometry() const { return phi_.geometry(); }
    const VertexField& phi() const { return phi_; }
    const std::vector<StripField>& strips() const { return strips_; }
    const StripField& strip(int mu, int nu) const;
    const std::vector<LoopField>& loops() const { return loops_; }
    const TransitionData& transition() const { return transition_; }

private:
    Construction construction_;
    VertexField phi_;
    std::vector<StripField> strips_;
    std::vector<LoopField> loops_;
    TransitionData transition_;
};

// Sum of the weighted strip feeds entering A_mu at `site`.
double strip_feed(const GaugeInvariantRep& rep, std::size_t site, int mu);

LinkField reconstruct_links(const GaugeInvariantRep& rep);

// Symmetric extraction is available for (1+1)d only. For PBC the caller may
// pass transition data; it must satisfy the cocycle condition.
GaugeInvariantRep extract_giv(const LinkField& links, Construction c);
GaugeInvariantRep extract_giv(const LinkField& links, Construction c, const TransitionData& transition);

struct DofCount {
    long long n_phi = 0;
    long long n_strips = 0;
    long long n_loops = 0;
    long long n_links = 0;

    long long total_new() const { return n_phi + n_strips + n_loops; }
    bool operator==(const DofCount&) const = default;
};

// Closed-form counts. The construction does not change them.
DofCount dof_count(const Geometry& geo, Construction c);
// Counts the independent variables actually held by `rep`.
DofCount enumerate_dof(const GaugeInvariantRep& rep);

// (1+1)d: phi_sym = phi + 1/2 sum_{k,l} F_01(n + k 0 + l 1), strips of both
// families at weight 1/2.
GaugeInvariantRep asym_to_sym_shift(const GaugeInvariantRep& rep);

struct TwistReport {
    double cocycle = 0.0;            // transition data consistency
    double phi_boundary = 0.0;       // phi(n + N nu) = phi(n) + varphi_nu(n) vs twisted links
    double strip_periodicity = 0.0;  // Fbar(n + N delta) = Fbar(n)
    double loop_shift = 0.0;         // fbar_mu(n + N delta) = fbar_mu(n) + varphi_{delta mu}

    double max() const;
};

// Checks the twisted periodicity A_mu(n + N nu) = A_mu(n) + varphi_nu(n + mu) - varphi_nu(n)
// as realized by the representation. PBC only.
TwistReport verify_twisted_bc(const GaugeInvariantRep& rep);

// max_n |Fbar_01(n) - Fbar_01(n+1) + Fbar_10(n) - Fbar_10(n+0)| on the
// plaquette domain of a symmetric (1+1)d representation.
double strip_dependency_residual(const GaugeInvariantRep& rep);

nlohmann::json rep_to_json(const GaugeInvariantRep& rep);
GaugeInvariantRep rep_from_json(const nlohmann::json& j);

}  // namespace giv
