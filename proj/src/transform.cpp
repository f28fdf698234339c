#include "giv/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace giv {

namespace {

constexpr double kCocycleTol = 1e-9;

std::size_t ipow(std::size_t b, int e)
{
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Site obtained by overwriting coordinate mu.
std::size_t with_coord(const Geometry& g, std::size_t site, int mu, int value)
{
    Coords n = g.coords(site);
    n[mu] = value;
    return g.index(n);
}

// phi along a fixed direction order: the leading coordinates that already
// sit at N are skipped, and the first free direction is integrated from N.
std::vector<double> integrate_phi(const LinkField& links, const std::array<int, kMaxDim>& order)
{
    const Geometry& g = links.geometry();
    const int N = g.size();
    std::vector<double> phi(g.num_sites(), 0.0);
    for (std::size_t s = g.num_sites(); s-- > 0;) {
        const Coords n = g.coords(s);
        int level = 0;
        while (level < g.dim() && n[order[level]] == N) ++level;
        if (level == g.dim()) continue;
        const int dir = order[level];
        phi[s] = phi[g.wrapped(s, dir)] - links(s, dir);
    }
    return phi;
}

StripField integrate_strip(const Geometry& g, const StripLayout& lay, const PlaquetteField& F)
{
    StripField shape(g, lay);
    std::vector<double> v(g.num_sites(), 0.0);
    for (std::size_t s = g.num_sites(); s-- > 0;) {
        if (!shape.in_domain(s)) continue;
        v[s] = F(s, lay.mu, lay.nu);
        if (g.coord(s, lay.nu) + 1 < g.size()) v[s] += v[g.wrapped(s, lay.nu)];
    }
    return StripField(g, lay, std::move(v));
}

TransitionData normalized_transition(const TransitionData& t, int dim)
{
    if (t.functions.empty()) {
        TransitionData z = TransitionData::zero(dim);
        z.twist = t.twist;
        return z;
    }
    if (static_cast<int>(t.functions.size()) != dim)
        throw std::invalid_argument("transition data needs one function per direction");
    return t;
}

nlohmann::json coords_json(const Coords& n, int dim)
{
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < dim; ++i) row.push_back(n[i]);
    return row;
}

Coords parse_row(const Geometry& g, const nlohmann::json& row, double& value)
{
    if (!row.is_array() || row.size() != static_cast<std::size_t>(g.dim() + 1))
        throw std::invalid_argument("entry must be [coords..., value]");
    Coords n{};
    for (int i = 0; i < g.dim(); ++i) n[i] = row[i].get<int>();
    if (!g.contains(n)) throw std::invalid_argument("entry coordinates outside the lattice");
    value = row[g.dim()].get<double>();
    return n;
}

// Field values on Z^D, continued from the fundamental domain with the
// twisted periodicity of the transition functions.
class TwistedExtension {
public:
    TwistedExtension(const GaugeInvariantRep& rep) : rep_(rep), g_(rep.geometry()), links_(reconstruct_links(rep)) {}

    double link(int mu, const Coords& n) const
    {
        Coords p, w;
        fold(n, p, w);
        double val = links_(g_.index(p), mu);
        Coords cur = p;
        for (int nu = 0; nu < g_.dim(); ++nu) {
            const AffineFunction& f = rep_.transition().functions[nu];
            for (; w[nu] > 0; --w[nu]) {
                val += f(step(cur, mu), g_.dim()) - f(cur, g_.dim());
                cur[nu] += g_.size();
            }
            for (; w[nu] < 0; ++w[nu]) {
                cur[nu] -= g_.size();
                val -= f(step(cur, mu), g_.dim()) - f(cur, g_.dim());
            }
        }
        return val;
    }

    double phi(const Coords& n) const
    {
        Coords p, w;
        fold(n, p, w);
        double val = rep_.phi()(g_.index(p));
        Coords cur = p;
        for (int nu = 0; nu < g_.dim(); ++nu) {
            const AffineFunction& f = rep_.transition().functions[nu];
            for (; w[nu] > 0; --w[nu]) {
                val += f(cur, g_.dim());
                cur[nu] += g_.size();
            }
            for (; w[nu] < 0; ++w[nu]) {
                cur[nu] -= g_.size();
                val -= f(cur, g_.dim());
            }
        }
        return val;
    }

    double plaquette(int mu, int nu, const Coords& n) const
    {
        return link(nu, step(n, mu)) - link(nu, n) - link(mu, step(n, nu)) + link(mu, n);
    }

    static Coords step(Coords n, int mu, int k = 1)
    {
        n[mu] += k;
        return n;
    }

private:
    void fold(const Coords& n, Coords& p, Coords& w) const
    {
        p = n;
        w = Coords{};
        const int N = g_.size();
        for (int i = 0; i < g_.dim(); ++i) {
            p[i] = ((n[i] - 1) % N + N) % N + 1;
            w[i] = (n[i] - p[i]) / N;
        }
    }

    const GaugeInvariantRep& rep_;
    const Geometry& g_;
    LinkField links_;
};

}  // namespace

std::string to_string(Construction c) { return c == Construction::Asymmetric ? "asymmetric" : "symmetric"; }

Construction construction_from_string(const std::string& s)
{
    if (s == "asymmetric" || s == "asym") return Construction::Asymmetric;
    if (s == "symmetric" || s == "sym") return Construction::Symmetric;
    throw std::invalid_argument("unknown construction: " + s);
}

double AffineFunction::operator()(const Coords& n, int dim) const
{
    double v = offset;
    for (int i = 0; i < dim; ++i) v += slope[i] * n[i];
    return v;
}

TransitionData TransitionData::zero(int dim)
{
    TransitionData t;
    t.functions.resize(static_cast<std::size_t>(dim));
    return t;
}

bool TransitionData::is_zero() const
{
    for (const auto& f : functions) {
        if (f.offset != 0.0) return false;
        for (double s : f.slope)
            if (s != 0.0) return false;
    }
    for (const auto& row : twist)
        for (double v : row)
            if (v != 0.0) return false;
    return true;
}

double cocycle_violation(const TransitionData& t, const Geometry& geo)
{
    const TransitionData tr = normalized_transition(t, geo.dim());
    const int D = geo.dim();
    const int N = geo.size();
    double worst = 0.0;
    for (int mu = 0; mu < D; ++mu)
        for (int nu = 0; nu < D; ++nu)
            if (mu != nu && tr.twist[nu][mu] != -tr.twist[mu][nu]) worst = std::max(worst, std::abs(tr.twist[nu][mu] + tr.twist[mu][nu]));
    for (std::size_t s = 0; s < geo.num_sites(); ++s) {
        const Coords n = geo.coords(s);
        for (int mu = 0; mu < D; ++mu) {
            for (int nu = 0; nu < D; ++nu) {
                if (mu == nu) continue;
                Coords nm = n, nn = n;
                nm[mu] += N;
                nn[nu] += N;
                const double r = tr.functions[nu](nm, D) + tr.functions[mu](n, D) - tr.functions[mu](nn, D) -
                                 tr.functions[nu](n, D) - tr.twist[nu][mu];
                worst = std::max(worst, std::abs(r));
            }
        }
    }
    return worst;
}

std::vector<StripLayout> strip_layout(Construction c, int dim)
{
    std::vector<StripLayout> out;
    if (c == Construction::Asymmetric) {
        for (int mu = 1; mu < dim; ++mu)
            for (int nu = 0; nu < mu; ++nu) out.push_back({mu, nu, 1.0, (1u << nu) - 1u, true});
        return out;
    }
    if (dim == 2) {
        out.push_back({1, 0, 0.5, 0u, true});
        out.push_back({0, 1, 0.5, 0u, false});
        return out;
    }
    if (dim == 3) {
        for (int mu = 0; mu < 3; ++mu) {
            const int a = (mu + 2) % 3, b = (mu + 1) % 3;
            out.push_back({mu, a, 2.0 / 3.0, 0u, mu > a});
            out.push_back({mu, b, 1.0 / 3.0, 0u, mu > b});
        }
        return out;
    }
    throw std::invalid_argument("symmetric construction is defined for 2 and 3 dimensions only");
}

// ---------------------------------------------------------------------------

StripField::StripField(Geometry geo, StripLayout layout)
    : geo_(geo), layout_(layout), values_(geo.num_sites(), 0.0)
{
    if (layout.mu < 0 || layout.mu >= geo.dim() || layout.nu < 0 || layout.nu >= geo.dim() || layout.mu == layout.nu)
        throw std::invalid_argument("strip directions out of range");
}

StripField::StripField(Geometry geo, StripLayout layout, std::vector<double> values) : StripField(geo, layout)
{
    if (values.size() != geo_.num_sites()) throw std::invalid_argument("strip field size mismatch");
    for (std::size_t s = 0; s < values.size(); ++s) {
        if (!std::isfinite(values[s])) throw std::invalid_argument("non-finite strip value");
        if (values[s] != 0.0 && !in_domain(s)) throw std::invalid_argument("strip value outside its domain");
    }
    values_ = std::move(values);
}

bool StripField::in_domain(std::size_t site) const
{
    const Coords n = geo_.coords(site);
    const int N = geo_.size();
    if (n[layout_.mu] >= N || n[layout_.nu] >= N) return false;
    for (int i = 0; i < geo_.dim(); ++i)
        if ((layout_.pinned >> i & 1u) && n[i] != N) return false;
    return true;
}

std::size_t StripField::pin(std::size_t site) const
{
    if (layout_.pinned == 0) return site;
    Coords n = geo_.coords(site);
    for (int i = 0; i < geo_.dim(); ++i)
        if (layout_.pinned >> i & 1u) n[i] = geo_.size();
    return geo_.index(n);
}

std::size_t StripField::domain_size() const
{
    std::size_t c = 0;
    for (std::size_t s = 0; s < geo_.num_sites(); ++s) c += in_domain(s);
    return c;
}

LoopField::LoopField(Geometry geo, int mu)
    : geo_(geo), mu_(mu), values_(ipow(static_cast<std::size_t>(geo.size()), geo.dim() - 1), 0.0)
{
    if (mu < 0 || mu >= geo.dim()) throw std::invalid_argument("loop direction out of range");
}

LoopField::LoopField(Geometry geo, int mu, std::vector<double> values) : LoopField(geo, mu)
{
    if (values.size() != values_.size()) throw std::invalid_argument("loop field size mismatch");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite loop value");
    values_ = std::move(values);
}

std::size_t LoopField::line(std::size_t site) const
{
    const Coords n = geo_.coords(site);
    std::size_t idx = 0;
    for (int i = 0; i < geo_.dim(); ++i)
        if (i != mu_) idx = idx * static_cast<std::size_t>(geo_.size()) + static_cast<std::size_t>(n[i] - 1);
    return idx;
}

// ---------------------------------------------------------------------------

GaugeInvariantRep::GaugeInvariantRep(Construction c, VertexField phi, std::vector<StripField> strips,
                                     std::vector<LoopField> loops, TransitionData transition)
    : construction_(c), phi_(std::move(phi)), strips_(std::move(strips)), loops_(std::move(loops))
{
    const Geometry& g = phi_.geometry();
    const auto layout = strip_layout(c, g.dim());
    if (strips_.size() != layout.size()) throw std::invalid_argument("wrong number of strip families");
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const StripLayout& a = strips_[i].layout();
        const StripLayout& b = layout[i];
        if (a.mu != b.mu || a.nu != b.nu || a.weight != b.weight || a.pinned != b.pinned)
            throw std::invalid_argument("strip family does not match the construction");
    }
    if (phi_(g.far_corner()) != 0.0) throw std::invalid_argument("phi must vanish at the corner (N, ..., N)");
    if (g.periodic()) {
        if (static_cast<int>(loops_.size()) != g.dim()) throw std::invalid_argument("periodic lattice needs one loop field per direction");
        for (int mu = 0; mu < g.dim(); ++mu)
            if (loops_[mu].mu() != mu || loops_[mu].num_lines() != ipow(g.size(), g.dim() - 1))
                throw std::invalid_argument("loop field does not match the lattice");
        transition_ = normalized_transition(transition, g.dim());
    } else {
        if (!loops_.empty()) throw std::invalid_argument("open lattice carries no loop variables");
        if (!transition.is_zero()) throw std::invalid_argument("transition data requires periodic boundaries");
        transition_ = TransitionData::zero(g.dim());
    }
}

const StripField& GaugeInvariantRep::strip(int mu, int nu) const
{
    for (const auto& s : strips_)
        if (s.mu() == mu && s.nu() == nu) return s;
    throw std::out_of_range("no strip family (" + std::to_string(mu) + "," + std::to_string(nu) + ")");
}

double strip_feed(const GaugeInvariantRep& rep, std::size_t site, int mu)
{
    double v = 0.0;
    for (const auto& s : rep.strips())
        if (s.mu() == mu) v += s.layout().weight * s.feed(site);
    return v;
}

LinkField reconstruct_links(const GaugeInvariantRep& rep)
{
    const Geometry& g = rep.geometry();
    const int N = g.size();
    const VertexField& phi = rep.phi();
    std::vector<double> out(g.num_links(), 0.0);
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        for (int mu = 0; mu < g.dim(); ++mu) {
            if (g.coord(s, mu) < N) {
                out[g.link_index(s, mu)] = strip_feed(rep, s, mu) + phi(g.wrapped(s, mu)) - phi(s);
                continue;
            }
            if (!g.periodic()) continue;
            const std::size_t first = with_coord(g, s, mu, 1);
            double a = rep.loops()[mu](s) + rep.transition().functions[mu](g.coords(first), g.dim());
            for (int j = 1; j < N; ++j) a -= strip_feed(rep, with_coord(g, s, mu, j), mu);
            a += phi(first) - phi(s);
            out[g.link_index(s, mu)] = a;
        }
    }
    return LinkField(g, std::move(out));
}

GaugeInvariantRep extract_giv(const LinkField& links, Construction c)
{
    return extract_giv(links, c, TransitionData::zero(links.geometry().dim()));
}

GaugeInvariantRep extract_giv(const LinkField& links, Construction c, const TransitionData& transition)
{
    const Geometry& g = links.geometry();
    if (c == Construction::Symmetric && g.dim() != 2)
        throw std::invalid_argument("symmetric extraction is only defined in two dimensions");
    TransitionData tr = normalized_transition(transition, g.dim());
    if (!g.periodic() && !tr.is_zero()) throw std::invalid_argument("transition data requires periodic boundaries");
    if (g.periodic()) {
        const double v = cocycle_violation(tr, g);
        if (v > kCocycleTol) throw std::invalid_argument("transition data violates the cocycle condition");
    }

    std::array<int, kMaxDim> order{0, 1, 2, 3};
    std::vector<double> phi = integrate_phi(links, order);
    if (c == Construction::Symmetric) {
        const std::vector<double> other = integrate_phi(links, {1, 0, 2, 3});
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = 0.5 * (phi[i] + other[i]);
    }

    const PlaquetteField F = field_strength(links);
    std::vector<StripField> strips;
    for (const auto& lay : strip_layout(c, g.dim())) strips.push_back(integrate_strip(g, lay, F));

    std::vector<LoopField> loops;
    if (g.periodic()) {
        for (int mu = 0; mu < g.dim(); ++mu) {
            LoopField shape(g, mu);
            std::vector<double> v(shape.num_lines(), 0.0);
            for (std::size_t s = 0; s < g.num_sites(); ++s) {
                if (g.coord(s, mu) != 1) continue;
                const Coords n = g.coords(s);
                v[shape.line(s)] = wilson_line_sum(links, mu, n) - tr.functions[mu](n, g.dim());
            }
            loops.emplace_back(g, mu, std::move(v));
        }
    }
    return GaugeInvariantRep(c, VertexField(g, std::move(phi)), std::move(strips), std::move(loops), tr);
}

DofCount dof_count(const Geometry& geo, Construction)
{
    const long long N = geo.size();
    const int D = geo.dim();
    const long long ND = static_cast<long long>(ipow(static_cast<std::size_t>(N), D));
    const long long ND1 = ND / N;
    DofCount c;
    c.n_phi = ND - 1;
    c.n_strips = (D - 1) * ND - D * ND1 + 1;
    if (geo.periodic()) {
        c.n_loops = D * ND1;
        c.n_links = D * ND;
    } else {
        c.n_links = D * ND1 * (N - 1);
    }
    return c;
}

DofCount enumerate_dof(const GaugeInvariantRep& rep)
{
    const Geometry& g = rep.geometry();
    DofCount c;
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        if (s != g.far_corner()) ++c.n_phi;
        for (int mu = 0; mu < g.dim(); ++mu)
            if (g.periodic() || !g.is_boundary_link(s, mu)) ++c.n_links;
    }
    for (const auto& s : rep.strips())
        if (s.layout().independent) c.n_strips += static_cast<long long>(s.domain_size());
    for (const auto& l : rep.loops()) c.n_loops += static_cast<long long>(l.num_lines());
    return c;
}

GaugeInvariantRep asym_to_sym_shift(const GaugeInvariantRep& rep)
{
    const Geometry& g = rep.geometry();
    if (g.dim() != 2 || rep.construction() != Construction::Asymmetric)
        throw std::invalid_argument("shift to the symmetric construction needs an asymmetric 2d representation");
    const int N = g.size();
    const StripField& a = rep.strip(1, 0);
    const std::size_t n_sites = g.num_sites();
    std::vector<double> G(n_sites, 0.0), b(n_sites, 0.0);
    for (std::size_t s = n_sites; s-- > 0;) {
        const Coords n = g.coords(s);
        if (n[0] == N || n[1] == N) continue;
        const std::size_t s0 = g.wrapped(s, 0), s1 = g.wrapped(s, 1);
        const double f01 = -(a(s) - a(s0));
        const bool in0 = n[0] + 1 < N, in1 = n[1] + 1 < N;
        b[s] = f01 + (in1 ? b[s1] : 0.0);
        G[s] = f01 + (in0 ? G[s0] : 0.0) + (in1 ? G[s1] : 0.0) - (in0 && in1 ? G[g.wrapped(s0, 1)] : 0.0);
    }
    std::vector<double> phi(rep.phi().values().begin(), rep.phi().values().end());
    for (std::size_t s = 0; s < n_sites; ++s) phi[s] += 0.5 * G[s];

    const auto layout = strip_layout(Construction::Symmetric, 2);
    std::vector<double> av(a.values().begin(), a.values().end());
    std::vector<StripField> strips{StripField(g, layout[0], std::move(av)), StripField(g, layout[1], std::move(b))};
    return GaugeInvariantRep(Construction::Symmetric, VertexField(g, std::move(phi)), std::move(strips), rep.loops(),
                             rep.transition());
}

double TwistReport::max() const { return std::max({cocycle, phi_boundary, strip_periodicity, loop_shift}); }

TwistReport verify_twisted_bc(const GaugeInvariantRep& rep)
{
    const Geometry& g = rep.geometry();
    if (!g.periodic()) throw std::invalid_argument("twisted boundary conditions need a periodic lattice");
    const int D = g.dim();
    const int N = g.size();
    const TwistedExtension ext(rep);
    using TE = TwistedExtension;
    TwistReport r;
    r.cocycle = cocycle_violation(rep.transition(), g);

    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const Coords m = g.coords(s);
        for (int mu = 0; mu < D; ++mu) {
            if (m[mu] == N) continue;
            const double feed = strip_feed(rep, s, mu);
            for (int nu = 0; nu < D; ++nu) {
                const Coords img = TE::step(m, nu, N);
                const double lhs = ext.link(mu, img);
                const double rhs = feed + ext.phi(TE::step(img, mu)) - ext.phi(img);
                r.phi_boundary = std::max(r.phi_boundary, std::abs(lhs - rhs));
            }
        }
    }

    for (const auto& st : rep.strips()) {
        const int mu = st.mu(), nu = st.nu();
        for (std::size_t s = 0; s < g.num_sites(); ++s) {
            if (!st.in_domain(s)) continue;
            const Coords p = g.coords(s);
            for (int delta = 0; delta < D; ++delta) {
                double sum = 0.0;
                for (int l = 0; l < N - p[nu]; ++l) sum += ext.plaquette(mu, nu, TE::step(TE::step(p, delta, N), nu, l));
                r.strip_periodicity = std::max(r.strip_periodicity, std::abs(sum - st(s)));
            }
        }
    }

    for (int mu = 0; mu < D; ++mu) {
        const AffineFunction& f = rep.transition().functions[mu];
        for (std::size_t s = 0; s < g.num_sites(); ++s) {
            if (g.coord(s, mu) != 1) continue;
            const Coords p = g.coords(s);
            for (int delta = 0; delta < D; ++delta) {
                if (delta == mu) continue;
                const Coords start = TE::step(p, delta, N);
                double loop = 0.0;
                for (int j = 0; j < N; ++j) loop += ext.link(mu, TE::step(start, mu, j));
                const double shifted = loop - f(start, D);
                const double expect = rep.loops()[mu](s) + rep.transition().twist[delta][mu];
                r.loop_shift = std::max(r.loop_shift, std::abs(shifted - expect));
            }
        }
    }
    return r;
}

double strip_dependency_residual(const GaugeInvariantRep& rep)
{
    const Geometry& g = rep.geometry();
    if (g.dim() != 2 || rep.construction() != Construction::Symmetric)
        throw std::invalid_argument("strip dependency is defined for symmetric 2d representations");
    const StripField& a = rep.strip(1, 0);
    const StripField& b = rep.strip(0, 1);
    const int N = g.size();
    double worst = 0.0;
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        const Coords n = g.coords(s);
        if (n[0] == N || n[1] == N) continue;
        const double r = b(s) - b(g.wrapped(s, 1)) + a(s) - a(g.wrapped(s, 0));
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

// ---------------------------------------------------------------------------

nlohmann::json rep_to_json(const GaugeInvariantRep& rep)
{
    const Geometry& g = rep.geometry();
    const int D = g.dim();
    nlohmann::json phi = nlohmann::json::array();
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        auto row = coords_json(g.coords(s), D);
        row.push_back(rep.phi()(s));
        phi.push_back(std::move(row));
    }
    nlohmann::json strips = nlohmann::json::object();
    for (const auto& st : rep.strips()) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t s = 0; s < g.num_sites(); ++s) {
            if (!st.in_domain(s)) continue;
            auto row = coords_json(g.coords(s), D);
            row.push_back(st(s));
            rows.push_back(std::move(row));
        }
        strips[std::to_string(st.mu()) + "," + std::to_string(st.nu())] = std::move(rows);
    }
    nlohmann::json loops = nlohmann::json::object();
    for (const auto& l : rep.loops()) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t s = 0; s < g.num_sites(); ++s) {
            if (g.coord(s, l.mu()) != 1) continue;
            auto row = coords_json(g.coords(s), D);
            row.push_back(l(s));
            rows.push_back(std::move(row));
        }
        loops[std::to_string(l.mu())] = std::move(rows);
    }
    nlohmann::json fns = nlohmann::json::array();
    for (const auto& f : rep.transition().functions) {
        std::vector<double> slope(f.slope.begin(), f.slope.begin() + D);
        fns.push_back({{"offset", f.offset}, {"slope", slope}});
    }
    nlohmann::json twist = nlohmann::json::array();
    for (int i = 0; i < D; ++i)
        twist.push_back(std::vector<double>(rep.transition().twist[i].begin(), rep.transition().twist[i].begin() + D));

    nlohmann::json j;
    j["construction"] = to_string(rep.construction());
    j["dim"] = D;
    j["size"] = g.size();
    j["bc"] = to_string(g.bc());
    j["phi"] = std::move(phi);
    j["strips"] = std::move(strips);
    j["loops"] = std::move(loops);
    j["transition"] = {{"functions", std::move(fns)}, {"twist", std::move(twist)}};
    return j;
}

GaugeInvariantRep rep_from_json(const nlohmann::json& j)
{
    const Construction c = construction_from_string(j.at("construction").get<std::string>());
    const Geometry g(j.at("dim").get<int>(), j.at("size").get<int>(), boundary_from_string(j.at("bc").get<std::string>()));
    const int D = g.dim();

    std::vector<double> phi(g.num_sites(), 0.0);
    std::vector<char> seen(g.num_sites(), 0);
    for (const auto& row : j.at("phi")) {
        double v;
        const std::size_t s = g.index(parse_row(g, row, v));
        if (seen[s]) throw std::invalid_argument("duplicate phi entry");
        seen[s] = 1;
        phi[s] = v;
    }
    if (std::count(seen.begin(), seen.end(), 0) > 0) throw std::invalid_argument("missing phi entries");

    std::vector<StripField> strips;
    const auto& js = j.at("strips");
    const auto layout = strip_layout(c, D);
    if (js.size() != layout.size()) throw std::invalid_argument("wrong number of strip families");
    for (const auto& lay : layout) {
        const std::string key = std::to_string(lay.mu) + "," + std::to_string(lay.nu);
        if (!js.contains(key)) throw std::invalid_argument("missing strip family " + key);
        StripField shape(g, lay);
        std::vector<double> v(g.num_sites(), 0.0);
        std::vector<char> hit(g.num_sites(), 0);
        std::size_t count = 0;
        for (const auto& row : js.at(key)) {
            double x;
            const std::size_t s = g.index(parse_row(g, row, x));
            if (!shape.in_domain(s)) throw std::invalid_argument("strip entry outside its domain in " + key);
            if (hit[s]) throw std::invalid_argument("duplicate strip entry in " + key);
            hit[s] = 1;
            v[s] = x;
            ++count;
        }
        if (count != shape.domain_size()) throw std::invalid_argument("missing strip entries in " + key);
        strips.emplace_back(g, lay, std::move(v));
    }

    std::vector<LoopField> loops;
    const auto& jl = j.value("loops", nlohmann::json::object());
    if (!g.periodic() && !jl.empty()) throw std::invalid_argument("open lattice carries no loop variables");
    if (g.periodic()) {
        for (int mu = 0; mu < D; ++mu) {
            const std::string key = std::to_string(mu);
            if (!jl.contains(key)) throw std::invalid_argument("missing loop family " + key);
            LoopField shape(g, mu);
            std::vector<double> v(shape.num_lines(), 0.0);
            std::vector<char> hit(shape.num_lines(), 0);
            for (const auto& row : jl.at(key)) {
                double x;
                const Coords n = parse_row(g, row, x);
                if (n[mu] != 1) throw std::invalid_argument("loop entries are addressed with n_mu = 1");
                const std::size_t line = shape.line(g.index(n));
                if (hit[line]) throw std::invalid_argument("duplicate loop entry");
                hit[line] = 1;
                v[line] = x;
            }
            if (std::count(hit.begin(), hit.end(), 0) > 0) throw std::invalid_argument("missing loop entries");
            loops.emplace_back(g, mu, std::move(v));
        }
    }

    TransitionData tr = TransitionData::zero(D);
    if (j.contains("transition")) {
        const auto& jt = j.at("transition");
        if (jt.contains("functions")) {
            const auto& fns = jt.at("functions");
            if (fns.size() != static_cast<std::size_t>(D)) throw std::invalid_argument("transition needs one function per direction");
            for (int i = 0; i < D; ++i) {
                tr.functions[i].offset = fns[i].value("offset", 0.0);
                if (fns[i].contains("slope")) {
                    const auto sl = fns[i].at("slope").get<std::vector<double>>();
                    if (sl.size() != static_cast<std::size_t>(D)) throw std::invalid_argument("slope length mismatch");
                    std::copy(sl.begin(), sl.end(), tr.functions[i].slope.begin());
                }
            }
        }
        if (jt.contains("twist")) {
            const auto tw = jt.at("twist").get<std::vector<std::vector<double>>>();
            if (tw.size() != static_cast<std::size_t>(D)) throw std::invalid_argument("twist must be D x D");
            for (int a = 0; a < D; ++a) {
                if (tw[a].size() != static_cast<std::size_t>(D)) throw std::invalid_argument("twist must be D x D");
                for (int b = 0; b < D; ++b) tr.twist[a][b] = tw[a][b];
            }
        }
    }
    return GaugeInvariantRep(c, VertexField(g, std::move(phi)), std::move(strips), std::move(loops), tr);
}

}  // namespace giv
