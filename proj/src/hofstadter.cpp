#include "giv/hofstadter.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace giv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kMaxRealSpaceSites = 4096;

int multiplier(const HofstadterParams& p, Construction c)
{
    if (c == Construction::Asymmetric) return 1;
    return p.dim == 2 ? 2 : 3;
}

int wrap(int i, int w) { return ((i % w) + w) % w; }

// Uniform field strength F_{mu nu} on the 0-based directions.
double uniform_plaquette(int mu, int nu, double flux)
{
    if (mu == nu) return 0.0;
    if (mu < nu) return -uniform_plaquette(nu, mu, flux);
    return (mu == 2 && nu == 0) ? -flux : flux;
}

}  // namespace

void HofstadterParams::validate() const
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("spatial dimension must be 2 or 3");
    if (n < 1 || m < 0) throw std::invalid_argument("flux needs m >= 0 and n >= 1");
    if (m == 0 && n != 1) throw std::invalid_argument("zero flux is written (m, n) = (0, 1)");
    if (std::gcd(m, n) != 1) throw std::invalid_argument("m and n must be coprime");
    if (kappa < 1) throw std::invalid_argument("kappa must be a positive integer");
    if (!std::isfinite(t)) throw std::invalid_argument("hopping t must be finite");
    for (double th : theta)
        if (!std::isfinite(th)) throw std::invalid_argument("twists must be finite");
}

double HofstadterParams::flux() const { return 2.0 * kPi * m / n; }

int HofstadterParams::lattice_size(Construction c) const
{
    validate();
    if (c == Construction::Symmetric && dim != 2 && dim != 3) throw std::invalid_argument("unsupported dimension");
    return multiplier(*this, c) * kappa * n;
}

Geometry HofstadterParams::geometry(Construction c) const
{
    return Geometry(dim, lattice_size(c), Boundary::Periodic);
}

GaugeInvariantRep uniform_field_giv(const HofstadterParams& p, Construction c)
{
    const Geometry g = p.geometry(c);
    const int N = g.size();
    const int D = g.dim();
    const double flux = p.flux();

    std::vector<StripField> strips;
    for (const auto& lay : strip_layout(c, D)) {
        StripField shape(g, lay);
        std::vector<double> v(g.num_sites(), 0.0);
        const double f = uniform_plaquette(lay.mu, lay.nu, flux);
        for (std::size_t s = 0; s < g.num_sites(); ++s)
            if (shape.in_domain(s)) v[s] = (N - g.coord(s, lay.nu)) * f;
        strips.emplace_back(g, lay, std::move(v));
    }

    std::vector<LoopField> loops;
    for (int mu = 0; mu < D; ++mu) {
        LoopField shape(g, mu);
        std::vector<double> v(shape.num_lines(), 0.0);
        for (std::size_t s = 0; s < g.num_sites(); ++s) {
            if (g.coord(s, mu) != 1) continue;
            const Coords r = g.coords(s);
            double f = p.theta[mu];
            for (int nu = 0; nu < D; ++nu) f += N * uniform_plaquette(nu, mu, flux) * r[nu];
            v[shape.line(s)] = f;
        }
        loops.emplace_back(g, mu, std::move(v));
    }
    return GaugeInvariantRep(c, VertexField(g), std::move(strips), std::move(loops), TransitionData::zero(D));
}

HermitianMatrix real_space_hamiltonian(const LinkField& links, double t)
{
    const Geometry& g = links.geometry();
    if (!g.periodic()) throw std::invalid_argument("real-space Hamiltonian needs a periodic lattice");
    if (g.num_sites() > kMaxRealSpaceSites)
        throw std::invalid_argument("real-space Hamiltonian limited to " + std::to_string(kMaxRealSpaceSites) + " sites");
    HermitianMatrix h(static_cast<int>(g.num_sites()));
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
        for (int j = 0; j < g.dim(); ++j) {
            const double a = links(s, j);
            if (!std::isfinite(a)) throw std::invalid_argument("non-finite link value");
            h.add_hopping(static_cast<int>(g.wrapped(s, j)), static_cast<int>(s), -t * std::polar(1.0, a));
        }
    }
    return h;
}

HermitianMatrix phase_rotate_basis(const HermitianMatrix& h, const VertexField& phi)
{
    if (static_cast<std::size_t>(h.order()) != phi.geometry().num_sites())
        throw std::invalid_argument("vertex field does not match the Hamiltonian");
    const int V = h.order();
    Eigen::VectorXcd u(V);
    for (int i = 0; i < V; ++i) u(i) = std::polar(1.0, -phi(static_cast<std::size_t>(i)));
    const Eigen::MatrixXcd rotated = u.asDiagonal() * h.matrix() * u.conjugate().asDiagonal();
    return HermitianMatrix(rotated, 1e-14);
}

int band_count(const HofstadterParams& p, Construction c)
{
    p.validate();
    const int w = multiplier(p, c) * p.n;
    if (c == Construction::Asymmetric) return p.dim == 2 ? p.n : p.n * p.n;
    return p.dim == 2 ? w * w : w * w * w;
}

std::array<int, 3> mbz_divisors(const HofstadterParams& p, Construction c)
{
    p.validate();
    if (c == Construction::Asymmetric) return p.dim == 2 ? std::array<int, 3>{p.n, 1, 1} : std::array<int, 3>{p.n, p.n, 1};
    const int w = multiplier(p, c) * p.n;
    return {w, w, p.dim == 3 ? w : 1};
}

HermitianMatrix band_matrix(const HofstadterParams& p, Construction c, const std::array<double, 3>& k)
{
    p.validate();
    const auto w = mbz_divisors(p, c);
    for (int i = 0; i < p.dim; ++i) {
        const double x = k[i] * w[i] / kPi;
        if (!std::isfinite(x) || x < -1.0 - 1e-9 || x >= 1.0 + 1e-9)
            throw std::invalid_argument("momentum outside the magnetic Brillouin zone");
    }
    const int n = p.n;
    const int span = multiplier(p, c) * n;
    // band * Phi / multiplier, reduced to [0, 2 pi) through integer arithmetic.
    const auto shift = [&](int band) { return 2.0 * kPi * wrap(band * p.m, span) / span; };
    const auto ph = [](double x) { return std::polar(1.0, -x); };

    HermitianMatrix h(band_count(p, c));
    if (c == Construction::Asymmetric && p.dim == 2) {
        for (int tau = 0; tau < n; ++tau) {
            h.add_hopping(tau, tau, ph(k[0] + shift(tau)));
            h.add_hopping(tau, (tau + 1) % n, ph(k[1]));
        }
    } else if (c == Construction::Asymmetric) {
        const auto idx = [&](int lam, int tau) { return wrap(lam, n) * n + wrap(tau, n); };
        for (int lam = 0; lam < n; ++lam)
            for (int tau = 0; tau < n; ++tau) {
                h.add_hopping(idx(lam, tau), idx(lam, tau), ph(k[0] + shift(lam)));
                h.add_hopping(idx(lam, tau), idx(lam + 1, tau), ph(k[1] + shift(tau)));
                h.add_hopping(idx(lam, tau), idx(lam - 1, tau + 1), ph(k[2]));
            }
    } else if (p.dim == 2) {
        const auto idx = [&](int tau, int lam) { return wrap(tau, span) * span + wrap(lam, span); };
        for (int tau = 0; tau < span; ++tau)
            for (int lam = 0; lam < span; ++lam) {
                h.add_hopping(idx(tau, lam + 1), idx(tau, lam), ph(k[0] + shift(tau)));
                h.add_hopping(idx(tau, lam), idx(tau + 1, lam), ph(k[1] + shift(lam)));
            }
    } else {
        const auto idx = [&](int tau, int eps, int lam) {
            return (wrap(tau, span) * span + wrap(eps, span)) * span + wrap(lam, span);
        };
        for (int tau = 0; tau < span; ++tau)
            for (int eps = 0; eps < span; ++eps)
                for (int lam = 0; lam < span; ++lam) {
                    const int here = idx(tau, eps, lam);
                    h.add_hopping(idx(tau, eps + 1, lam - 2), here, ph(k[0] + shift(tau)));
                    h.add_hopping(idx(tau - 2, eps, lam + 1), here, ph(k[1] + shift(eps)));
                    h.add_hopping(idx(tau + 1, eps - 2, lam), here, ph(k[2] + shift(lam)));
                }
    }
    h.scale(-p.t);
    return h;
}

std::vector<std::array<double, 3>> mbz_grid(const HofstadterParams& p, Construction c)
{
    const int N = p.lattice_size(c);
    const auto w = mbz_divisors(p, c);
    std::array<std::vector<double>, 3> axis;
    for (int i = 0; i < 3; ++i) {
        if (i >= p.dim) {
            axis[i] = {0.0};
            continue;
        }
        const double th = p.theta[i];
        for (int j = -N; j <= N; ++j) {
            const double x = w[i] * (2.0 * j - th / kPi);
            if (x >= -N && x < N) axis[i].push_back((2.0 * kPi * j - th) / N);
        }
    }
    std::vector<std::array<double, 3>> out;
    for (double a : axis[0])
        for (double b : axis[1])
            for (double c3 : axis[2]) out.push_back({a, b, c3});
    return out;
}

std::vector<double> Spectrum::energies() const
{
    std::vector<double> e;
    e.reserve(entries.size());
    for (const auto& x : entries) e.push_back(x.energy);
    return e;
}

Spectrum spectrum(const HofstadterParams& p, Construction c)
{
    Spectrum s;
    s.dim = p.dim;
    for (const auto& k : mbz_grid(p, c)) {
        const EigenResult r = eigh(band_matrix(p, c, k));
        for (std::size_t b = 0; b < r.eigenvalues.size(); ++b)
            s.entries.push_back({k, static_cast<int>(b), r.eigenvalues[b]});
    }
    std::stable_sort(s.entries.begin(), s.entries.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.energy < b.energy; });
    return s;
}

std::vector<double> real_space_spectrum(const LinkField& links, double t)
{
    return eigh(real_space_hamiltonian(links, t)).eigenvalues;
}

CoincidenceReport spectra_coincide(std::vector<double> a, std::vector<double> b, double tol)
{
    CoincidenceReport r;
    r.tol = tol;
    r.size = a.size();
    if (a.size() != b.size()) {
        r.size_mismatch = true;
        r.max_abs_diff = std::numeric_limits<double>::infinity();
        return r;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) r.max_abs_diff = std::max(r.max_abs_diff, std::abs(a[i] - b[i]));
    r.pass = r.max_abs_diff <= tol;
    return r;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s)
{
    out << (s.dim == 3 ? "k1,k2,k3,band,energy\n" : "k1,k2,band,energy\n");
    out << std::setprecision(17);
    for (const auto& e : s.entries) {
        for (int i = 0; i < s.dim; ++i) out << e.k[i] << ',';
        out << e.band << ',' << e.energy << '\n';
    }
}

std::vector<ButterflyRow> butterfly(int n_max, double t)
{
    if (n_max < 1 || n_max > 40) throw std::invalid_argument("n_max must lie in [1, 40]");
    std::vector<std::pair<int, int>> pairs;
    if (n_max == 1) pairs.emplace_back(0, 1);
    for (int n = 2; n <= n_max; ++n)
        for (int m = 1; m < n; ++m)
            if (std::gcd(m, n) == 1) pairs.emplace_back(m, n);
    std::vector<ButterflyRow> rows;
    for (const auto& [m, n] : pairs) {
        HofstadterParams p;
        p.m = m;
        p.n = n;
        p.t = t;
        for (double e : spectrum(p, Construction::Asymmetric).energies()) rows.push_back({m, n, e});
    }
    return rows;
}

void write_butterfly_csv(std::ostream& out, const std::vector<ButterflyRow>& rows)
{
    out << "m,n,energy\n" << std::setprecision(17);
    for (const auto& r : rows) out << r.m << ',' << r.n << ',' << r.energy << '\n';
}

}  // namespace giv
