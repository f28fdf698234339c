// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "giv/action.hpp"
#include "giv/eigensolver.hpp"
#include "giv/hofstadter.hpp"
#include "giv/sampling.hpp"

using namespace giv;

namespace {

struct Outcome {
    bool pass;
    std::string note;
};

long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string fmt(const char* f, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// ---------------------------------------------------------------------------

Outcome dof_counts()
{
    bool ok = true;
    for (int dim : {2, 3, 4})
        for (int N : {2, 3, 4})
            for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
                const Geometry g(dim, N, bc);
                const long long want = bc == Boundary::Open ? dim * ipow(N, dim - 1) * (N - 1) : dim * ipow(N, dim);
                const DofCount counted = enumerate_dof(extract_giv(LinkField(g), Construction::Asymmetric));
                ok = ok && counted.total_new() == want && counted.n_links == want &&
                     counted == dof_count(g, Construction::Asymmetric);
            }
    return {ok, "18 geometries"};
}

Outcome round_trip()
{
    Rng rng(1001);
    double worst = 0.0;
    int cases = 0;
    for (int dim : {2, 3, 4})
        for (int N : {2, 3, 4})
            for (Boundary bc : {Boundary::Open, Boundary::Periodic})
                for (Construction c : {Construction::Asymmetric, Construction::Symmetric}) {
                    if (c == Construction::Symmetric && dim != 2) continue;
                    const Geometry g(dim, N, bc);
                    for (int i = 0; i < 1000; ++i) {
                        const LinkField a = random_links(g, rng);
                        worst = std::max(worst, a.max_abs_diff(reconstruct_links(extract_giv(a, c))));
                    }
                    ++cases;
                }
    return {worst <= 1e-12, fmt("%g cases, max |dA| = %.3g", cases, worst)};
}

Outcome gauge_orbit()
{
    Rng rng(1002);
    double worst = 0.0;
    const int per_case = 1000 / 6 + 1;
    int trials = 0;
    for (int dim : {2, 3, 4})
        for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
            const Geometry g(dim, 3, bc);
            for (int i = 0; i < per_case; ++i, ++trials) {
                const LinkField a = random_links(g, rng);
                const VertexField lambda = random_vertex(g, rng);
                const GaugeInvariantRep r0 = extract_giv(a, Construction::Asymmetric);
                const GaugeInvariantRep r1 = extract_giv(apply_gauge_transformation(a, lambda), Construction::Asymmetric);
                for (std::size_t k = 0; k < r0.strips().size(); ++k)
                    for (std::size_t s = 0; s < g.num_sites(); ++s)
                        worst = std::max(worst, std::abs(r0.strips()[k](s) - r1.strips()[k](s)));
                for (std::size_t k = 0; k < r0.loops().size(); ++k)
                    for (std::size_t l = 0; l < r0.loops()[k].num_lines(); ++l)
                        worst = std::max(worst, std::abs(r0.loops()[k].values()[l] - r1.loops()[k].values()[l]));
                const double corner = lambda(g.far_corner());
                for (std::size_t s = 0; s < g.num_sites(); ++s)
                    worst = std::max(worst, std::abs(r1.phi()(s) - r0.phi()(s) - (lambda(s) - corner)));
            }
        }
    return {worst <= 1e-12, fmt("%g trials, max shift error %.3g", trials, worst)};
}

Outcome bianchi()
{
    Rng rng(1003);
    double worst = 0.0;
    for (int dim : {3, 4})
        for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
            const Geometry g(dim, 3, bc);
            for (int i = 0; i < 1000; ++i)
                worst = std::max(worst, bianchi_residual(field_strength(reconstruct_links(
                                            random_rep(g, Construction::Asymmetric, rng)))));
        }
    return {worst <= 1e-12, fmt("max residual %.3g", worst)};
}

Outcome action()
{
    Rng rng(1004);
    double worst = 0.0;
    for (int N : {2, 3, 4})
        for (double beta : {0.5, 1.0, 2.0}) {
            const Geometry g(3, N, Boundary::Open);
            for (int i = 0; i < 100; ++i) {
                const LinkField a = random_links(g, rng);
                const double sl = action_from_links(a, {beta});
                const double ss = action_from_strips(StripTriple2p1::from_rep(extract_giv(a, Construction::Asymmetric)), {beta});
                worst = std::max(worst, std::abs(ss - sl) / std::max(1.0, std::abs(sl)));
            }
        }
    // A single unit b strip at n_1 = n_2 = 1 contributes beta N.
    double scaling = 0.0;
    for (int N : {2, 3, 4, 5, 6}) {
        const Geometry g(3, N, Boundary::Open);
        StripTriple2p1 t(g);
        t.b[g.index({N, 1, 1, 0})] = 1.0;
        scaling = std::max(scaling, std::abs(action_from_strips(t, {1.5}) - 1.5 * N));
    }
    return {worst <= 1e-10 && scaling <= 1e-12, fmt("max rel err %.3g, b-only scaling err %.3g", worst, scaling)};
}

HofstadterParams hof(int dim, int m, int n, int kappa)
{
    HofstadterParams p;
    p.dim = dim;
    p.m = m;
    p.n = n;
    p.kappa = kappa;
    return p;
}

double pi_flux_pointwise(const HofstadterParams& p)
{
    double worst = 0.0;
    for (const auto& k : mbz_grid(p, Construction::Asymmetric)) {
        const auto ev = eigh(band_matrix(p, Construction::Asymmetric, k)).eigenvalues;
        double c2 = 0.0;
        for (int i = 0; i < p.dim; ++i) c2 += std::cos(k[i]) * std::cos(k[i]);
        const double e = 2.0 * std::abs(p.t) * std::sqrt(c2);
        for (std::size_t b = 0; b < ev.size(); ++b)
            worst = std::max(worst, std::abs(ev[b] - (b < ev.size() / 2 ? -e : e)));
    }
    return worst;
}

Outcome pi_flux_2d()
{
    const HofstadterParams p = hof(2, 1, 2, 4);
    const double pw = pi_flux_pointwise(p);
    const auto momentum = spectrum(p, Construction::Asymmetric).energies();
    const auto ed = real_space_spectrum(reconstruct_links(uniform_field_giv(p, Construction::Asymmetric)), p.t);
    const CoincidenceReport r = spectra_coincide(ed, momentum, 1e-8);
    return {pw <= 1e-10 && r.pass && r.size == 64, fmt("pointwise %.3g, ED vs bands %.3g", pw, r.max_abs_diff)};
}

Outcome pi_flux_3d()
{
    const HofstadterParams p = hof(3, 1, 2, 2);
    const double pw = pi_flux_pointwise(p);
    const bool count = spectrum(p, Construction::Asymmetric).energies().size() == 64;
    return {pw <= 1e-10 && count, fmt("pointwise %.3g", pw)};
}

Outcome construction_equivalence()
{
    bool ok = true;
    double worst = 0.0;
    for (int dim : {2, 3})
        for (int m : {1, 2}) {
            const int n = 3;
            const HofstadterParams a = hof(dim, m, n, dim == 2 ? 2 : 3);
            const HofstadterParams s = hof(dim, m, n, 1);
            ok = ok && a.lattice_size(Construction::Asymmetric) == (dim == 2 ? 6 : 9) &&
                 s.lattice_size(Construction::Symmetric) == a.lattice_size(Construction::Asymmetric);
            const int want_a = dim == 2 ? n : n * n;
            const int want_s = dim == 2 ? 4 * n * n : 27 * n * n * n;
            ok = ok && band_count(a, Construction::Asymmetric) == want_a && band_count(s, Construction::Symmetric) == want_s;
            ok = ok && band_matrix(a, Construction::Asymmetric, mbz_grid(a, Construction::Asymmetric).front()).order() == want_a;
            ok = ok && band_matrix(s, Construction::Symmetric, mbz_grid(s, Construction::Symmetric).front()).order() == want_s;
            const CoincidenceReport r = spectra_coincide(spectrum(a, Construction::Asymmetric).energies(),
                                                         spectrum(s, Construction::Symmetric).energies(), 1e-8);
            ok = ok && r.pass;
            worst = std::max(worst, r.max_abs_diff);
        }
    return {ok, fmt("max |dE| = %.3g", worst)};
}

Outcome unitary_rotation()
{
    Rng rng(1009);
    const HofstadterParams p = hof(2, 1, 3, 2);
    const LinkField uniform = reconstruct_links(uniform_field_giv(p, Construction::Asymmetric));
    const Geometry& g = uniform.geometry();
    const HermitianMatrix h = real_space_hamiltonian(uniform, p.t);
    const auto e0 = eigh(h).eigenvalues;
    double drift = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto e = eigh(phase_rotate_basis(h, random_vertex(g, rng))).eigenvalues;
        for (std::size_t j = 0; j < e.size(); ++j) drift = std::max(drift, std::abs(e[j] - e0[j]));
    }

    // Hops that carry no strip: all of direction 0 (bulk gradients and the
    // loop, a multiple of 2 pi) and direction 1 on the n_0 = N row.
    double hops = 0.0;
    const int N = g.size();
    for (int i = 0; i < 10; ++i) {
        const LinkField gauged = apply_gauge_transformation(uniform, random_vertex(g, rng));
        const GaugeInvariantRep rep = extract_giv(gauged, Construction::Asymmetric);
        const HermitianMatrix rot = phase_rotate_basis(real_space_hamiltonian(gauged, p.t), rep.phi());
        for (std::size_t s = 0; s < g.num_sites(); ++s) {
            const int r = static_cast<int>(s);
            hops = std::max(hops, std::abs(rot(static_cast<int>(g.wrapped(s, 0)), r) + p.t));
            if (g.coord(s, 0) == N) hops = std::max(hops, std::abs(rot(static_cast<int>(g.wrapped(s, 1)), r) + p.t));
        }
    }
    return {drift <= 1e-12 && hops <= 1e-12, fmt("spectrum %.3g, off-strip hops %.3g", drift, hops)};
}

Outcome eigensolver_identities()
{
    std::mt19937_64 rng(1010);
    std::normal_distribution<double> d;
    double worst = 0.0;
    for (int order : {1, 2, 16, 100, 343, 729}) {
        Eigen::MatrixXcd m(order, order);
        for (int i = 0; i < order; ++i)
            for (int j = 0; j <= i; ++j) {
                const cplx v = i == j ? cplx(d(rng), 0.0) : cplx(d(rng), d(rng));
                m(i, j) = v;
                m(j, i) = std::conj(v);
            }
        double tr = 0.0, fro = 0.0;
        for (int i = 0; i < order; ++i) {
            tr += m(i, i).real();
            for (int j = 0; j < order; ++j) fro += std::norm(m(i, j));
        }
        double sum = 0.0, sq = 0.0;
        for (double x : eigh(HermitianMatrix(m)).eigenvalues) {
            sum += x;
            sq += x * x;
        }
        // The trace of a random matrix can be near zero; scale by the norm.
        worst = std::max(worst, std::abs(sum - tr) / std::max(1.0, std::sqrt(fro)));
        worst = std::max(worst, std::abs(sq - fro) / fro);
    }
    return {worst <= 1e-9, fmt("max rel err %.3g", worst)};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double limit_seconds;  // 0: no runtime bound
    };
    const Criterion criteria[] = {
        {"dof counts", dof_counts, 1.0},
        {"round-trip bijectivity", round_trip, 30.0},
        {"gauge orbit", gauge_orbit, 30.0},
        {"Bianchi identity", bianchi, 0.0},
        {"action equivalence", action, 10.0},
        {"pi-flux 2d spectrum", pi_flux_2d, 0.0},
        {"pi-flux 3d spectrum", pi_flux_3d, 0.0},
        {"construction equivalence", construction_equivalence, 300.0},
        {"unitary rotation", unitary_rotation, 0.0},
        {"eigensolver self-checks", eigensolver_identities, 0.0},
    };

    int failures = 0;
    int i = 0;
    for (const auto& c : criteria) {
        ++i;
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds <= 0.0 || secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("%s %2d %-26s %8.3f s  %s%s\n", pass ? "PASS" : "FAIL", i, c.name, secs, o.note.c_str(),
                    in_time ? "" : " (over time limit)");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
