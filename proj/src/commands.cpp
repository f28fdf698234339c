#include "giv/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "giv/action.hpp"
#include "giv/sampling.hpp"

namespace giv::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t require_seed(const RunConfig& cfg)
{
    if (!cfg.seed) throw std::invalid_argument(cfg.command + " is randomized and needs --seed");
    return *cfg.seed;
}

void require_trials(const RunConfig& cfg)
{
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

Geometry gauge_geometry(const RunConfig& cfg)
{
    const Geometry g(cfg.dim, cfg.size, cfg.bc);
    if (cfg.construction == Construction::Symmetric && g.dim() != 2)
        throw std::invalid_argument("the symmetric construction is only available for dim = 2");
    return g;
}

json geometry_json(const Geometry& g)
{
    return {{"dim", g.dim()}, {"size", g.size()}, {"bc", to_string(g.bc())}};
}

CheckReport make_report(const RunConfig& cfg, double violation, double default_tol)
{
    CheckReport r;
    r.check = cfg.command;
    r.max_violation = violation;
    r.tolerance = cfg.tolerance.value_or(default_tol);
    r.pass = std::isfinite(violation) && violation <= r.tolerance;
    r.seed = cfg.seed;
    return r;
}

HofstadterParams spectrum_params(const RunConfig& cfg)
{
    HofstadterParams p = cfg.hofstadter;
    p.dim = cfg.dim;
    p.validate();
    return p;
}

fs::path output_path(const RunConfig& cfg, const std::string& default_name)
{
    fs::path path = cfg.output.empty() ? fs::path(cfg.output_dir.empty() ? "." : cfg.output_dir) / default_name
                                       : fs::path(cfg.output);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    return path;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path.string());
    return f;
}

// +-2|t| sqrt(sum cos^2 k) at every grid momentum, each sign with the
// multiplicity of half the bands.
double pi_flux_pointwise(const HofstadterParams& p)
{
    double worst = 0.0;
    for (const auto& k : mbz_grid(p, Construction::Asymmetric)) {
        const auto ev = eigh(band_matrix(p, Construction::Asymmetric, k)).eigenvalues;
        double c2 = 0.0;
        for (int i = 0; i < p.dim; ++i) c2 += std::cos(k[i]) * std::cos(k[i]);
        const double e = 2.0 * std::abs(p.t) * std::sqrt(c2);
        const std::size_t half = ev.size() / 2;
        for (std::size_t b = 0; b < ev.size(); ++b) worst = std::max(worst, std::abs(ev[b] - (b < half ? -e : e)));
    }
    return worst;
}

int construction_multiplier(int dim, Construction c)
{
    return c == Construction::Asymmetric ? 1 : (dim == 2 ? 2 : 3);
}

// Same parameters on the same lattice size, other construction.
HofstadterParams matched_params(const HofstadterParams& p, Construction from, Construction to)
{
    const int N = p.lattice_size(from);
    const int div = construction_multiplier(p.dim, to) * p.n;
    if (N % div != 0)
        throw std::invalid_argument("N = " + std::to_string(N) + " is not a valid size for the " + to_string(to) +
                                    " construction");
    HofstadterParams q = p;
    q.kappa = N / div;
    return q;
}

}  // namespace

void apply_json(RunConfig& cfg, const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "command") continue;
        else if (key == "dim") cfg.dim = v.get<int>();
        else if (key == "size") cfg.size = v.get<int>();
        else if (key == "bc") cfg.bc = boundary_from_string(v.get<std::string>());
        else if (key == "construction") cfg.construction = construction_from_string(v.get<std::string>());
        else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
        else if (key == "trials") cfg.trials = v.get<int>();
        else if (key == "beta") cfg.beta = v.get<double>();
        else if (key == "tolerance") cfg.tolerance = v.get<double>();
        else if (key == "m") cfg.hofstadter.m = v.get<int>();
        else if (key == "n") cfg.hofstadter.n = v.get<int>();
        else if (key == "kappa") cfg.hofstadter.kappa = v.get<int>();
        else if (key == "t") cfg.hofstadter.t = v.get<double>();
        else if (key == "theta") {
            const auto th = v.get<std::vector<double>>();
            if (th.size() > 3) throw std::invalid_argument("at most three twists");
            cfg.hofstadter.theta = {};
            std::copy(th.begin(), th.end(), cfg.hofstadter.theta.begin());
        }
        else if (key == "n_max") cfg.n_max = v.get<int>();
        else if (key == "compare") cfg.compare = v.get<bool>();
        else if (key == "source") cfg.source = v.get<std::string>();
        else if (key == "output") cfg.output = v.get<std::string>();
        else if (key == "output_dir") cfg.output_dir = v.get<std::string>();
        else if (key == "transition") {
            TransitionData t;
            for (const auto& f : v.value("functions", json::array())) {
                AffineFunction a;
                a.offset = f.value("offset", 0.0);
                const auto sl = f.value("slope", std::vector<double>{});
                if (sl.size() > kMaxDim) throw std::invalid_argument("transition slope too long");
                std::copy(sl.begin(), sl.end(), a.slope.begin());
                t.functions.push_back(a);
            }
            const auto tw = v.value("twist", std::vector<std::vector<double>>{});
            if (tw.size() > kMaxDim) throw std::invalid_argument("twist tensor too large");
            for (std::size_t a = 0; a < tw.size(); ++a) {
                if (tw[a].size() > kMaxDim) throw std::invalid_argument("twist tensor too large");
                for (std::size_t b = 0; b < tw[a].size(); ++b) t.twist[a][b] = tw[a][b];
            }
            cfg.transition = t;
        }
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

json CheckReport::to_json() const
{
    json j;
    j["check"] = check;
    j["pass"] = pass;
    j["max_violation"] = max_violation;
    j["tolerance"] = tolerance;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["details"] = details;
    return j;
}

// ---------------------------------------------------------------------------

CheckReport cmd_roundtrip(const RunConfig& cfg)
{
    const Geometry g = gauge_geometry(cfg);
    require_trials(cfg);
    Rng rng(require_seed(cfg));
    double link_err = 0.0, json_err = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
        const LinkField a = random_links(g, rng);
        const GaugeInvariantRep rep = extract_giv(a, cfg.construction);
        link_err = std::max(link_err, a.max_abs_diff(reconstruct_links(rep)));
        if (i == 0) {
            const GaugeInvariantRep back = rep_from_json(json::parse(rep_to_json(rep).dump()));
            json_err = a.max_abs_diff(reconstruct_links(back));
        }
    }
    CheckReport r = make_report(cfg, std::max(link_err, json_err), 1e-12);
    r.details = geometry_json(g);
    r.details["construction"] = to_string(cfg.construction);
    r.details["trials"] = cfg.trials;
    r.details["link_error"] = link_err;
    r.details["json_error"] = json_err;
    return r;
}

CheckReport cmd_dof(const RunConfig& cfg)
{
    const Geometry g = gauge_geometry(cfg);
    const DofCount closed = dof_count(g, cfg.construction);
    const DofCount counted = enumerate_dof(extract_giv(LinkField(g), cfg.construction));
    const auto as_json = [](const DofCount& c) {
        return json{{"n_phi", c.n_phi}, {"n_strips", c.n_strips}, {"n_loops", c.n_loops}, {"n_links", c.n_links},
                    {"total", c.total_new()}};
    };
    const double mismatch = static_cast<double>(
        std::llabs(closed.n_phi - counted.n_phi) + std::llabs(closed.n_strips - counted.n_strips) +
        std::llabs(closed.n_loops - counted.n_loops) + std::llabs(closed.n_links - counted.n_links) +
        std::llabs(counted.total_new() - counted.n_links));
    CheckReport r = make_report(cfg, mismatch, 0.0);
    r.details = geometry_json(g);
    r.details["construction"] = to_string(cfg.construction);
    r.details["closed_form"] = as_json(closed);
    r.details["enumerated"] = as_json(counted);
    return r;
}

CheckReport cmd_gauge_orbit(const RunConfig& cfg)
{
    const Geometry g = gauge_geometry(cfg);
    require_trials(cfg);
    Rng rng(require_seed(cfg));
    double strip_err = 0.0, loop_err = 0.0, phi_err = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
        const LinkField a = random_links(g, rng);
        const VertexField lambda = random_vertex(g, rng);
        const GaugeInvariantRep r0 = extract_giv(a, cfg.construction);
        const GaugeInvariantRep r1 = extract_giv(apply_gauge_transformation(a, lambda), cfg.construction);
        for (std::size_t k = 0; k < r0.strips().size(); ++k)
            for (std::size_t s = 0; s < g.num_sites(); ++s)
                strip_err = std::max(strip_err, std::abs(r0.strips()[k](s) - r1.strips()[k](s)));
        for (std::size_t k = 0; k < r0.loops().size(); ++k)
            for (std::size_t l = 0; l < r0.loops()[k].num_lines(); ++l)
                loop_err = std::max(loop_err, std::abs(r0.loops()[k].values()[l] - r1.loops()[k].values()[l]));
        const double corner = lambda(g.far_corner());
        for (std::size_t s = 0; s < g.num_sites(); ++s)
            phi_err = std::max(phi_err, std::abs(r1.phi()(s) - r0.phi()(s) - (lambda(s) - corner)));
    }
    CheckReport r = make_report(cfg, std::max({strip_err, loop_err, phi_err}), 1e-12);
    r.details = geometry_json(g);
    r.details["construction"] = to_string(cfg.construction);
    r.details["trials"] = cfg.trials;
    r.details["strip_shift"] = strip_err;
    r.details["loop_shift"] = loop_err;
    r.details["phi_shift_error"] = phi_err;
    return r;
}

CheckReport cmd_bianchi(const RunConfig& cfg)
{
    const Geometry g = gauge_geometry(cfg);
    if (g.dim() < 3) throw std::invalid_argument("Bianchi check needs dim >= 3");
    require_trials(cfg);
    Rng rng(require_seed(cfg));
    double worst = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
        const GaugeInvariantRep rep = random_rep(g, Construction::Asymmetric, rng);
        worst = std::max(worst, bianchi_residual(field_strength(reconstruct_links(rep))));
    }
    CheckReport r = make_report(cfg, worst, 1e-12);
    r.details = geometry_json(g);
    r.details["trials"] = cfg.trials;
    return r;
}

CheckReport cmd_action_check(const RunConfig& cfg)
{
    const Geometry g(cfg.dim, cfg.size, cfg.bc);
    if (g.dim() != 3 || g.periodic()) throw std::invalid_argument("action-check needs dim = 3 and open boundaries");
    if (!std::isfinite(cfg.beta) || cfg.beta < 0.0) throw std::invalid_argument("beta must be finite and >= 0");
    require_trials(cfg);
    Rng rng(require_seed(cfg));
    const ActionParams params{cfg.beta};
    double worst = -1.0, s_links = 0.0, s_strips = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
        const LinkField a = random_links(g, rng);
        const double sl = action_from_links(a, params);
        const double ss = action_from_strips(StripTriple2p1::from_rep(extract_giv(a, Construction::Asymmetric)), params);
        const double rel = std::abs(ss - sl) / std::max(1.0, std::abs(sl));
        if (rel > worst) {
            worst = rel;
            s_links = sl;
            s_strips = ss;
        }
    }
    CheckReport r = make_report(cfg, worst, 1e-10);
    r.details = {{"beta", cfg.beta}, {"S_links", s_links}, {"S_strips", s_strips}, {"rel_err", worst},
                 {"size", g.size()}, {"trials", cfg.trials}};
    return r;
}

CheckReport cmd_twist_check(const RunConfig& cfg)
{
    std::optional<GaugeInvariantRep> rep;
    json details;
    if (cfg.source == "uniform") {
        const HofstadterParams p = spectrum_params(cfg);
        rep.emplace(uniform_field_giv(p, cfg.construction));
        details = {{"source", "uniform"}, {"m", p.m}, {"n", p.n}, {"kappa", p.kappa}};
    } else if (cfg.source == "random") {
        const Geometry g = gauge_geometry(cfg);
        if (!g.periodic()) throw std::invalid_argument("twist-check needs periodic boundaries");
        Rng rng(require_seed(cfg));
        const LinkField a = random_links(g, rng);
        TransitionData tr = cfg.transition;
        if (tr.functions.empty()) tr.functions.resize(static_cast<std::size_t>(g.dim()));
        if (static_cast<int>(tr.functions.size()) != g.dim())
            throw std::invalid_argument("transition data needs one function per direction");
        if (cocycle_violation(tr, g) <= 1e-9) {
            rep.emplace(extract_giv(a, cfg.construction, tr));
        } else {
            // Keep the inconsistent data so the report shows the violation.
            const GaugeInvariantRep base = extract_giv(a, cfg.construction);
            rep.emplace(base.construction(), base.phi(), base.strips(), base.loops(), tr);
        }
        details = geometry_json(g);
        details["source"] = "random";
    } else {
        throw std::invalid_argument("unknown twist-check source: " + cfg.source);
    }
    const TwistReport t = verify_twisted_bc(*rep);
    CheckReport r = make_report(cfg, t.max(), 1e-9);
    details["construction"] = to_string(cfg.construction);
    details["cocycle"] = t.cocycle;
    details["phi_boundary"] = t.phi_boundary;
    details["strip_periodicity"] = t.strip_periodicity;
    details["loop_shift"] = t.loop_shift;
    r.details = details;
    return r;
}

CheckReport cmd_spectrum(const RunConfig& cfg)
{
    const HofstadterParams p = spectrum_params(cfg);
    const Construction c = cfg.construction;
    const int N = p.lattice_size(c);
    const Spectrum s = spectrum(p, c);
    const std::vector<double> e = s.energies();
    const std::size_t volume = static_cast<std::size_t>(std::pow(N, p.dim) + 0.5);

    std::ostringstream name;
    name << "spectrum_" << p.dim << "d_m" << p.m << "_n" << p.n << "_" << to_string(c) << "_N" << N << ".csv";
    const fs::path path = output_path(cfg, name.str());
    {
        std::ofstream f = open_output(path);
        write_spectrum_csv(f, s);
    }

    json details = {{"dim", p.dim}, {"m", p.m}, {"n", p.n}, {"kappa", p.kappa}, {"t", p.t},
                    {"construction", to_string(c)}, {"size", N}, {"bands", band_count(p, c)},
                    {"eigenvalues", e.size()}, {"csv", path.string()}};
    double violation = e.size() == volume ? 0.0 : std::numeric_limits<double>::infinity();

    if (volume <= 4096) {
        const LinkField links = reconstruct_links(uniform_field_giv(p, c));
        const CoincidenceReport ed = spectra_coincide(real_space_spectrum(links, p.t), e, 0.0);
        details["real_space"] = {{"size", ed.size}, {"max_abs_diff", ed.max_abs_diff}};
        violation = std::max(violation, ed.max_abs_diff);
    }
    if (cfg.compare) {
        const Construction other = c == Construction::Asymmetric ? Construction::Symmetric : Construction::Asymmetric;
        const HofstadterParams q = matched_params(p, c, other);
        const CoincidenceReport cmp = spectra_coincide(spectrum(q, other).energies(), e, 0.0);
        details["compare"] = {{"construction", to_string(other)}, {"kappa", q.kappa}, {"size", cmp.size},
                              {"max_abs_diff", cmp.max_abs_diff}, {"size_mismatch", cmp.size_mismatch}};
        violation = std::max(violation, cmp.max_abs_diff);
    }
    if (p.m == 1 && p.n == 2 && p.theta == std::array<double, 3>{}) {
        const HofstadterParams q = matched_params(p, c, Construction::Asymmetric);
        const double pw = pi_flux_pointwise(q);
        details["pi_flux_analytic"] = pw;
        violation = std::max(violation, pw);
    }
    CheckReport r = make_report(cfg, violation, 1e-10);
    r.details = details;
    return r;
}

CheckReport cmd_butterfly(const RunConfig& cfg)
{
    const double t = cfg.hofstadter.t;
    const auto rows = butterfly(cfg.n_max, t);
    const fs::path path = output_path(cfg, "butterfly_nmax" + std::to_string(cfg.n_max) + ".csv");
    {
        std::ofstream f = open_output(path);
        write_butterfly_csv(f, rows);
    }
    std::map<std::pair<int, int>, std::size_t> counts;
    double lo = 0.0, hi = 0.0, excess = 0.0;
    for (const auto& row : rows) {
        ++counts[{row.m, row.n}];
        lo = std::min(lo, row.energy);
        hi = std::max(hi, row.energy);
        excess = std::max(excess, std::abs(row.energy) - 4.0 * std::abs(t));
    }
    double violation = excess;
    for (const auto& [mn, cnt] : counts)
        if (cnt != static_cast<std::size_t>(mn.second * mn.second)) violation = std::numeric_limits<double>::infinity();
    CheckReport r = make_report(cfg, std::max(0.0, violation), 1e-12);
    r.details = {{"n_max", cfg.n_max}, {"pairs", counts.size()}, {"rows", rows.size()},
                 {"energy_min", lo}, {"energy_max", hi}, {"csv", path.string()}};
    return r;
}

CheckReport dispatch(const RunConfig& cfg)
{
    static const std::map<std::string, CheckReport (*)(const RunConfig&)> table = {
        {"roundtrip", cmd_roundtrip},       {"dof", cmd_dof},
        {"gauge-orbit", cmd_gauge_orbit},   {"bianchi", cmd_bianchi},
        {"action-check", cmd_action_check}, {"twist-check", cmd_twist_check},
        {"spectrum", cmd_spectrum},         {"butterfly", cmd_butterfly}};
    const auto it = table.find(cfg.command);
    if (it == table.end()) throw std::invalid_argument("unknown command: " + cfg.command);
    if (cfg.tolerance && (!std::isfinite(*cfg.tolerance) || *cfg.tolerance < 0.0))
        throw std::invalid_argument("tolerance must be finite and >= 0");
    const auto start = std::chrono::steady_clock::now();
    CheckReport r = it->second(cfg);
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"givtool: gauge-invariant lattice variables and Hofstadter spectra"};
    app.require_subcommand(1);

    struct Flags {
        std::string config, bc, construction, source, output, output_dir;
        int dim = 0, size = 0, trials = 0, m = 0, n = 0, kappa = 0, n_max = 0;
        std::uint64_t seed = 0;
        double beta = 0, tol = 0, t = 0;
        std::vector<double> theta;
        bool compare = false;
    } f;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"roundtrip", "extract/reconstruct round trip on random links"},
        {"dof", "closed-form vs enumerated variable counts"},
        {"gauge-orbit", "behaviour of the new variables under gauge transformations"},
        {"bianchi", "Bianchi identity on reconstructed configurations"},
        {"action-check", "link vs strip form of the (2+1)d action"},
        {"twist-check", "twisted periodic boundary conditions"},
        {"spectrum", "Hofstadter spectrum from the magnetic bands"},
        {"butterfly", "flux sweep of the 2d spectrum"}};
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", f.config, "JSON config file; flags override it")->check(CLI::ExistingFile);
        sub->add_option("--dim", f.dim, "lattice dimension");
        sub->add_option("--size", f.size, "linear size N");
        sub->add_option("--bc", f.bc, "open | periodic");
        sub->add_option("--construction", f.construction, "asymmetric | symmetric");
        sub->add_option("--seed", f.seed, "PRNG seed");
        sub->add_option("--trials", f.trials, "number of random configurations");
        sub->add_option("--beta", f.beta, "gauge coupling");
        sub->add_option("--tol", f.tol, "pass tolerance");
        sub->add_option("-m,--flux-m", f.m, "flux numerator");
        sub->add_option("-n,--flux-n", f.n, "flux denominator");
        sub->add_option("--kappa", f.kappa, "lattice multiplier");
        sub->add_option("-t,--hopping", f.t, "hopping amplitude");
        sub->add_option("--theta", f.theta, "boundary twists")->expected(1, 3);
        sub->add_option("--n-max", f.n_max, "largest flux denominator");
        sub->add_flag("--compare", f.compare, "also solve the other construction");
        sub->add_option("--source", f.source, "twist-check input: random | uniform");
        sub->add_option("-o,--output", f.output, "output file");
        sub->add_option("--output-dir", f.output_dir, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidInput;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg;
    cfg.command = sub->get_name();
    if (const char* env = std::getenv("GIV_OUTPUT_DIR")) cfg.output_dir = env;
    const auto given = [&](const char* opt) { return sub->get_option(opt)->count() > 0; };

    CheckReport report;
    try {
        if (given("--config")) {
            std::ifstream in(f.config);
            apply_json(cfg, json::parse(in));
        }
        if (given("--dim")) cfg.dim = f.dim;
        if (given("--size")) cfg.size = f.size;
        if (given("--bc")) cfg.bc = boundary_from_string(f.bc);
        if (given("--construction")) cfg.construction = construction_from_string(f.construction);
        if (given("--seed")) cfg.seed = f.seed;
        if (given("--trials")) cfg.trials = f.trials;
        if (given("--beta")) cfg.beta = f.beta;
        if (given("--tol")) cfg.tolerance = f.tol;
        if (given("--flux-m")) cfg.hofstadter.m = f.m;
        if (given("--flux-n")) cfg.hofstadter.n = f.n;
        if (given("--kappa")) cfg.hofstadter.kappa = f.kappa;
        if (given("--hopping")) cfg.hofstadter.t = f.t;
        if (given("--theta")) {
            cfg.hofstadter.theta = {};
            std::copy(f.theta.begin(), f.theta.end(), cfg.hofstadter.theta.begin());
        }
        if (given("--n-max")) cfg.n_max = f.n_max;
        if (given("--compare")) cfg.compare = f.compare;
        if (given("--source")) cfg.source = f.source;
        if (given("--output")) cfg.output = f.output;
        if (given("--output-dir")) cfg.output_dir = f.output_dir;
        report = dispatch(cfg);
    } catch (const EigenSolverError& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    out << report.to_json().dump(2) << '\n';
    err << cfg.command << ": " << (report.pass ? "pass" : "FAIL") << " in " << report.elapsed_seconds << " s\n";
    return report.pass ? kPass : kFail;
}

}  // namespace giv::cli
