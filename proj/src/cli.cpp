#include "bogospec/cli.hpp"

#include "bogospec/bogoliubov.hpp"
#include "bogospec/config.hpp"
#include "bogospec/errors.hpp"
#include "bogospec/excitations.hpp"
#include "bogospec/fock_ed.hpp"
#include "bogospec/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

namespace bogospec {

namespace {

struct Flags {
    RunConfig values;
    std::string sectors_text;
    std::string config_path;
    int max_excited = 0;
};

struct Binding {
    CLI::Option* opt;
    std::function<void(RunConfig&, const Flags&)> apply;
};

void add_flags(CLI::App* sub, Flags& f, std::vector<Binding>& binds)
{
    RunConfig& v = f.values;
    auto bind = [&](CLI::Option* o, std::function<void(RunConfig&, const Flags&)> apply) {
        binds.push_back({o, std::move(apply)});
    };
    sub->add_option("--config", f.config_path, "JSON config file; explicit flags override it");
    bind(sub->add_option("--vhat", v.vhat, "potential: gaussian:<a>:<w>, zero_mode:<a>, none, table:<p>/<v>,..."),
         [](RunConfig& c, const Flags& x) {
             c.vhat = x.values.vhat;
             c.table_samples.clear();
         });
    bind(sub->add_option("--L", v.L, "torus side length (>= 1)"),
         [](RunConfig& c, const Flags& x) { c.L = x.values.L; });
    bind(sub->add_option("--dim", v.dim, "dimension 1..3"),
         [](RunConfig& c, const Flags& x) { c.dim = x.values.dim; });
    bind(sub->add_option("--window", v.window, "momentum window |p| <= window"),
         [](RunConfig& c, const Flags& x) { c.window = x.values.window; });
    bind(sub->add_option("--kappa", v.kappa, "energy cutoff of the enumeration"),
         [](RunConfig& c, const Flags& x) { c.kappa = x.values.kappa; });
    bind(sub->add_option("--N", v.N, "particle number(s), comma separated for verify")->delimiter(','),
         [](RunConfig& c, const Flags& x) { c.N = x.values.N; });
    bind(sub->add_option("--mode-radius", v.mode_radius, "single-particle modes |p| <= radius"),
         [](RunConfig& c, const Flags& x) { c.mode_radius = x.values.mode_radius; });
    bind(sub->add_option("--max-excited", f.max_excited, "cap on particles outside the zero mode"),
         [](RunConfig& c, const Flags& x) { c.max_excited = x.max_excited; });
    bind(sub->add_option("--sectors", f.sectors_text, "total momenta, e.g. \"0;1;-1\" or \"0:0;1:0\""),
         [](RunConfig& c, const Flags& x) { c.sectors = parse_sectors(x.sectors_text, c.dim); });
    bind(sub->add_option("--count", v.count, "eigenvalues (levels) per sector"),
         [](RunConfig& c, const Flags& x) { c.count = x.values.count; });
    bind(sub->add_option("--tol", v.tol, "eigensolver residual tolerance relative to the matrix norm"),
         [](RunConfig& c, const Flags& x) { c.tol = x.values.tol; });
    bind(sub->add_option("--seed", v.seed, "eigensolver start-vector seed"),
         [](RunConfig& c, const Flags& x) { c.seed = x.values.seed; });
    bind(sub->add_option("--out", v.out, "output file (default: standard output)"),
         [](RunConfig& c, const Flags& x) { c.out = x.values.out; });
    bind(sub->add_option("--format", v.format, "csv or text"),
         [](RunConfig& c, const Flags& x) { c.format = x.values.format; });
    bind(sub->add_option("--pairing-scale", v.pairing_scale)->group(""),
         [](RunConfig& c, const Flags& x) { c.pairing_scale = x.values.pairing_scale; });
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void momentum_columns(std::ostream& os, int dim)
{
    for (int i = 1; i <= dim; ++i)
        os << 'n' << i << ',';
}

void cmd_dispersion(const RunConfig& cfg, std::ostream& os)
{
    const LatticeSpec lat = cfg.lattice();
    const Potential pot = cfg.potential();
    momentum_columns(os, lat.dim);
    os << "p,e_p,alpha,c,s\n";
    os.precision(17);
    for (const Momentum& p : lattice_shells(lat, cfg.window, false)) {
        const BogoCoefficients b = coefficients(p, pot);
        for (int i = 0; i < lat.dim; ++i)
            os << p.n[i] << ',';
        os << (lat.dim == 1 ? p.component(0) : p.norm()) << ',' << b.e << ',' << b.alpha << ',' << b.c << ',' << b.s
           << '\n';
    }
}

void cmd_energy(const RunConfig& cfg, std::ostream& os)
{
    const LatticeSpec lat = cfg.lattice();
    const Potential pot = cfg.potential();
    const EnergySummary e = bogoliubov_energy(lat, pot);
    os.precision(17);
    os << "quantity,value\n";
    os << "e_bog," << e.e_bog << '\n';
    os << "e_bog_alt," << e.e_bog_alt << '\n';
    os << "n_terms," << e.n_terms << '\n';
    os << "radius," << e.radius << '\n';
    os << "tail_tol," << e.tail_tol << '\n';
    os << "e_bog_per_volume," << e.e_bog / lat.volume() << '\n';
    if (pot.tail_boundable()) {
        const QuadratureResult q = energy_density_limit(pot);
        os << "density_limit," << q.value << '\n';
        os << "density_limit_error," << q.error_estimate << '\n';
    }
}

void cmd_enumerate(const RunConfig& cfg, std::ostream& os)
{
    const SpectrumTable t = enumerate_below(cfg.lattice(), cfg.potential(), cfg.kappa, cfg.window);
    write_spectrum_csv(os, t);
}

void cmd_figure(const RunConfig& cfg, std::ostream& os)
{
    const int dim = cfg.dim;
    momentum_columns(os, dim);
    os << "p,energy,n_quasi,class\n";
    if (cfg.kappa == 0.0)
        return;
    const SpectrumTable t = enumerate_below(cfg.lattice(), cfg.potential(), cfg.kappa, cfg.window);
    const auto missing = unresolved_sectors(t);
    if (!missing.empty()) {
        std::string list;
        double need = 0.0;
        for (const IntVec& n : missing) {
            list += (list.empty() ? "" : " ") + n.str();
            need = std::max(need, dispersion(Momentum(n, t.lattice), t.pot));
        }
        throw DomainError("kappa " + fmt(cfg.kappa) + " leaves the single-quasiparticle level undetermined in " +
                          std::to_string(missing.size()) + " sector(s): " + list + "; kappa >= " + fmt(need) +
                          " or a smaller window is needed");
    }
    os.precision(17);
    static const char* names[] = {"", "1qp", "2qp", "multi"};
    for (const FigureRow& r : classify_for_figure(t)) {
        for (int i = 0; i < dim; ++i)
            os << r.n[i] << ',';
        os << r.momentum_norm << ',' << r.energy << ',' << r.n_quasi << ',' << names[static_cast<int>(r.cls)]
           << '\n';
    }
}

EDConfig ed_config(const RunConfig& cfg, int N)
{
    EDConfig c;
    c.N = N;
    c.lattice = cfg.lattice();
    c.pot = cfg.potential();
    c.mode_radius = cfg.mode_radius;
    c.max_excited = cfg.max_excited ? *cfg.max_excited : default_max_excited(N);
    return c;
}

void cmd_ed(const RunConfig& cfg, std::ostream& os)
{
    const auto Ns = cfg.particle_numbers();
    if (Ns.size() != 1)
        throw ConfigError("N: ed takes a single particle number");
    const FockSpace space(ed_config(cfg, Ns.front()));
    const auto sectors = cfg.sector_list();
    const ManyBodySpectrum spec =
        many_body_excitations(space, sectors, static_cast<std::size_t>(cfg.count), cfg.eigen_options());
    write_ed_csv(os, spec, cfg.dim);
}

VerificationReport cmd_verify(const RunConfig& cfg)
{
    SuiteConfig s;
    s.lattice = cfg.lattice();
    s.pot = cfg.potential();
    s.mode_radius = cfg.mode_radius;
    s.Ns = cfg.particle_numbers();
    s.max_excited = cfg.max_excited;
    s.sectors = cfg.sector_list();
    s.j_max = cfg.count;
    s.eigen = cfg.eigen_options();
    s.estimating.pairing_scale = cfg.pairing_scale;
    return run_suite(s);
}

// Header lines stay; data lines become tab separated.
std::string as_text(const std::string& csv)
{
    std::istringstream is(csv);
    std::string line, out;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] != '#')
            std::replace(line.begin(), line.end(), ',', '\t');
        out += line + '\n';
    }
    return out;
}

void emit(const std::string& path, const std::string& data, std::ostream& out)
{
    if (path.empty()) {
        out << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("out: cannot open '" + path + "' for writing");
    f << data;
    if (!f)
        throw Error("failed writing '" + path + "'");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bogoliubov excitation spectra and exact diagonalization of the periodic Bose gas"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<Binding> binds;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"dispersion", "elementary excitation energies e_p and Bogoliubov coefficients"},
        {"energy", "Bogoliubov ground-state energy E_Bog and its infinite-volume density"},
        {"enumerate", "all multi-quasiparticle levels below kappa, by total momentum"},
        {"figure", "classified excitation spectrum for plotting"},
        {"ed", "exact diagonalization of the truncated N-particle Hamiltonian"},
        {"verify", "inequality checks and convergence fits; exit 0 iff all pass"},
    };
    for (const auto& [name, help] : commands) {
        std::vector<Binding> local;
        add_flags(app.add_subcommand(name, help), flags, local);
        binds.insert(binds.end(), local.begin(), local.end());
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    cfg.command = command;
    try {
        if (!flags.config_path.empty()) {
            std::ifstream f(flags.config_path);
            if (!f)
                throw ConfigError("config: cannot read '" + flags.config_path + "'");
            const std::string text{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
            apply_json_config(cfg, text);
        }
        // Dimension first so that --sectors parses against the final value.
        for (const Binding& b : binds)
            if (b.opt->count() > 0 && b.opt->get_name() == "--dim")
                b.apply(cfg, flags);
        for (const Binding& b : binds)
            if (b.opt->count() > 0)
                b.apply(cfg, flags);
        cfg.validate();
    } catch (const Error& e) {
        err << "bogospec: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::ostringstream body;
        write_header(body, cfg);
        if (command == "verify") {
            const VerificationReport report = cmd_verify(cfg);
            std::ostringstream summary;
            write_report_text(summary, report);
            if (cfg.format == "text")
                body << summary.str();
            else
                write_report_csv(body, report);
            emit(cfg.out, body.str(), out);
            if (!cfg.out.empty()) {
                std::ostringstream side;
                write_header(side, cfg);
                side << summary.str();
                emit(cfg.out + ".txt", side.str(), out);
            }
            if (!report.all_pass()) {
                err << "bogospec verify: " << report.failures() << " check(s) failed\n";
                for (const auto& c : report.checks)
                    if (!c.pass)
                        err << "  FAIL " << c.category << " | " << c.name << " | margin " << c.margin << " | "
                            << c.anchor << '\n';
                for (const auto& f : report.fits)
                    if (!f.pass)
                        err << "  FAIL scaling_fit | " << f.name << " | slope " << f.slope << '\n';
                return kExitChecksFailed;
            }
            return kExitOk;
        }
        if (command == "dispersion")
            cmd_dispersion(cfg, body);
        else if (command == "energy")
            cmd_energy(cfg, body);
        else if (command == "enumerate")
            cmd_enumerate(cfg, body);
        else if (command == "figure")
            cmd_figure(cfg, body);
        else if (command == "ed")
            cmd_ed(cfg, body);
        emit(cfg.out, cfg.format == "text" ? as_text(body.str()) : body.str(), out);
    } catch (const ConfigError& e) {
        err << "bogospec " << command << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "bogospec " << command << ": " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace bogospec
