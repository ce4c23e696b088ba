#include "bogospec/verify.hpp"

#include "bogospec/bogoliubov.hpp"
#include "bogospec/errors.hpp"
#include "bogospec/excitations.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

namespace bogospec {

namespace {

constexpr double kMatrixTol = 1e-9;
constexpr std::size_t kDenseLimit = 2000;

const char* kAnchorUpper = "ground energy never exceeds the condensate trial-state energy (N-1) vhat(0)/2";
const char* kAnchorLower = "ground energy lower bound (N-1) vhat(0)/2 + (vhat(0) - L^d v(0))/2";
const char* kAnchorSandwichUp = "estimating Hamiltonian H_{N,+eps} dominates H_N";
const char* kAnchorSandwichLo = "H_N dominates estimating Hamiltonian H_{N,-eps}";
const char* kAnchorKinetic = "kinetic energy bound T L^2/(2pi)^2 >= N_exc";
const char* kAnchorRitz = "Rayleigh-Ritz: compression never lowers eigenvalues";
const char* kAnchorSector = "ground state has total momentum 0";
const char* kAnchorRate = "E_N = (N-1) vhat(0)/2 + E_Bog + O(N^{-1/2}) at fixed L";

double matrix_scale(const SectorMatrix& a, const SectorMatrix& b)
{
    return std::max(a.max_abs_entry(), b.max_abs_entry());
}

double min_eig_difference(const SectorMatrix& a, const SectorMatrix& b)
{
    return dense_min_eigenvalue(Eigen::MatrixXd(a.matrix - b.matrix));
}

std::string eps_label(double eps)
{
    std::ostringstream os;
    os << eps;
    return os.str();
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::vector<IntVec> with_origin(std::span<const IntVec> sectors, int dim)
{
    std::set<IntVec> s(sectors.begin(), sectors.end());
    s.insert(IntVec(dim));
    return {s.begin(), s.end()};
}

double lowest_in(const FockSpace& space, const IntVec& p, std::size_t count, const EigenOptions& opts,
                 std::vector<double>* all = nullptr)
{
    const SectorMatrix h = assemble_hamiltonian(space, p);
    EigenOptions o = opts;
    o.count = std::min(count, h.dim());
    const EigenResult r = lowest_eigenvalues(h, o);
    if (all)
        *all = r.values;
    return r.values.front();
}

} // namespace

Check make_check(std::string category, std::string name, std::string anchor, double lhs, double rhs,
                 double tolerance)
{
    Check c;
    c.category = std::move(category);
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.tolerance = tolerance;
    c.pass = c.margin >= -tolerance;
    return c;
}

ScalingFit scaling_fit(std::string name, std::span<const double> Ns, std::span<const double> errors,
                       double slope_bound, double exact_threshold)
{
    if (Ns.size() != errors.size())
        throw DomainError("scaling fit needs one error per N");
    if (Ns.size() < 3)
        throw DomainError("scaling fit needs at least three points");
    ScalingFit fit;
    fit.name = std::move(name);
    fit.slope_bound = slope_bound;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (!(Ns[i] > 0.0))
            throw DomainError("scaling fit needs N > 0");
        if (!(errors[i] >= 0.0) || !std::isfinite(errors[i]))
            throw DomainError("scaling fit needs finite errors >= 0");
    }
    if (std::any_of(errors.begin(), errors.end(), [&](double e) { return e <= exact_threshold; })) {
        fit.status = FitStatus::exact;
        fit.pass = true;
        return fit;
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        fit.points.emplace_back(std::log(Ns[i]), std::log(errors[i]));
        sx += fit.points.back().first;
        sy += fit.points.back().second;
    }
    const double n = static_cast<double>(Ns.size());
    const double mx = sx / n, my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : fit.points) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0.0)
        throw DomainError("scaling fit needs at least two distinct N");
    fit.slope = sxy / sxx;
    fit.pass = fit.slope <= slope_bound;
    return fit;
}

std::vector<Check> check_ground_bounds(const FockSpace& space, double ground_energy)
{
    const double v0 = space.v_origin();
    if (std::isnan(v0))
        throw TailBoundError("periodized v(0) unavailable; ground bounds need it");
    const int N = space.config().N;
    const double vhat0 = space.vhat_of(space.zero());
    const double shifted = ground_energy - 0.5 * (N - 1) * vhat0;
    const double tol = kMatrixTol * std::max({1.0, std::abs(ground_energy), 0.5 * (N - 1) * std::abs(vhat0)});
    const double floor = 0.5 * (vhat0 - space.config().lattice.volume() * v0);
    const std::string tag = "N=" + std::to_string(N);
    return {make_check("ground_bound", tag + " upper", kAnchorUpper, shifted, 0.0, tol),
            make_check("ground_bound", tag + " lower", kAnchorLower, floor, shifted, tol)};
}

std::vector<Check> check_sandwich(const FockSpace& space, const IntVec& sector, std::span<const double> eps_list,
                                  const EstimatingOptions& opts)
{
    const std::string tag = "N=" + std::to_string(space.config().N) + " p=" + sector.str();
    std::vector<Check> out;
    if (!space.has_sector(sector)) {
        for (double eps : eps_list) {
            out.push_back(make_check("sandwich", tag + " eps=" + eps_label(eps) + " upper", kAnchorSandwichUp, 0.0,
                                     0.0, 0.0));
            out.push_back(make_check("sandwich", tag + " eps=" + eps_label(eps) + " lower", kAnchorSandwichLo, 0.0,
                                     0.0, 0.0));
        }
        return out;
    }
    const SectorMatrix h = assemble_hamiltonian(space, sector);
    if (h.dim() > kDenseLimit)
        throw SizeError("sector " + sector.str() + " has " + std::to_string(h.dim()) +
                        " states; the dense sandwich check refuses above 2000");
    for (double eps : eps_list) {
        if (!(eps > 0.0 && eps <= 1.0))
            throw DomainError("sandwich eps must lie in (0, 1]");
        const SectorMatrix up = assemble_estimating(space, sector, eps, Bound::upper, opts);
        const SectorMatrix lo = assemble_estimating(space, sector, eps, Bound::lower, opts);
        out.push_back(make_check("sandwich", tag + " eps=" + eps_label(eps) + " upper", kAnchorSandwichUp, 0.0,
                                 min_eig_difference(up, h), kMatrixTol * matrix_scale(up, h)));
        out.push_back(make_check("sandwich", tag + " eps=" + eps_label(eps) + " lower", kAnchorSandwichLo, 0.0,
                                 min_eig_difference(h, lo), kMatrixTol * matrix_scale(h, lo)));
    }
    return out;
}

Check check_kinetic_bound(const FockSpace& space, const IntVec& sector)
{
    const std::string tag = "N=" + std::to_string(space.config().N) + " p=" + sector.str();
    if (!space.has_sector(sector))
        return make_check("kinetic", tag, kAnchorKinetic, 0.0, 0.0, 0.0);
    const SectorMatrix t = assemble_kinetic(space, sector);
    const SectorMatrix n = assemble_excited_number(space, sector);
    const double h2 = space.modes().spacing() * space.modes().spacing();
    const Eigen::VectorXd diff = Eigen::VectorXd(t.matrix.diagonal()) / h2 - Eigen::VectorXd(n.matrix.diagonal());
    const double scale = std::max(t.max_abs_entry() / h2, n.max_abs_entry());
    return make_check("kinetic", tag, kAnchorKinetic, 0.0, diff.minCoeff(), kMatrixTol * scale);
}

std::vector<Check> check_rayleigh_ritz(const FockSpace& smaller, const FockSpace& larger,
                                       std::span<const IntVec> sectors, std::size_t count, const EigenOptions& opts)
{
    const EDConfig& a = smaller.config();
    const EDConfig& b = larger.config();
    if (a.N != b.N || a.lattice.L != b.lattice.L || a.lattice.dim != b.lattice.dim ||
        a.pot.describe() != b.pot.describe() || a.mode_radius > b.mode_radius ||
        smaller.basis().max_excited > larger.basis().max_excited)
        throw DomainError("Rayleigh-Ritz check needs a basis contained in the larger one");
    const std::string tag = "N=" + std::to_string(a.N) + " R=" + fmt(a.mode_radius) + "->" + fmt(b.mode_radius) +
                            " m=" + std::to_string(smaller.basis().max_excited) + "->" +
                            std::to_string(larger.basis().max_excited);
    std::vector<Check> out;
    for (const IntVec& p : sectors) {
        if (!smaller.has_sector(p)) {
            out.push_back(make_check("rayleigh_ritz", tag + " p=" + p.str(), kAnchorRitz, 0.0, 0.0, 0.0));
            continue;
        }
        std::vector<double> small_vals, large_vals;
        lowest_in(smaller, p, count, opts, &small_vals);
        lowest_in(larger, p, small_vals.size(), opts, &large_vals);
        std::size_t worst = 0;
        for (std::size_t j = 1; j < small_vals.size(); ++j)
            if (small_vals[j] - large_vals[j] < small_vals[worst] - large_vals[worst])
                worst = j;
        const double scale = std::max({1.0, std::abs(small_vals.back()), std::abs(large_vals.back())});
        out.push_back(make_check("rayleigh_ritz", tag + " p=" + p.str() + " j=" + std::to_string(worst + 1),
                                 kAnchorRitz, large_vals[worst], small_vals[worst], kMatrixTol * scale));
    }
    return out;
}

std::vector<Check> check_ground_sector(const FockSpace& space, std::span<const IntVec> sectors,
                                       const EigenOptions& opts)
{
    const IntVec origin(space.config().lattice.dim);
    const double e0 = lowest_in(space, origin, 1, opts);
    const double tol = kMatrixTol * std::max(1.0, std::abs(e0));
    std::vector<Check> out;
    for (const IntVec& p : sectors) {
        if (p.is_zero() || !space.has_sector(p))
            continue;
        out.push_back(make_check("ground_sector", "N=" + std::to_string(space.config().N) + " p=" + p.str(),
                                 kAnchorSector, e0, lowest_in(space, p, 1, opts), tol));
    }
    return out;
}

std::map<IntVec, std::vector<double>> bogoliubov_levels_on(std::span<const Momentum> modes, const Potential& pot,
                                                           std::span<const IntVec> sectors, int j_max)
{
    if (j_max < 1)
        throw DomainError("j_max must be >= 1");
    std::vector<Quasiparticle> cand;
    double e_max = 0.0;
    for (const Momentum& m : modes) {
        if (m.is_zero())
            continue;
        cand.push_back({m.n, dispersion(m, pot)});
        e_max = std::max(e_max, cand.back().energy);
    }
    std::map<IntVec, std::vector<double>> out;
    if (cand.empty())
        return out;
    const std::set<IntVec> wanted(sectors.begin(), sectors.end());
    const double start = 2.0 * e_max;
    // Each doubling multiplies the multiset count; 16x the start is ample
    // for the handful of levels compared against exact diagonalization.
    for (double kappa = start; kappa <= 16.0 * start; kappa *= 2.0) {
        const SectorMap found =
            enumerate_multisets(cand, kappa, [&](const IntVec& n) { return wanted.contains(n); });
        bool complete = true;
        out.clear();
        for (const IntVec& p : wanted) {
            auto it = found.find(p);
            std::vector<double>& levels = out[p];
            if (it != found.end())
                for (const auto& r : it->second)
                    if (static_cast<int>(levels.size()) < j_max)
                        levels.push_back(r.energy);
            complete = complete && static_cast<int>(levels.size()) == j_max;
        }
        if (complete)
            break;
    }
    return out;
}

std::vector<ComparisonRow> compare_spectra(std::span<const EDConfig> series, std::span<const IntVec> sectors,
                                           int j_max, const EigenOptions& opts)
{
    if (series.empty())
        return {};
    const EDConfig& first = series.front();
    const ModeSet reference(first.lattice, first.mode_radius);
    for (const EDConfig& c : series) {
        const ModeSet m(c.lattice, c.mode_radius);
        bool same = m.size() == reference.size() && c.lattice.dim == first.lattice.dim &&
                    c.lattice.L == first.lattice.L && c.pot.describe() == first.pot.describe();
        for (std::size_t i = 0; same && i < m.size(); ++i)
            same = m[i].n == reference[i].n;
        if (!same)
            throw DomainError("compare_spectra needs one lattice, potential and mode set across the series");
    }
    const std::vector<Momentum> excited = reference.excited();
    const double e_bog = bogoliubov_energy_on(excited, first.pot);
    const std::vector<IntVec> all = with_origin(sectors, first.lattice.dim);
    const auto bog = bogoliubov_levels_on(excited, first.pot, all, j_max);

    std::vector<ComparisonRow> rows;
    for (const EDConfig& c : series) {
        const FockSpace space(c);
        const ManyBodySpectrum spec = many_body_excitations(space, all, static_cast<std::size_t>(j_max), opts);
        ComparisonRow row;
        row.N = c.N;
        row.ground_energy = spec.ground_energy;
        row.e_bog = e_bog;
        row.ground_error = std::abs(spec.ground_energy - 0.5 * (c.N - 1) * space.vhat_of(space.zero()) - e_bog);
        for (const IntVec& p : all) {
            const auto& gaps = spec.sectors.at(p).gaps;
            const auto it = bog.find(p);
            for (int j = 1; j <= j_max; ++j) {
                const auto idx = static_cast<std::size_t>(j - 1);
                if (idx >= gaps.size() || it == bog.end() || idx >= it->second.size())
                    continue;
                LevelError le;
                le.sector = p;
                le.j = j;
                le.k_ed = gaps[idx];
                le.k_bog = it->second[idx];
                le.error = std::abs(le.k_ed - le.k_bog);
                row.levels.push_back(le);
            }
        }
        if (!std::isfinite(row.ground_error))
            throw InvariantError("non-finite ground-energy error at N = " + std::to_string(c.N));
        rows.push_back(std::move(row));
    }
    return rows;
}

bool VerificationReport::all_pass() const
{
    return failures() == 0;
}

std::size_t VerificationReport::failures() const
{
    std::size_t n = 0;
    for (const auto& c : checks)
        n += c.pass ? 0 : 1;
    for (const auto& f : fits)
        n += f.pass ? 0 : 1;
    return n;
}

VerificationReport run_suite(const SuiteConfig& cfg)
{
    cfg.lattice.validate();
    if (cfg.Ns.size() < 3)
        throw DomainError("the suite needs at least three particle numbers");
    VerificationReport report;
    const int dim = cfg.lattice.dim;
    const std::vector<IntVec> sectors = with_origin(cfg.sectors, dim);

    std::vector<EDConfig> series;
    for (int N : cfg.Ns) {
        EDConfig c;
        c.N = N;
        c.lattice = cfg.lattice;
        c.pot = cfg.pot;
        c.mode_radius = cfg.mode_radius;
        c.max_excited = cfg.max_excited ? *cfg.max_excited : default_max_excited(N);
        series.push_back(c);
    }

    for (const EDConfig& c : series) {
        const FockSpace space(c);
        const double e0 = lowest_in(space, IntVec(dim), 1, cfg.eigen);
        for (auto& ch : check_ground_bounds(space, e0))
            report.checks.push_back(std::move(ch));
        for (const IntVec& p : sectors) {
            for (auto& ch : check_sandwich(space, p, cfg.eps, cfg.estimating))
                report.checks.push_back(std::move(ch));
            report.checks.push_back(check_kinetic_bound(space, p));
        }
        for (auto& ch : check_ground_sector(space, sectors, cfg.eigen))
            report.checks.push_back(std::move(ch));

        const auto count = static_cast<std::size_t>(cfg.j_max + 1);
        if (space.basis().max_excited > 0) {
            EDConfig fewer = c;
            fewer.max_excited = space.basis().max_excited - 1;
            for (auto& ch : check_rayleigh_ritz(FockSpace(fewer), space, sectors, count, cfg.eigen))
                report.checks.push_back(std::move(ch));
        }
        const double h = cfg.lattice.spacing();
        if (c.mode_radius >= 2.0 * h) {
            EDConfig narrower = c;
            narrower.mode_radius = h;
            for (auto& ch : check_rayleigh_ritz(FockSpace(narrower), space, sectors, count, cfg.eigen))
                report.checks.push_back(std::move(ch));
        }
    }

    report.comparison = compare_spectra(series, sectors, cfg.j_max, cfg.eigen);
    std::vector<double> Ns, errs;
    double exact = 0.0;
    for (std::size_t i = 0; i < report.comparison.size(); ++i) {
        const ComparisonRow& r = report.comparison[i];
        Ns.push_back(r.N);
        errs.push_back(r.ground_error);
        exact = std::max(exact, 64.0 * DBL_EPSILON * std::max({1.0, std::abs(r.ground_energy), std::abs(r.e_bog)}));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        Check c = make_check("convergence",
                             "ground error N=" + std::to_string(report.comparison[i - 1].N) + "->" +
                                 std::to_string(report.comparison[i].N),
                             kAnchorRate, errs[i], errs[i - 1], 0.0);
        // Strict decrease, except that an exact series stays exact.
        c.pass = c.margin > 0.0 || (errs[i] <= exact && errs[i - 1] <= exact);
        report.checks.push_back(std::move(c));
    }
    report.fits.push_back(scaling_fit("ground energy error", Ns, errs, -0.4, exact));

    report.provenance = {
        {"L", fmt(cfg.lattice.L)},
        {"dimension", std::to_string(dim)},
        {"vhat", cfg.pot.describe()},
        {"mode_radius", fmt(cfg.mode_radius)},
        {"max_excited", cfg.max_excited ? std::to_string(*cfg.max_excited) : "min(N,8)"},
        {"tol", fmt(cfg.eigen.tol)},
        {"seed", std::to_string(cfg.eigen.seed)},
        {"j_max", std::to_string(cfg.j_max)},
    };
    std::string ns, eps, secs;
    for (int N : cfg.Ns)
        ns += (ns.empty() ? "" : " ") + std::to_string(N);
    for (double e : cfg.eps)
        eps += (eps.empty() ? "" : " ") + eps_label(e);
    for (const IntVec& p : sectors)
        secs += (secs.empty() ? "" : " ") + p.str();
    report.provenance.emplace_back("N", ns);
    report.provenance.emplace_back("eps", eps);
    report.provenance.emplace_back("sectors", secs);
    if (cfg.estimating.pairing_scale != 1.0)
        report.provenance.emplace_back("pairing_scale", fmt(cfg.estimating.pairing_scale));
    return report;
}

void write_report_csv(std::ostream& os, const VerificationReport& report)
{
    const auto old = os.precision(17);
    os << "check,name,lhs,rhs,margin,pass\n";
    for (const auto& c : report.checks)
        os << c.category << ',' << c.name << ',' << c.lhs << ',' << c.rhs << ',' << c.margin << ','
           << (c.pass ? 1 : 0) << '\n';
    for (const auto& f : report.fits) {
        if (f.status == FitStatus::exact)
            os << "scaling_fit," << f.name << " (exact),0," << f.slope_bound << ',' << f.slope_bound << ",1\n";
        else
            os << "scaling_fit," << f.name << ',' << f.slope << ',' << f.slope_bound << ',' << f.slope_bound - f.slope
               << ',' << (f.pass ? 1 : 0) << '\n';
    }
    os.precision(old);
}

void write_report_text(std::ostream& os, const VerificationReport& report)
{
    const auto old = os.precision(6);
    for (const auto& c : report.checks)
        os << (c.pass ? "PASS " : "FAIL ") << c.category << " | " << c.name << " | lhs " << c.lhs << " rhs " << c.rhs
           << " margin " << c.margin << " | " << c.anchor << '\n';
    for (const auto& f : report.fits) {
        os << (f.pass ? "PASS " : "FAIL ") << "scaling_fit | " << f.name << " | ";
        if (f.status == FitStatus::exact)
            os << "exact (zero error, no fit)";
        else
            os << "slope " << f.slope << " bound " << f.slope_bound;
        os << " | " << kAnchorRate << '\n';
    }
    for (const auto& r : report.comparison) {
        os << "N=" << r.N << " E_N " << r.ground_energy << " E_Bog " << r.e_bog << " ground error " << r.ground_error
           << '\n';
        for (const auto& l : r.levels)
            os << "  p=" << l.sector.str() << " j=" << l.j << " K_N " << l.k_ed << " K_Bog " << l.k_bog << " error "
               << l.error << '\n';
    }
    const std::size_t fails = report.failures();
    os << (fails == 0 ? "all checks passed" : std::to_string(fails) + " check(s) failed") << '\n';
    if (fails != 0)
        os << "ground bounds and sandwich checks encode theorems; a failure there indicates an implementation bug\n";
    os.precision(old);
}

} // namespace bogospec
