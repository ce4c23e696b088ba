// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime limits are fixed below.

#include "bogospec/bogoliubov.hpp"
#include "bogospec/excitations.hpp"
#include "bogospec/fock_ed.hpp"
#include "bogospec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace bogospec;

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kEnergyRelTol = 1e-10;
constexpr double kDensityGapTol = 1e-6;
constexpr double kOracleTol = 1e-12;
constexpr double kExactTol = 1e-10;
constexpr double kHandTol = 1e-13;
constexpr double kQuadraticTol = 1e-6;
constexpr double kSlopeBound = -0.4;

const Potential v1 = Potential::gaussian(0.1, 5.0, 1);
const Potential v2 = Potential::gaussian(7.5, 2.0, 1);
const LatticeSpec unit{2.0 * kPi, 1};
const LatticeSpec fig{40.0 * kPi / 3.0, 1}; // spacing 0.15

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s %d %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                secs, limit_s, in_time ? "" : ", too slow");
    std::fflush(stdout);
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

Outcome identity_suite()
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(-400, 400);
    double worst = 0.0;
    for (const Potential& pot : {v1, v2, Potential::none(1)})
        for (int i = 0; i < 10000; ++i) {
            int n = coord(rng);
            n = n == 0 ? 1 : n;
            worst = std::max(worst, identity_residuals(Momentum(IntVec{n}, fig), pot).max());
        }
    return {worst < kIdentityTol, "max residual " + sci(worst) + " over 3 x 10^4 points (tol 1e-12)"};
}

Outcome energy_consistency()
{
    bool ok = true;
    double worst_rel = 0.0, max_e = -1.0;
    for (double L : {2.0 * kPi, 40.0 * kPi / 3.0, 200.0}) {
        const auto e = bogoliubov_energy(LatticeSpec{L, 1}, v1);
        worst_rel = std::max(worst_rel, std::abs(e.e_bog - e.e_bog_alt) / std::abs(e.e_bog));
        max_e = std::max(max_e, e.e_bog);
    }
    ok = ok && worst_rel <= kEnergyRelTol && max_e <= 0.0;

    // Energy per volume at density 1 (N = L) against the infinite-volume
    // integral, and the bare form vhat(0)/2 + E_Bog/L.
    const double limit = energy_density_limit(v1).value;
    double prev = INFINITY, gap = 0.0, bare_gap = 0.0;
    bool decreasing = true;
    for (double L : {25.0, 50.0, 100.0, 200.0}) {
        const double e = bogoliubov_energy(LatticeSpec{L, 1}, v1).e_bog;
        gap = std::abs(0.5 * 0.1 * (L - 1.0) / L + e / L - limit);
        bare_gap = std::abs(0.5 * 0.1 + e / L - limit);
        decreasing = decreasing && gap < prev;
        prev = gap;
    }
    ok = ok && decreasing && gap < kDensityGapTol;
    return {ok, "direct/alt rel diff " + sci(worst_rel) + ", max E_Bog " + sci(max_e) + ", gap decreasing " +
                    (decreasing ? "yes" : "no") + ", gap at L = 200: " + sci(gap) + " (bare form " +
                    sci(bare_gap) + ", tol 1e-6)"};
}

bool same_as_oracle(const SpectrumTable& t, std::string& why)
{
    for (const auto& [p, recs] : t.sectors) {
        const auto oracle = oracle_enumerate(t.lattice, t.pot, t.kappa, p);
        if (oracle.size() != recs.size()) {
            why = "sector " + p.str() + " size " + std::to_string(recs.size()) + " vs " +
                  std::to_string(oracle.size());
            return false;
        }
        std::multiset<std::vector<IntVec>> a, b;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            if (std::abs(recs[i].energy - oracle[i].energy) > kOracleTol) {
                why = "sector " + p.str() + " energy mismatch at rank " + std::to_string(i + 1);
                return false;
            }
            a.insert(recs[i].constituents);
            b.insert(oracle[i].constituents);
        }
        if (a != b) {
            why = "sector " + p.str() + " multisets differ";
            return false;
        }
    }
    return true;
}

Outcome oracle_equivalence()
{
    std::string why;
    const auto free1 = enumerate_below(unit, Potential::none(1), 7.5, 3.0);
    if (!same_as_oracle(free1, why))
        return {false, "free d = 1: " + why};
    std::vector<double> prefix;
    for (const auto& o : oracle_enumerate(unit, Potential::none(1), 7.5, IntVec{1}))
        prefix.push_back(o.energy);
    prefix.resize(std::min<std::size_t>(prefix.size(), 7));
    if (prefix != std::vector<double>{1, 3, 5, 5, 7, 7, 7})
        return {false, "oracle sector-1 prefix differs from [1,3,5,5,7,7,7]"};
    if (!same_as_oracle(enumerate_below(unit, v1, 3.0, 3.0), why))
        return {false, "v1: " + why};
    if (!same_as_oracle(enumerate_below(LatticeSpec{2.0 * kPi, 2}, Potential::none(2), 4.5, 2.0), why))
        return {false, "free d = 2: " + why};
    return {true, "three cases identical; sector-1 prefix [1,3,5,5,7,7,7]"};
}

Outcome two_quasiparticle_below_curve()
{
    const int n_max = 4;
    const double window = n_max * fig.spacing();
    double kappa = 0.0;
    for (int n = 1; n <= n_max; ++n)
        kappa = std::max(kappa, dispersion(Momentum(IntVec{n}, fig), v1));
    const auto t = enumerate_below(fig, v1, kappa, window);
    for (const FigureRow& r : classify_for_figure(t)) {
        if (r.n_quasi != 2 || r.n.is_zero())
            continue;
        const double one = dispersion(Momentum(r.n, fig), v1);
        if (r.energy < one)
            return {true, "sector n = " + r.n.str() + " (|p| = " + sci(std::abs(r.momentum_norm)) + "): 2qp " +
                              sci(r.energy) + " < 1qp " + sci(one)};
    }
    return {false, "no 2qp level below the 1qp curve for |n| <= 4"};
}

Outcome maxon_roton()
{
    const int n_max = 40; // |p| <= 6
    std::vector<double> e;
    for (int n = 1; n <= n_max; ++n)
        e.push_back(dispersion(Momentum(IntVec{n}, fig), v2));
    int maxon = -1;
    for (int i = 1; i + 1 < n_max; ++i) {
        if (maxon < 0 && e[i - 1] < e[i] && e[i] > e[i + 1])
            maxon = i;
        else if (maxon >= 0 && e[i - 1] > e[i] && e[i] < e[i + 1])
            return {true, "maxon at n = " + std::to_string(maxon + 1) + ", roton at n = " + std::to_string(i + 1)};
    }
    double min_step = INFINITY;
    for (int i = 1; i < n_max; ++i)
        min_step = std::min(min_step, e[i] - e[i - 1]);
    return {false, std::string(maxon < 0 ? "no local maximum" : "no local minimum after the maximum") +
                       "; e_p rises from " + sci(e.front()) + " to " + sci(e.back()) +
                       " with smallest step " + sci(min_step) + " (dispersion monotone over |p| <= 6)"};
}

// Free sums of |k|^2 over multisets of at most `cap` excited modes with
// total momentum p, ascending, vacuum excluded.
std::vector<double> free_levels(const std::vector<Momentum>& modes, int cap, const IntVec& p)
{
    std::vector<double> out;
    std::vector<int> occ(modes.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t m, int left) {
        if (m == modes.size()) {
            IntVec total(p.dim());
            double e = 0.0;
            int used = 0;
            for (std::size_t i = 0; i < modes.size(); ++i) {
                for (int k = 0; k < occ[i]; ++k)
                    total += modes[i].n;
                e += occ[i] * modes[i].norm2();
                used += occ[i];
            }
            if (used > 0 && total == p)
                out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            occ[m] = k;
            rec(m + 1, left - k);
        }
        occ[m] = 0;
    };
    rec(0, cap);
    std::sort(out.begin(), out.end());
    return out;
}

Outcome exact_ed_cases()
{
    const std::vector<IntVec> sectors{IntVec{0}, IntVec{1}, IntVec{-1}, IntVec{2}};
    const std::size_t count = 3;
    double worst_e = 0.0, worst_k = 0.0, worst_free = 0.0;
    std::size_t compared = 0;
    for (int N : {2, 4, 6}) {
        EDConfig c;
        c.N = N;
        c.pot = Potential::zero_mode(0.3, 1);
        c.mode_radius = 2.0;
        c.max_excited = default_max_excited(N);
        const FockSpace space(c);
        const auto spec = many_body_excitations(space, sectors, count);
        worst_e = std::max(worst_e, std::abs(spec.ground_energy - 0.5 * 0.3 * (N - 1)));
        const auto excited = space.modes().excited();
        for (const IntVec& p : sectors) {
            const auto levels = free_levels(excited, c.excited_cap(), p);
            const auto& gaps = spec.sectors.at(p).gaps;
            const std::size_t n = std::min(gaps.size(), levels.size());
            if (n == 0 || n < std::min(count, levels.size()))
                return {false, "N = " + std::to_string(N) + " sector " + p.str() + ": missing levels"};
            for (std::size_t j = 0; j < n; ++j) {
                worst_k = std::max(worst_k, std::abs(gaps[j] - levels[j]));
                ++compared;
            }
        }
        c.pot = Potential::none(1);
        const auto free_spec = many_body_excitations(FockSpace(c), sectors, 1);
        worst_free = std::max(worst_free, std::abs(free_spec.ground_energy));
    }
    const bool ok = worst_e <= kExactTol && worst_k <= kExactTol && worst_free <= kExactTol;
    return {ok, "zero-mode |E_N - (N-1)vhat(0)/2| " + sci(worst_e) + ", max |K_N - free sum| " + sci(worst_k) +
                    " over " + std::to_string(compared) + " levels, free |E_N| " + sci(worst_free) +
                    " (tol 1e-10)"};
}

Outcome hand_sector()
{
    EDConfig c;
    c.N = 2;
    c.pot = v1;
    c.mode_radius = 1.0;
    const FockSpace space(c);
    const Eigen::MatrixXd h(assemble_hamiltonian(space, IntVec{0}).matrix);
    if (h.rows() != 2)
        return {false, "sector dimension " + std::to_string(h.rows())};
    const double v0 = 0.1, vh1 = 0.1 * std::exp(-0.2), vh2 = 0.1 * std::exp(-0.8);
    Eigen::Matrix2d expected;
    expected << v0 / 2.0, vh1 / std::sqrt(2.0), vh1 / std::sqrt(2.0), 2.0 + (v0 + vh2) / 2.0;
    const double diff = (h - expected).cwiseAbs().maxCoeff();
    return {diff <= kHandTol, "max entry difference " + sci(diff) + " (tol 1e-13)"};
}

Outcome quadratic_pair()
{
    const Potential pot = Potential::gaussian(std::exp(1.0), 1.0, 1); // vhat(1) = 1
    const std::vector<Momentum> pair{Momentum(IntVec{-1}, 1.0), Momentum(IntVec{1}, 1.0)};
    const double exact = -(2.0 - std::sqrt(3.0));
    double worst = 0.0;
    for (int occ : {40, 60}) {
        const auto m = assemble_bogoliubov_quadratic(pair, pot, occ, IntVec{0});
        const double e = lowest_eigenvalues(m, EigenOptions{}).values.front();
        worst = std::max(worst, std::abs(e - exact));
    }
    return {worst <= kQuadraticTol, "max |E - (-(A - sqrt(A^2 - B^2)))| " + sci(worst) +
                                        " at max_occupation 40 and 60 (tol 1e-6)"};
}

} // namespace

int main()
{
    std::printf("bogospec acceptance\n");
    report(1, "Bogoliubov identity suite", 1, identity_suite);
    report(2, "E_Bog consistency and infinite-volume limit", 5, energy_consistency);
    report(3, "enumeration oracle equivalence", 10, oracle_equivalence);
    report(4, "(a) v1 figure: 2qp level below the 1qp curve", 30, two_quasiparticle_below_curve);
    report(4, "(b) v2 figure: maxon followed by roton", 30, maxon_roton);
    report(5, "exact ED cases", 10, exact_ed_cases);
    report(6, "hand-derived two-particle sector", 1, hand_sector);

    VerificationReport suite;
    double suite_secs = 0.0;
    report(7, "inequalities on the suite configurations", 120, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteConfig cfg; // v1, d = 1, L = 2 pi, |n| <= 2, N = 4, 8, 16, 32
        suite = run_suite(cfg);
        suite_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t n = 0, bad = 0;
        double worst = INFINITY;
        std::string first_bad;
        for (const auto& c : suite.checks) {
            if (c.category == "convergence")
                continue;
            ++n;
            worst = std::min(worst, c.margin);
            if (!c.pass) {
                ++bad;
                if (first_bad.empty())
                    first_bad = "; first failure " + c.category + " " + c.name;
            }
        }
        return Outcome{bad == 0 && n > 0, std::to_string(n - bad) + "/" + std::to_string(n) +
                                              " checks pass, smallest margin " + sci(worst) + first_bad};
    });
    report(8, "quadratic Hamiltonian single pair", 5, quadratic_pair);
    report(9, "ground-energy convergence rate", 600, [&] {
        if (suite.comparison.empty())
            return Outcome{false, "suite did not run"};
        std::string errs;
        bool decreasing = true;
        for (std::size_t i = 0; i < suite.comparison.size(); ++i) {
            const auto& r = suite.comparison[i];
            errs += (i ? ", " : "") + std::to_string(r.N) + ": " + sci(r.ground_error);
            if (i > 0 && !(r.ground_error < suite.comparison[i - 1].ground_error))
                decreasing = false;
        }
        const ScalingFit* fit = nullptr;
        for (const auto& f : suite.fits)
            fit = &f;
        const bool ok = decreasing && fit && fit->status == FitStatus::fitted && fit->slope <= kSlopeBound;
        return Outcome{ok, "errors {" + errs + "}, strictly decreasing " + (decreasing ? "yes" : "no") +
                               ", slope " + (fit ? sci(fit->slope) : "n/a") + " (bound -0.4; suite took " +
                               sci(suite_secs) + " s)"};
    });

    std::printf("%d criterion line(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
