#pragma once

#include "bogospec/eigensolver.hpp"
#include "bogospec/fock_ed.hpp"
#include "bogospec/model.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bogospec {

/// One numerical inequality lhs <= rhs. margin = rhs - lhs; the check
/// passes iff margin >= -tolerance.
struct Check {
    std::string category; // e.g. "ground_bound", "sandwich"
    std::string name;
    std::string anchor;   // the statement the check encodes
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Builds a Check with margin and pass filled in.
Check make_check(std::string category, std::string name, std::string anchor, double lhs, double rhs,
                 double tolerance);

enum class FitStatus { fitted, exact };

struct ScalingFit {
    std::string name;
    std::vector<std::pair<double, double>> points; // (log N, log error)
    double slope = 0.0;
    double slope_bound = -0.4;
    FitStatus status = FitStatus::fitted;
    bool pass = false;
};

/// Least-squares slope of log(error) against log(N). Needs at least three
/// points with N > 0 and error >= 0. If any error is <= exact_threshold the
/// series is an exact special case: no fit is made, status is `exact`
/// and the fit passes.
ScalingFit scaling_fit(std::string name, std::span<const double> Ns, std::span<const double> errors,
                       double slope_bound = -0.4, double exact_threshold = 0.0);

/// Two checks on the ground energy E_N of the truncated problem:
///   E_N - (N-1) vhat(0)/2 <= 0
///   E_N - (N-1) vhat(0)/2 >= (vhat(0) - L^d v(0)) / 2
std::vector<Check> check_ground_bounds(const FockSpace& space, double ground_energy);

/// For each eps: min-eig(H_{N,+eps} - H_N) >= 0 and min-eig(H_N - H_{N,-eps}) >= 0
/// on the sector, by dense diagonalization. Refuses sectors above 2000 states.
std::vector<Check> check_sandwich(const FockSpace& space, const IntVec& sector, std::span<const double> eps_list,
                                  const EstimatingOptions& opts = {});

/// min over basis states of sum |n_p|^2 n_p - N_exc >= 0.
Check check_kinetic_bound(const FockSpace& space, const IntVec& sector);

/// Every j-th eigenvalue on the larger basis is <= the j-th eigenvalue on
/// the smaller one. The smaller basis must be contained in the larger.
/// One check per sector, reporting the worst j.
std::vector<Check> check_rayleigh_ritz(const FockSpace& smaller, const FockSpace& larger,
                                       std::span<const IntVec> sectors, std::size_t count,
                                       const EigenOptions& opts = {});

/// Lowest eigenvalue of sector 0 <= lowest eigenvalue of every other
/// requested sector.
std::vector<Check> check_ground_sector(const FockSpace& space, std::span<const IntVec> sectors,
                                       const EigenOptions& opts = {});

struct LevelError {
    IntVec sector;
    int j = 0;
    double k_ed = 0.0;
    double k_bog = 0.0;
    double error = 0.0;
};

struct ComparisonRow {
    int N = 0;
    double ground_energy = 0.0;
    double e_bog = 0.0;        // on the excited ED modes
    double ground_error = 0.0; // |E_N - (N-1) vhat(0)/2 - E_Bog|
    std::vector<LevelError> levels;
};

/// Errors of the truncated many-body spectrum against the Bogoliubov
/// spectrum built from the same modes, one row per configuration.
/// All configurations must share lattice, potential and mode set.
std::vector<ComparisonRow> compare_spectra(std::span<const EDConfig> series, std::span<const IntVec> sectors,
                                           int j_max, const EigenOptions& opts = {});

/// Bogoliubov levels K_Bog^j(p), j = 1..j_max, using only the given modes
/// as constituents. Missing entries mean the sector is unreachable.
std::map<IntVec, std::vector<double>> bogoliubov_levels_on(std::span<const Momentum> modes, const Potential& pot,
                                                           std::span<const IntVec> sectors, int j_max);

struct VerificationReport {
    std::vector<Check> checks;
    std::vector<ScalingFit> fits;
    std::vector<ComparisonRow> comparison;
    std::vector<std::pair<std::string, std::string>> provenance;

    bool all_pass() const;
    std::size_t failures() const;
};

struct SuiteConfig {
    LatticeSpec lattice;
    Potential pot = Potential::gaussian(0.1, 5.0, 1);
    double mode_radius = 2.0;
    std::vector<int> Ns{4, 8, 16, 32};
    std::optional<int> max_excited; // default min(N, 8)
    std::vector<double> eps{0.25, 0.5, 1.0};
    std::vector<IntVec> sectors{IntVec{0}, IntVec{1}, IntVec{-1}, IntVec{2}};
    int j_max = 2;
    EigenOptions eigen;
    EstimatingOptions estimating; // mutation hook
};

/// Runs every check and the ground-energy scaling fit over the series.
VerificationReport run_suite(const SuiteConfig& cfg);

/// CSV: check,name,lhs,rhs,margin,pass (fits appear as check "scaling_fit").
void write_report_csv(std::ostream& os, const VerificationReport& report);
/// Human-readable summary, one line per check and fit.
void write_report_text(std::ostream& os, const VerificationReport& report);

} // namespace bogospec
