#pragma once

#include "bogospec/model.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace bogospec {

/// One point of the Bogoliubov excitation spectrum: a multiset of nonzero
/// quasiparticle momenta, its total momentum and summed energy.
struct ExcitationRecord {
    IntVec total;
    double energy = 0.0;
    std::vector<IntVec> constituents; // lexicographically nondecreasing
    int rank = 0;                     // j, 1-based within the sector

    int n_quasi() const noexcept { return static_cast<int>(constituents.size()); }
};

using SectorMap = std::map<IntVec, std::vector<ExcitationRecord>>;

/// All multi-quasiparticle energies <= kappa, binned by total momentum.
/// Every in-window sector is present, possibly empty. The vacuum is never
/// listed, so sector 0 starts at its first excited level.
struct SpectrumTable {
    LatticeSpec lattice;
    Potential pot = Potential::none(1);
    double kappa = 0.0;
    double window = 0.0;
    SectorMap sectors;

    bool in_window(const IntVec& n) const;
};

/// A single-quasiparticle mode usable as a constituent.
struct Quasiparticle {
    IntVec n;
    double energy = 0.0;
};

/// Best-first enumeration of every multiset of `candidates` (each used any
/// number of times) with total energy <= kappa. `keep` selects which total
/// momenta are stored. Candidates must have positive energy. Throws
/// SizeError beyond 2e7 multisets.
SectorMap enumerate_multisets(std::span<const Quasiparticle> candidates, double kappa,
                              const std::function<bool(const IntVec&)>& keep);

/// Complete Bogoliubov spectrum below kappa for total momenta |p| <= window.
SpectrumTable enumerate_below(const LatticeSpec& lattice, const Potential& pot, double kappa, double window);

/// K_Bog^j(p). Empty when fewer than j levels are resolved below kappa;
/// throws OutOfWindowError when p lies outside the table window.
std::optional<double> kth_excitation(const SpectrumTable& table, const IntVec& p, int j);

enum class QuasiClass { one = 1, two = 2, many = 3 };

struct FigureRow {
    IntVec n;
    double momentum_norm = 0.0; // signed momentum in d = 1, |p| otherwise
    double energy = 0.0;
    int n_quasi = 0;
    QuasiClass cls = QuasiClass::one;
};

/// One row per record; class is n_quasi clamped to 3.
std::vector<FigureRow> classify_for_figure(const SpectrumTable& table);

enum class Stability { stable, unstable, undetermined };

struct DampingRow {
    IntVec n;
    double e_p = 0.0;
    std::optional<double> min_multi; // lowest energy with n_quasi >= 2 in this sector
    Stability status = Stability::undetermined;
};

/// Beliaev-damping scan over the nonzero sectors of the table.
std::vector<DampingRow> damping_scan(const SpectrumTable& table);

/// Sectors whose elementary excitation lies above kappa, i.e. whose
/// single-quasiparticle level the table does not resolve.
std::vector<IntVec> unresolved_sectors(const SpectrumTable& table);

struct OracleLevel {
    double energy = 0.0;
    std::vector<IntVec> constituents;
};

/// Brute-force reference for a single sector: plain recursion over all
/// canonical multisets. Refuses instances with more than 8 constituents or
/// constituents beyond |n_i| = 5.
std::vector<OracleLevel> oracle_enumerate(const LatticeSpec& lattice, const Potential& pot, double kappa,
                                          const IntVec& p);

/// CSV: n1[,n2,n3],j,energy,n_quasi,constituents
void write_spectrum_csv(std::ostream& os, const SpectrumTable& table);

std::string format_constituents(const std::vector<IntVec>& constituents);

} // namespace bogospec
