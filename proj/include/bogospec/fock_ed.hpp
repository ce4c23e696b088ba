#pragma once

#include "bogospec/eigensolver.hpp"
#include "bogospec/model.hpp"

#include <Eigen/Sparse>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bogospec {

/// Truncated N-particle problem: modes are the lattice points with
/// |p| <= mode_radius (the zero mode is always present), and at most
/// max_excited particles sit outside the zero mode.
struct EDConfig {
    int N = 1;
    LatticeSpec lattice;
    Potential pot = Potential::none(1);
    double mode_radius = 1.0;
    std::optional<int> max_excited; // empty: no cap beyond N
    std::size_t sector_cap = 2'000'000;

    void validate() const;
    int excited_cap() const { return max_excited ? std::min(*max_excited, N) : N; }
    double density() const { return N / lattice.volume(); }
    double coupling() const { return lattice.volume() / N; }
};

/// max_excited used when a configuration leaves it unset: min(N, 8).
int default_max_excited(int N);

/// Ordered single-particle modes with O(1) lookup by lattice vector.
class ModeSet {
public:
    ModeSet() = default;
    ModeSet(const LatticeSpec& lattice, double radius);
    /// Explicit modes; must not repeat. The zero mode is optional here.
    ModeSet(std::vector<Momentum> modes, double spacing);

    std::size_t size() const noexcept { return modes_.size(); }
    const Momentum& operator[](std::size_t i) const { return modes_[i]; }
    const std::vector<Momentum>& modes() const noexcept { return modes_; }
    std::optional<std::size_t> find(const IntVec& n) const;
    std::optional<std::size_t> zero_index() const noexcept { return zero_; }
    std::vector<Momentum> excited() const;
    double spacing() const noexcept { return spacing_; }

private:
    std::vector<Momentum> modes_;
    std::unordered_map<IntVec, std::size_t> index_;
    std::optional<std::size_t> zero_;
    double spacing_ = 1.0;
};

/// Occupation-number basis vector over a ModeSet, stored as a fixed-width
/// tuple. Ordering is lexicographic in the occupations.
class FockState {
public:
    FockState() = default;
    explicit FockState(std::u16string occupations) : occ_(std::move(occupations)) {}

    std::size_t n_modes() const noexcept { return occ_.size(); }
    int occupation(std::size_t mode) const { return occ_[mode]; }
    int total() const noexcept;
    IntVec momentum(const ModeSet& modes) const;
    const std::u16string& key() const noexcept { return occ_; }

    auto operator<=>(const FockState&) const = default;

private:
    std::u16string occ_;
};

/// Basis of one total-momentum sector.
struct SectorBasis {
    IntVec momentum;
    std::vector<FockState> states;
    std::unordered_map<std::u16string, std::size_t> index;

    std::size_t size() const noexcept { return states.size(); }
    std::optional<std::size_t> find(const std::u16string& key) const;
};

using SectorBasisPtr = std::shared_ptr<const SectorBasis>;

struct FockBasis {
    ModeSet modes;
    int N = 0;
    int max_excited = 0;
    std::map<IntVec, SectorBasisPtr> sectors;

    std::size_t total_size() const;
    const SectorBasis& sector(const IntVec& p) const;
};

/// All occupation vectors with sum N and at most max_excited excited
/// particles, grouped by total momentum, each sector sorted.
FockBasis build_basis(const EDConfig& cfg);

enum class OperatorKind { hamiltonian, estimating_upper, estimating_lower, bogoliubov, kinetic, excited_number };

std::string to_string(OperatorKind kind);

struct SectorMatrix {
    IntVec sector;
    SectorBasisPtr basis;
    Eigen::SparseMatrix<double> matrix;
    OperatorKind kind = OperatorKind::hamiltonian;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    double max_abs_entry() const;
    double max_asymmetry() const;
};

/// Configuration, basis and cached vhat(r - p) for every mode pair.
class FockSpace {
public:
    explicit FockSpace(EDConfig cfg);

    const EDConfig& config() const noexcept { return cfg_; }
    const FockBasis& basis() const noexcept { return basis_; }
    const ModeSet& modes() const noexcept { return basis_.modes; }
    std::size_t zero() const { return *basis_.modes.zero_index(); }
    double vhat_between(std::size_t to, std::size_t from) const { return transfer_[to * modes().size() + from]; }
    double vhat_of(std::size_t mode) const { return vhat_mode_[mode]; }
    /// Periodized potential at the origin on the full lattice.
    double v_origin() const noexcept { return v_origin_; }
    bool has_sector(const IntVec& p) const { return basis_.sectors.contains(p); }

private:
    EDConfig cfg_;
    FockBasis basis_;
    std::vector<double> transfer_;
    std::vector<double> vhat_mode_;
    double v_origin_ = 0.0;
};

/// H_N = sum |p|^2 a_p^+ a_p + (1/2N) sum vhat(k) a_{p+k}^+ a_{q-k}^+ a_q a_p
/// compressed to the truncated sector basis.
SectorMatrix assemble_hamiltonian(const FockSpace& space, const IntVec& sector);

enum class Bound { upper, lower };

/// Term weights for the estimating Hamiltonians. Only mutation tests
/// change these.
struct EstimatingOptions {
    double pairing_scale = 1.0;
};

/// H_{N,+eps} (Bound::upper, eps > 0) or H_{N,-eps} (Bound::lower,
/// 0 < eps <= 1), compressed to the sector basis. The upper one dominates
/// H_N and the lower one is dominated by it.
SectorMatrix assemble_estimating(const FockSpace& space, const IntVec& sector, double eps, Bound bound,
                                 const EstimatingOptions& opts = {});

SectorMatrix assemble_kinetic(const FockSpace& space, const IntVec& sector);
SectorMatrix assemble_excited_number(const FockSpace& space, const IntVec& sector);

/// Quadratic Bogoliubov Hamiltonian
///   sum (|p|^2 + vhat(p)) a_p^+ a_p + 1/2 sum vhat(p) (a_p a_{-p} + h.c.)
/// on the modes given (closed under p -> -p, no zero mode), with at most
/// max_occupation quanta per mode, restricted to total momentum `sector`.
SectorMatrix assemble_bogoliubov_quadratic(std::span<const Momentum> modes, const Potential& pot,
                                           int max_occupation, const IntVec& sector,
                                           std::size_t basis_cap = 2'000'000);

EigenResult lowest_eigenvalues(const SectorMatrix& m, const EigenOptions& opts);

struct SectorSpectrum {
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    std::vector<double> gaps; // K_N^j(p), j = 1, 2, ...
    bool dense = false;
};

struct ManyBodySpectrum {
    double ground_energy = 0.0;
    IntVec ground_sector;
    std::uint64_t seed = 0;
    std::map<IntVec, SectorSpectrum> sectors;
};

/// Lowest `count` excitation energies K_N^j(p) for each requested sector.
/// Sector 0 must be included; it hosts the ground state, which is skipped
/// in its gap list. Sectors absent from the truncated basis are reported
/// empty. Throws InvariantError if a nonzero sector lies below sector 0.
ManyBodySpectrum many_body_excitations(const FockSpace& space, std::span<const IntVec> sectors, std::size_t count,
                                       EigenOptions opts = {});

/// Worker count for sector-parallel loops: BOGOSPEC_THREADS if set, else
/// the hardware concurrency.
unsigned worker_count();

/// CSV: sector_n1[,n2,n3],j,eigenvalue,K_N,residual
void write_ed_csv(std::ostream& os, const ManyBodySpectrum& spec, int dim);

} // namespace bogospec
