#include "bogospec/fock_ed.hpp"

#include "bogospec/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>

namespace bogospec {

namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::SparseMatrix<double> from_triplets(std::size_t dim, const std::vector<Triplet>& t)
{
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

// Walks every occupation vector over `excited` modes with at most `budget`
// quanta in total, in lexicographic order of the mode list.
void for_each_occupation(std::size_t n_modes, const std::vector<std::size_t>& excited, int budget,
                         const std::function<void(std::u16string&, int)>& visit)
{
    std::u16string occ(n_modes, u'\0');
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
        if (k == excited.size()) {
            visit(occ, budget - left);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            occ[excited[k]] = static_cast<char16_t>(c);
            rec(k + 1, left - c);
        }
        occ[excited[k]] = u'\0';
    };
    rec(0, budget);
}

IntVec occupation_momentum(const std::u16string& occ, const ModeSet& modes, int dim)
{
    IntVec total(dim);
    for (std::size_t i = 0; i < occ.size(); ++i)
        for (int k = 0; k < dim; ++k)
            total[k] += static_cast<int>(occ[i]) * modes[i].n[k];
    return total;
}

std::map<IntVec, std::size_t> sector_sizes(const ModeSet& modes, const std::vector<std::size_t>& excited, int N,
                                           int max_excited, int dim, std::size_t cap, bool& exceeded)
{
    std::map<IntVec, std::size_t> sizes;
    exceeded = false;
    for_each_occupation(modes.size(), excited, std::min(max_excited, N), [&](std::u16string& occ, int) {
        if (exceeded)
            return;
        if (++sizes[occupation_momentum(occ, modes, dim)] > cap)
            exceeded = true;
    });
    return sizes;
}

void require_sector(const FockSpace& space, const IntVec& sector)
{
    if (!space.has_sector(sector))
        throw DomainError("sector " + sector.str() + " is empty in the truncated basis");
}

SectorMatrix make_matrix(const SectorBasisPtr& basis, OperatorKind kind, const std::vector<Triplet>& t)
{
    SectorMatrix out;
    out.sector = basis->momentum;
    out.basis = basis;
    out.kind = kind;
    out.matrix = from_triplets(basis->size(), t);
    return out;
}

} // namespace

void EDConfig::validate() const
{
    lattice.validate();
    if (N < 1)
        throw DomainError("particle number N must be >= 1");
    if (N > 60000)
        throw DomainError("particle number N exceeds the occupation width");
    if (pot.dim() != lattice.dim)
        throw DomainError("potential dimension does not match lattice");
    if (!(mode_radius >= 0.0))
        throw DomainError("mode_radius must be >= 0");
    if (max_excited && *max_excited < 0)
        throw DomainError("max_excited must be >= 0");
}

int default_max_excited(int N)
{
    return std::min(N, 8);
}

ModeSet::ModeSet(const LatticeSpec& lattice, double radius)
    : ModeSet(lattice_points(lattice, radius, true), lattice.spacing())
{
}

ModeSet::ModeSet(std::vector<Momentum> modes, double spacing) : modes_(std::move(modes)), spacing_(spacing)
{
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (!index_.emplace(modes_[i].n, i).second)
            throw DomainError("mode " + modes_[i].n.str() + " listed twice");
        if (modes_[i].is_zero())
            zero_ = i;
    }
}

std::optional<std::size_t> ModeSet::find(const IntVec& n) const
{
    auto it = index_.find(n);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<Momentum> ModeSet::excited() const
{
    std::vector<Momentum> out;
    for (const auto& m : modes_)
        if (!m.is_zero())
            out.push_back(m);
    return out;
}

int FockState::total() const noexcept
{
    int s = 0;
    for (char16_t c : occ_)
        s += c;
    return s;
}

IntVec FockState::momentum(const ModeSet& modes) const
{
    return occupation_momentum(occ_, modes, modes.size() ? modes[0].n.dim() : 1);
}

std::optional<std::size_t> SectorBasis::find(const std::u16string& key) const
{
    auto it = index.find(key);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

std::size_t FockBasis::total_size() const
{
    std::size_t s = 0;
    for (const auto& [_, b] : sectors)
        s += b->size();
    return s;
}

const SectorBasis& FockBasis::sector(const IntVec& p) const
{
    auto it = sectors.find(p);
    if (it == sectors.end())
        throw DomainError("sector " + p.str() + " is empty in the truncated basis");
    return *it->second;
}

FockBasis build_basis(const EDConfig& cfg)
{
    cfg.validate();
    FockBasis basis;
    basis.modes = ModeSet(cfg.lattice, cfg.mode_radius);
    basis.N = cfg.N;
    basis.max_excited = cfg.excited_cap();
    const std::size_t zero = *basis.modes.zero_index();
    std::vector<std::size_t> excited;
    for (std::size_t i = 0; i < basis.modes.size(); ++i)
        if (i != zero)
            excited.push_back(i);

    const int dim = cfg.lattice.dim;
    bool exceeded = false;
    auto sizes = sector_sizes(basis.modes, excited, cfg.N, basis.max_excited, dim, cfg.sector_cap, exceeded);
    if (exceeded) {
        int suggestion = basis.max_excited - 1;
        for (; suggestion > 0; --suggestion) {
            bool over = false;
            sector_sizes(basis.modes, excited, cfg.N, suggestion, dim, cfg.sector_cap, over);
            if (!over)
                break;
        }
        IntVec worst;
        for (const auto& [p, n] : sizes)
            if (n > cfg.sector_cap)
                worst = p;
        throw SizeError("sector " + worst.str() + " exceeds the basis cap of " + std::to_string(cfg.sector_cap) +
                        " states; try max_excited = " + std::to_string(std::max(suggestion, 0)));
    }

    std::map<IntVec, std::shared_ptr<SectorBasis>> building;
    for (const auto& [p, n] : sizes) {
        auto sb = std::make_shared<SectorBasis>();
        sb->momentum = p;
        sb->states.reserve(n);
        building.emplace(p, std::move(sb));
    }
    for_each_occupation(basis.modes.size(), excited, basis.max_excited, [&](std::u16string& occ, int n_excited) {
        if (n_excited > cfg.N)
            return;
        std::u16string full = occ;
        full[zero] = static_cast<char16_t>(cfg.N - n_excited);
        building[occupation_momentum(full, basis.modes, dim)]->states.emplace_back(std::move(full));
    });
    for (auto& [p, sb] : building) {
        std::sort(sb->states.begin(), sb->states.end());
        for (std::size_t i = 0; i < sb->states.size(); ++i)
            sb->index.emplace(sb->states[i].key(), i);
        basis.sectors.emplace(p, std::move(sb));
    }
    return basis;
}

std::string to_string(OperatorKind kind)
{
    switch (kind) {
    case OperatorKind::hamiltonian: return "H_N";
    case OperatorKind::estimating_upper: return "H_N,+eps";
    case OperatorKind::estimating_lower: return "H_N,-eps";
    case OperatorKind::bogoliubov: return "H_Bog";
    case OperatorKind::kinetic: return "T";
    case OperatorKind::excited_number: return "N_exc";
    }
    return "?";
}

double SectorMatrix::max_abs_entry() const
{
    double m = 0.0;
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

double SectorMatrix::max_asymmetry() const
{
    const Eigen::SparseMatrix<double> diff = matrix - Eigen::SparseMatrix<double>(matrix.transpose());
    double m = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

FockSpace::FockSpace(EDConfig cfg) : cfg_(std::move(cfg)), basis_(build_basis(cfg_))
{
    const ModeSet& ms = basis_.modes;
    const std::size_t M = ms.size();
    transfer_.resize(M * M);
    vhat_mode_.resize(M);
    for (std::size_t to = 0; to < M; ++to) {
        vhat_mode_[to] = fourier_at(cfg_.pot, ms[to]);
        for (std::size_t from = 0; from < M; ++from)
            transfer_[to * M + from] = fourier_at(cfg_.pot, Momentum(ms[to].n - ms[from].n, ms.spacing()));
    }
    if (cfg_.pot.tail_boundable()) {
        std::vector<double> origin(static_cast<std::size_t>(cfg_.lattice.dim), 0.0);
        const double tol = 1e-12 * std::max(1.0, std::abs(cfg_.pot.amplitude()));
        v_origin_ = periodized_value(cfg_.pot, cfg_.lattice, origin, tol);
    } else {
        v_origin_ = std::nan("");
    }
}

SectorMatrix assemble_hamiltonian(const FockSpace& space, const IntVec& sector)
{
    require_sector(space, sector);
    const auto& basis_ptr = space.basis().sectors.at(sector);
    const SectorBasis& basis = *basis_ptr;
    const ModeSet& modes = space.modes();
    const std::size_t M = modes.size();
    const std::size_t zero = space.zero();
    const int N = space.config().N;
    const int cap = space.basis().max_excited;
    const double coupling = 1.0 / (2.0 * N);

    std::vector<Triplet> t;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        std::u16string occ = basis.states[j].key();
        double kinetic = 0.0;
        for (std::size_t m = 0; m < M; ++m)
            kinetic += modes[m].norm2() * occ[m];
        t.emplace_back(static_cast<int>(j), static_cast<int>(j), kinetic);

        // a_{p+k}^+ a_{q-k}^+ a_q a_p with r = p + k, s = q - k.
        for (std::size_t p = 0; p < M; ++p) {
            if (occ[p] == 0)
                continue;
            const double amp_p = std::sqrt(static_cast<double>(occ[p]));
            --occ[p];
            for (std::size_t q = 0; q < M; ++q) {
                if (occ[q] == 0)
                    continue;
                const double amp_q = amp_p * std::sqrt(static_cast<double>(occ[q]));
                --occ[q];
                const IntVec pair = modes[p].n + modes[q].n;
                for (std::size_t r = 0; r < M; ++r) {
                    const auto s = modes.find(pair - modes[r].n);
                    if (!s)
                        continue;
                    ++occ[*s];
                    const double amp_s = amp_q * std::sqrt(static_cast<double>(occ[*s]));
                    ++occ[r];
                    const double amp = amp_s * std::sqrt(static_cast<double>(occ[r]));
                    if (N - occ[zero] <= cap)
                        if (auto i = basis.find(occ))
                            t.emplace_back(static_cast<int>(*i), static_cast<int>(j),
                                           coupling * space.vhat_between(r, p) * amp);
                    --occ[r];
                    --occ[*s];
                }
                ++occ[q];
            }
            ++occ[p];
        }
    }
    return make_matrix(basis_ptr, OperatorKind::hamiltonian, t);
}

SectorMatrix assemble_estimating(const FockSpace& space, const IntVec& sector, double eps, Bound bound,
                                 const EstimatingOptions& opts)
{
    if (bound == Bound::upper && !(eps > 0.0))
        throw DomainError("upper estimating Hamiltonian needs eps > 0");
    if (bound == Bound::lower && !(eps > 0.0 && eps <= 1.0))
        throw DomainError("lower estimating Hamiltonian needs 0 < eps <= 1");
    const double v0 = space.v_origin();
    if (std::isnan(v0))
        throw TailBoundError("periodized v(0) unavailable for this potential");
    require_sector(space, sector);

    const auto& basis_ptr = space.basis().sectors.at(sector);
    const SectorBasis& basis = *basis_ptr;
    const ModeSet& modes = space.modes();
    const std::size_t M = modes.size();
    const std::size_t zero = space.zero();
    const int N = space.config().N;
    const int cap = space.basis().max_excited;
    const double vhat0 = space.vhat_of(zero);
    const double signed_eps = bound == Bound::upper ? eps : -eps;
    const double volume = space.config().lattice.volume();

    std::vector<std::optional<std::size_t>> partner(M);
    for (std::size_t m = 0; m < M; ++m)
        partner[m] = modes.find(-modes[m].n);

    std::vector<Triplet> t;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        std::u16string occ = basis.states[j].key();
        const double n0 = occ[zero];
        const double nexc = N - n0;

        double one_body = 0.0, depletion = 0.0, condensate = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            if (m == zero || occ[m] == 0)
                continue;
            const double n = occ[m];
            const double v = space.vhat_of(m);
            one_body += (modes[m].norm2() + v) * n;
            depletion += (v + 0.5 * vhat0) * n;
            condensate += (v + vhat0) * n;
        }
        const double diag = 0.5 * vhat0 * (N - 1) + one_body - depletion * nexc / N + vhat0 * nexc / (2.0 * N) +
                            signed_eps * condensate * n0 / N +
                            (1.0 + 1.0 / signed_eps) * v0 * volume * nexc * (nexc - 1.0) / (2.0 * N);
        t.emplace_back(static_cast<int>(j), static_cast<int>(j), diag);

        const double pair_coeff = opts.pairing_scale / (2.0 * N);
        for (std::size_t p = 0; p < M; ++p) {
            if (p == zero || !partner[p])
                continue;
            const std::size_t mp = *partner[p];
            const double v = space.vhat_of(p);
            // a_0^+ a_0^+ a_p a_{-p}
            if (occ[mp] > 0) {
                double amp = std::sqrt(static_cast<double>(occ[mp]));
                --occ[mp];
                if (occ[p] > 0) {
                    amp *= std::sqrt(static_cast<double>(occ[p]));
                    --occ[p];
                    amp *= std::sqrt((occ[zero] + 1.0) * (occ[zero] + 2.0));
                    occ[zero] += 2;
                    if (auto i = basis.find(occ))
                        t.emplace_back(static_cast<int>(*i), static_cast<int>(j), pair_coeff * v * amp);
                    occ[zero] -= 2;
                    ++occ[p];
                }
                ++occ[mp];
            }
            // a_p^+ a_{-p}^+ a_0 a_0
            if (occ[zero] >= 2) {
                double amp = std::sqrt(occ[zero] * (occ[zero] - 1.0));
                occ[zero] -= 2;
                ++occ[mp];
                amp *= std::sqrt(static_cast<double>(occ[mp]));
                ++occ[p];
                amp *= std::sqrt(static_cast<double>(occ[p]));
                if (N - occ[zero] <= cap)
                    if (auto i = basis.find(occ))
                        t.emplace_back(static_cast<int>(*i), static_cast<int>(j), pair_coeff * v * amp);
                --occ[p];
                --occ[mp];
                occ[zero] += 2;
            }
        }
    }
    return make_matrix(basis_ptr, bound == Bound::upper ? OperatorKind::estimating_upper
                                                        : OperatorKind::estimating_lower,
                       t);
}

SectorMatrix assemble_kinetic(const FockSpace& space, const IntVec& sector)
{
    require_sector(space, sector);
    const auto& basis_ptr = space.basis().sectors.at(sector);
    std::vector<Triplet> t;
    for (std::size_t j = 0; j < basis_ptr->size(); ++j) {
        double kin = 0.0;
        for (std::size_t m = 0; m < space.modes().size(); ++m)
            kin += space.modes()[m].norm2() * basis_ptr->states[j].occupation(m);
        t.emplace_back(static_cast<int>(j), static_cast<int>(j), kin);
    }
    return make_matrix(basis_ptr, OperatorKind::kinetic, t);
}

SectorMatrix assemble_excited_number(const FockSpace& space, const IntVec& sector)
{
    require_sector(space, sector);
    const auto& basis_ptr = space.basis().sectors.at(sector);
    const int N = space.config().N;
    std::vector<Triplet> t;
    for (std::size_t j = 0; j < basis_ptr->size(); ++j)
        t.emplace_back(static_cast<int>(j), static_cast<int>(j),
                       static_cast<double>(N - basis_ptr->states[j].occupation(space.zero())));
    return make_matrix(basis_ptr, OperatorKind::excited_number, t);
}

SectorMatrix assemble_bogoliubov_quadratic(std::span<const Momentum> modes_in, const Potential& pot,
                                           int max_occupation, const IntVec& sector, std::size_t basis_cap)
{
    if (modes_in.size() % 2 != 0)
        throw DomainError("quadratic Hamiltonian needs modes in +/- pairs; got an odd mode list");
    if (max_occupation < 0)
        throw DomainError("max_occupation must be >= 0");
    if (modes_in.empty())
        throw DomainError("quadratic Hamiltonian needs at least one mode pair");
    std::vector<Momentum> sorted(modes_in.begin(), modes_in.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    const ModeSet modes(sorted, sorted.front().spacing);
    const std::size_t M = modes.size();
    if (modes.zero_index())
        throw DomainError("the zero mode is not part of the quadratic Hamiltonian");
    std::vector<std::size_t> partner(M);
    for (std::size_t m = 0; m < M; ++m) {
        auto mp = modes.find(-modes[m].n);
        if (!mp)
            throw DomainError("mode list is not closed under p -> -p: missing " + (-modes[m].n).str());
        partner[m] = *mp;
    }
    const int dim = modes[0].n.dim();

    auto basis = std::make_shared<SectorBasis>();
    basis->momentum = sector;
    std::u16string occ(M, u'\0');
    std::size_t visited = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (++visited > 50 * basis_cap)
            throw SizeError("quadratic Hamiltonian basis enumeration exceeds the cap");
        if (k == M) {
            if (occupation_momentum(occ, modes, dim) == sector) {
                if (basis->states.size() >= basis_cap)
                    throw SizeError("quadratic Hamiltonian basis exceeds the cap");
                basis->states.emplace_back(occ);
            }
            return;
        }
        for (int c = 0; c <= max_occupation; ++c) {
            occ[k] = static_cast<char16_t>(c);
            rec(k + 1);
        }
        occ[k] = u'\0';
    };
    rec(0);
    std::sort(basis->states.begin(), basis->states.end());
    for (std::size_t i = 0; i < basis->states.size(); ++i)
        basis->index.emplace(basis->states[i].key(), i);

    std::vector<double> vh(M), A(M);
    for (std::size_t m = 0; m < M; ++m) {
        vh[m] = fourier_at(pot, modes[m]);
        A[m] = modes[m].norm2() + vh[m];
    }

    std::vector<Triplet> t;
    for (std::size_t j = 0; j < basis->size(); ++j) {
        std::u16string o = basis->states[j].key();
        double diag = 0.0;
        for (std::size_t m = 0; m < M; ++m)
            diag += A[m] * o[m];
        t.emplace_back(static_cast<int>(j), static_cast<int>(j), diag);
        for (std::size_t p = 0; p < M; ++p) {
            const std::size_t mp = partner[p];
            const double coeff = 0.5 * vh[p];
            // a_p a_{-p}
            if (o[mp] > 0) {
                double amp = std::sqrt(static_cast<double>(o[mp]));
                --o[mp];
                if (o[p] > 0) {
                    amp *= std::sqrt(static_cast<double>(o[p]));
                    --o[p];
                    if (auto i = basis->find(o))
                        t.emplace_back(static_cast<int>(*i), static_cast<int>(j), coeff * amp);
                    ++o[p];
                }
                ++o[mp];
            }
            // a_p^+ a_{-p}^+
            if (o[mp] < max_occupation) {
                ++o[mp];
                double amp = std::sqrt(static_cast<double>(o[mp]));
                if (o[p] < max_occupation) {
                    ++o[p];
                    amp *= std::sqrt(static_cast<double>(o[p]));
                    if (auto i = basis->find(o))
                        t.emplace_back(static_cast<int>(*i), static_cast<int>(j), coeff * amp);
                    --o[p];
                }
                --o[mp];
            }
        }
    }
    return make_matrix(basis, OperatorKind::bogoliubov, t);
}

EigenResult lowest_eigenvalues(const SectorMatrix& m, const EigenOptions& opts)
{
    return lowest_eigenvalues(m.matrix, opts);
}

unsigned worker_count()
{
    if (const char* env = std::getenv("BOGOSPEC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ManyBodySpectrum many_body_excitations(const FockSpace& space, std::span<const IntVec> sectors_in,
                                       std::size_t count, EigenOptions opts)
{
    const int dim = space.config().lattice.dim;
    const IntVec origin(dim);
    std::set<IntVec> unique(sectors_in.begin(), sectors_in.end());
    if (!unique.contains(origin))
        throw DomainError("the zero-momentum sector must be among the requested sectors");
    for (const auto& s : unique)
        if (s.dim() != dim)
            throw DomainError("sector " + s.str() + " has the wrong dimension");
    const std::vector<IntVec> sectors(unique.begin(), unique.end());

    std::vector<SectorSpectrum> results(sectors.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < sectors.size(); i = next++) {
            const IntVec& p = sectors[i];
            if (!space.has_sector(p))
                continue;
            const SectorMatrix h = assemble_hamiltonian(space, p);
            EigenOptions o = opts;
            o.count = std::min(count + (p.is_zero() ? 1 : 0), h.dim());
            const EigenResult r = lowest_eigenvalues(h, o);
            results[i].eigenvalues = r.values;
            results[i].residuals = r.residuals;
            results[i].dense = r.dense;
        }
    };
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(sectors.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    ManyBodySpectrum out;
    out.seed = opts.seed;
    out.ground_sector = origin;
    std::size_t zero_slot = 0;
    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (sectors[i].is_zero())
            zero_slot = i;
    if (results[zero_slot].eigenvalues.empty())
        throw InvariantError("zero-momentum sector has no states");
    const double E = results[zero_slot].eigenvalues.front();
    const double tol = 1e-9 * std::max(1.0, std::abs(E));
    out.ground_energy = E;
    for (std::size_t i = 0; i < sectors.size(); ++i) {
        SectorSpectrum& s = results[i];
        if (!sectors[i].is_zero() && !s.eigenvalues.empty() && s.eigenvalues.front() < E - tol)
            throw InvariantError("ground state found in sector " + sectors[i].str() +
                                 " below sector 0; this signals a truncation artifact");
        for (std::size_t j = sectors[i].is_zero() ? 1 : 0; j < s.eigenvalues.size(); ++j) {
            const double K = s.eigenvalues[j] - E;
            if (K < -tol)
                throw InvariantError("negative excitation energy in sector " + sectors[i].str());
            s.gaps.push_back(K);
        }
        out.sectors.emplace(sectors[i], std::move(s));
    }
    return out;
}

void write_ed_csv(std::ostream& os, const ManyBodySpectrum& spec, int dim)
{
    for (int i = 1; i <= dim; ++i)
        os << "sector_n" << i << ',';
    os << "j,eigenvalue,K_N,residual\n";
    const auto old = os.precision(17);
    for (const auto& [p, s] : spec.sectors) {
        const std::size_t first = p.is_zero() ? 1 : 0;
        for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
            for (int i = 0; i < dim; ++i)
                os << p[i] << ',';
            // j = 0 marks the ground state in sector 0.
            const std::size_t j = k + 1 - first;
            const double K = s.eigenvalues[k] - spec.ground_energy;
            os << j << ',' << s.eigenvalues[k] << ',' << (p.is_zero() && k == 0 ? 0.0 : K) << ','
               << s.residuals[k] << '\n';
        }
    }
    os.precision(old);
}

} // namespace bogospec
