#include "bogospec/excitations.hpp"

#include "bogospec/bogoliubov.hpp"
#include "bogospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <queue>
#include <sstream>

namespace bogospec {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kNodeBudget = 20'000'000;

bool within(const IntVec& n, double spacing, double radius)
{
    const double p2 = spacing * spacing * static_cast<double>(n.norm2());
    return p2 <= radius * radius * (1.0 + 1e-12);
}

struct Node {
    double energy;
    std::vector<std::uint32_t> seq; // nondecreasing candidate indices
    IntVec total;
};

// Min-heap order: energy, then multiset size, then canonical sequence.
struct LaterFirst {
    bool operator()(const Node& a, const Node& b) const
    {
        if (a.energy != b.energy)
            return a.energy > b.energy;
        if (a.seq.size() != b.seq.size())
            return a.seq.size() > b.seq.size();
        return a.seq > b.seq;
    }
};

bool canonical_less(const ExcitationRecord& a, const ExcitationRecord& b)
{
    if (a.n_quasi() != b.n_quasi())
        return a.n_quasi() < b.n_quasi();
    return a.constituents < b.constituents;
}

// Groups levels closer than kTieTolerance, orders each group by
// (n_quasi, canonical multiset) and assigns consecutive ranks.
void assign_ranks(std::vector<ExcitationRecord>& recs)
{
    std::stable_sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
        if (a.energy != b.energy)
            return a.energy < b.energy;
        return canonical_less(a, b);
    });
    std::size_t g = 0;
    while (g < recs.size()) {
        std::size_t end = g + 1;
        while (end < recs.size() && recs[end].energy - recs[g].energy <= kTieTolerance)
            ++end;
        std::sort(recs.begin() + static_cast<long>(g), recs.begin() + static_cast<long>(end), canonical_less);
        g = end;
    }
    for (std::size_t i = 0; i < recs.size(); ++i)
        recs[i].rank = static_cast<int>(i) + 1;
}

void check_kappa(double kappa)
{
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw DomainError("kappa must be finite and >= 0");
}

} // namespace

bool SpectrumTable::in_window(const IntVec& n) const
{
    return n.dim() == lattice.dim && within(n, lattice.spacing(), window);
}

SectorMap enumerate_multisets(std::span<const Quasiparticle> candidates_in, double kappa,
                              const std::function<bool(const IntVec&)>& keep)
{
    check_kappa(kappa);
    std::vector<Quasiparticle> cand(candidates_in.begin(), candidates_in.end());
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    for (const auto& c : cand)
        if (!(c.energy > 0.0))
            throw DomainError("quasiparticle energies must be positive, got " + std::to_string(c.energy) +
                              " at " + c.n.str());

    SectorMap out;
    std::priority_queue<Node, std::vector<Node>, LaterFirst> frontier;
    for (std::uint32_t i = 0; i < cand.size(); ++i)
        if (cand[i].energy <= kappa)
            frontier.push(Node{cand[i].energy, {i}, cand[i].n});

    std::size_t visited = 0;
    while (!frontier.empty()) {
        if (++visited > kNodeBudget)
            throw SizeError("more than 2e7 multisets lie below kappa = " + std::to_string(kappa) +
                            "; lower kappa or the window");
        Node node = frontier.top();
        frontier.pop();

        // Children extend with candidates >= the last one so each multiset
        // has exactly one generating sequence.
        for (std::uint32_t i = node.seq.back(); i < cand.size(); ++i) {
            const double e = node.energy + cand[i].energy;
            if (e > kappa)
                continue;
            Node child{e, node.seq, node.total + cand[i].n};
            child.seq.push_back(i);
            frontier.push(std::move(child));
        }

        if (!keep(node.total))
            continue;
        ExcitationRecord rec;
        rec.total = node.total;
        rec.energy = node.energy;
        rec.constituents.reserve(node.seq.size());
        for (std::uint32_t i : node.seq)
            rec.constituents.push_back(cand[i].n);
        out[node.total].push_back(std::move(rec));
    }
    for (auto& [_, recs] : out)
        assign_ranks(recs);
    return out;
}

SpectrumTable enumerate_below(const LatticeSpec& lattice, const Potential& pot, double kappa, double window)
{
    lattice.validate();
    check_kappa(kappa);
    if (!(window >= 0.0))
        throw DomainError("momentum window must be >= 0");
    if (pot.dim() != lattice.dim)
        throw DomainError("potential dimension does not match lattice");

    SpectrumTable table;
    table.lattice = lattice;
    table.pot = pot;
    table.kappa = kappa;
    table.window = window;
    for (const Momentum& p : lattice_points(lattice, window, true))
        table.sectors[p.n];

    // dispersion(k) >= |k|^2, so no constituent lies beyond sqrt(kappa).
    std::vector<Quasiparticle> cand;
    for (const Momentum& k : lattice_points(lattice, std::sqrt(kappa), false)) {
        const double e = dispersion(k, pot);
        if (e <= kappa)
            cand.push_back({k.n, e});
    }
    SectorMap found = enumerate_multisets(cand, kappa, [&](const IntVec& n) { return table.in_window(n); });
    for (auto& [n, recs] : found)
        table.sectors[n] = std::move(recs);
    return table;
}

std::optional<double> kth_excitation(const SpectrumTable& table, const IntVec& p, int j)
{
    if (j < 1)
        throw DomainError("rank j must be >= 1");
    if (!table.in_window(p))
        throw OutOfWindowError("sector " + p.str() + " lies outside the enumerated momentum window");
    auto it = table.sectors.find(p);
    if (it == table.sectors.end() || static_cast<std::size_t>(j) > it->second.size())
        return std::nullopt;
    return it->second[static_cast<std::size_t>(j - 1)].energy;
}

std::vector<FigureRow> classify_for_figure(const SpectrumTable& table)
{
    std::vector<FigureRow> rows;
    const double h = table.lattice.spacing();
    for (const auto& [n, recs] : table.sectors) {
        const Momentum p(n, h);
        const double coord = n.dim() == 1 ? h * n[0] : p.norm();
        for (const auto& r : recs) {
            FigureRow row;
            row.n = n;
            row.momentum_norm = coord;
            row.energy = r.energy;
            row.n_quasi = r.n_quasi();
            row.cls = static_cast<QuasiClass>(std::min(r.n_quasi(), 3));
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<DampingRow> damping_scan(const SpectrumTable& table)
{
    std::vector<DampingRow> rows;
    const double h = table.lattice.spacing();
    for (const auto& [n, recs] : table.sectors) {
        if (n.is_zero())
            continue;
        DampingRow row;
        row.n = n;
        row.e_p = dispersion(Momentum(n, h), table.pot);
        for (const auto& r : recs)
            if (r.n_quasi() >= 2 && (!row.min_multi || r.energy < *row.min_multi))
                row.min_multi = r.energy;
        if (row.min_multi && *row.min_multi < row.e_p - kTieTolerance * std::max(1.0, row.e_p))
            row.status = Stability::unstable;
        else if (table.kappa >= row.e_p)
            row.status = Stability::stable;
        else
            row.status = Stability::undetermined;
        rows.push_back(row);
    }
    return rows;
}

std::vector<IntVec> unresolved_sectors(const SpectrumTable& table)
{
    std::vector<IntVec> out;
    const double h = table.lattice.spacing();
    for (const auto& [n, _] : table.sectors)
        if (!n.is_zero() && dispersion(Momentum(n, h), table.pot) > table.kappa)
            out.push_back(n);
    return out;
}

std::vector<OracleLevel> oracle_enumerate(const LatticeSpec& lattice, const Potential& pot, double kappa,
                                          const IntVec& p)
{
    lattice.validate();
    check_kappa(kappa);
    constexpr int kBox = 5;
    constexpr int kMaxConstituents = 8;
    const double h = lattice.spacing();
    if ((kBox + 1) * h * (kBox + 1) * h <= kappa)
        throw SizeError("oracle refuses: constituents beyond |n_i| = 5 fall below kappa");

    // Plain scan of the integer box, lexicographic order.
    std::vector<Quasiparticle> cand;
    const int d = lattice.dim;
    IntVec n(d);
    const int total = static_cast<int>(std::pow(2 * kBox + 1, d));
    for (int idx = 0; idx < total; ++idx) {
        int rem = idx;
        for (int i = d - 1; i >= 0; --i) {
            n[i] = rem % (2 * kBox + 1) - kBox;
            rem /= 2 * kBox + 1;
        }
        if (n.is_zero())
            continue;
        const double e = dispersion(Momentum(n, h), pot);
        if (e <= kappa)
            cand.push_back({n, e});
    }
    if (cand.empty())
        return {};
    double e_min = cand.front().energy;
    for (const auto& c : cand)
        e_min = std::min(e_min, c.energy);
    if (std::floor(kappa / e_min) > kMaxConstituents)
        throw SizeError("oracle refuses: more than 8 constituents fit below kappa");

    std::vector<OracleLevel> out;
    std::vector<std::size_t> seq;
    std::function<void(std::size_t, IntVec, double)> rec = [&](std::size_t start, IntVec sum, double energy) {
        for (std::size_t i = start; i < cand.size(); ++i) {
            const double e = energy + cand[i].energy;
            if (e > kappa)
                continue;
            seq.push_back(i);
            const IntVec s = sum + cand[i].n;
            if (s == p) {
                OracleLevel lvl;
                lvl.energy = e;
                for (std::size_t k : seq)
                    lvl.constituents.push_back(cand[k].n);
                out.push_back(std::move(lvl));
            }
            rec(i, s, e);
            seq.pop_back();
        }
    };
    rec(0, IntVec(d), 0.0);
    std::sort(out.begin(), out.end(), [](const OracleLevel& a, const OracleLevel& b) {
        if (a.energy != b.energy)
            return a.energy < b.energy;
        if (a.constituents.size() != b.constituents.size())
            return a.constituents.size() < b.constituents.size();
        return a.constituents < b.constituents;
    });
    return out;
}

std::string format_constituents(const std::vector<IntVec>& constituents)
{
    std::ostringstream os;
    for (std::size_t k = 0; k < constituents.size(); ++k) {
        if (k)
            os << ';';
        const IntVec& v = constituents[k];
        for (int i = 0; i < v.dim(); ++i)
            os << (i ? ":" : "") << v[i];
    }
    return os.str();
}

void write_spectrum_csv(std::ostream& os, const SpectrumTable& table)
{
    const int d = table.lattice.dim;
    for (int i = 1; i <= d; ++i)
        os << 'n' << i << ',';
    os << "j,energy,n_quasi,constituents\n";
    const auto old_precision = os.precision(17);
    for (const auto& [n, recs] : table.sectors)
        for (const auto& r : recs) {
            for (int i = 0; i < d; ++i)
                os << n[i] << ',';
            os << r.rank << ',' << r.energy << ',' << r.n_quasi() << ',' << format_constituents(r.constituents)
               << '\n';
        }
    os.precision(old_precision);
}

} // namespace bogospec
