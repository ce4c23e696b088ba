#include <doctest.h>

#include "bogospec/bogoliubov.hpp"
#include "bogospec/errors.hpp"
#include "bogospec/excitations.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace bogospec;

namespace {

const Potential free1 = Potential::none(1);
const Potential v1 = Potential::gaussian(0.1, 5.0, 1);
const LatticeSpec unit{2.0 * kPi, 1};

std::vector<double> energies(const SpectrumTable& t, const IntVec& p)
{
    std::vector<double> out;
    for (const auto& r : t.sectors.at(p))
        out.push_back(r.energy);
    return out;
}

// Exact agreement with the brute-force oracle on every in-window sector.
void require_oracle_match(const SpectrumTable& t)
{
    for (const auto& [p, recs] : t.sectors) {
        const auto oracle = oracle_enumerate(t.lattice, t.pot, t.kappa, p);
        REQUIRE(oracle.size() == recs.size());
        std::multiset<std::pair<std::vector<IntVec>, double>> a, b;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            CHECK(std::abs(recs[i].energy - oracle[i].energy) <= 1e-12);
            a.emplace(recs[i].constituents, recs[i].energy);
            b.emplace(oracle[i].constituents, oracle[i].energy);
        }
        auto ia = a.begin();
        for (auto ib = b.begin(); ib != b.end(); ++ia, ++ib) {
            CHECK(ia->first == ib->first);
            CHECK(std::abs(ia->second - ib->second) <= 1e-12);
        }
    }
}

} // namespace

TEST_CASE("free-gas spectra")
{
    SUBCASE("sector 1 below 5.5")
    {
        const auto t = enumerate_below(unit, free1, 5.5, 3.0);
        CHECK(energies(t, IntVec{1}) == std::vector<double>{1, 3, 5, 5});
        const auto& recs = t.sectors.at(IntVec{1});
        CHECK(recs[0].constituents == std::vector<IntVec>{IntVec{1}});
        CHECK(recs[1].constituents == std::vector<IntVec>{IntVec{-1}, IntVec{1}, IntVec{1}});
        // Tie at 5: fewer quasiparticles first.
        CHECK(recs[2].constituents == std::vector<IntVec>{IntVec{-1}, IntVec{2}});
        CHECK(recs[3].n_quasi() == 5);
        CHECK(recs[2].rank == 3);
        CHECK(recs[3].rank == 4);
    }
    SUBCASE("sector 0 below 6.5")
    {
        const auto t = enumerate_below(unit, free1, 6.5, 3.0);
        // Both {2,-1,-1} and its mirror {-2,1,1} sit at 6.
        CHECK(energies(t, IntVec{0}) == std::vector<double>{2, 4, 6, 6, 6});
        std::vector<double> oracle;
        for (const auto& o : oracle_enumerate(unit, free1, 6.5, IntVec{0}))
            oracle.push_back(o.energy);
        CHECK(oracle == energies(t, IntVec{0}));
    }
    SUBCASE("sector 1 below 7.5 has the oracle prefix")
    {
        const auto t = enumerate_below(unit, free1, 7.5, 3.0);
        const auto e = energies(t, IntVec{1});
        REQUIRE(e.size() >= 7);
        CHECK(std::vector<double>(e.begin(), e.begin() + 7) == std::vector<double>{1, 3, 5, 5, 7, 7, 7});
    }
    SUBCASE("kappa 0 leaves every sector empty")
    {
        const auto t = enumerate_below(unit, v1, 0.0, 3.0);
        CHECK(t.sectors.size() == 7);
        for (const auto& [_, recs] : t.sectors)
            CHECK(recs.empty());
    }
    CHECK_THROWS_AS(enumerate_below(unit, free1, -1.0, 1.0), DomainError);
}

TEST_CASE("kth_excitation")
{
    const auto t = enumerate_below(unit, free1, 5.5, 3.0);
    CHECK(kth_excitation(t, IntVec{1}, 3) == 5.0);
    CHECK(kth_excitation(t, IntVec{1}, 1) == dispersion(Momentum(IntVec{1}, unit), free1));
    CHECK_FALSE(kth_excitation(t, IntVec{1}, 5).has_value());
    CHECK_THROWS_AS(kth_excitation(t, IntVec{4}, 1), OutOfWindowError);
    CHECK_THROWS_AS(kth_excitation(t, IntVec{1}, 0), DomainError);
}

TEST_CASE("oracle equivalence")
{
    SUBCASE("free gas, d = 1, kappa 7.5")
    {
        require_oracle_match(enumerate_below(unit, free1, 7.5, 3.0));
    }
    SUBCASE("v1, d = 1, kappa 3")
    {
        require_oracle_match(enumerate_below(unit, v1, 3.0, 3.0));
    }
    SUBCASE("free gas, d = 2, kappa 4.5")
    {
        require_oracle_match(enumerate_below(LatticeSpec{2.0 * kPi, 2}, Potential::none(2), 4.5, 2.0));
    }
    SUBCASE("kappa 0")
    {
        CHECK(oracle_enumerate(unit, v1, 0.0, IntVec{1}).empty());
    }
    SUBCASE("oracle refuses large instances")
    {
        CHECK_THROWS_AS(oracle_enumerate(unit, free1, 40.0, IntVec{0}), SizeError);
        CHECK_THROWS_AS(oracle_enumerate(LatticeSpec{40.0 * kPi / 3.0, 1}, v1, 1.0, IntVec{0}), SizeError);
    }
}

TEST_CASE("table invariants")
{
    const auto t = enumerate_below(unit, v1, 4.0, 4.0);
    std::set<std::vector<IntVec>> all;
    for (const auto& [p, recs] : t.sectors) {
        std::set<std::vector<IntVec>> seen;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto& r = recs[i];
            IntVec sum(1);
            double e = 0.0;
            for (const auto& k : r.constituents) {
                CHECK_FALSE(k.is_zero());
                sum += k;
                e += dispersion(Momentum(k, unit), v1);
            }
            CHECK(sum == p);
            CHECK(r.energy == doctest::Approx(e).epsilon(1e-14));
            CHECK(std::is_sorted(r.constituents.begin(), r.constituents.end()));
            CHECK(r.rank == static_cast<int>(i) + 1);
            if (i > 0)
                CHECK(recs[i - 1].energy <= r.energy + 1e-12);
            CHECK(seen.insert(r.constituents).second);
            all.insert(r.constituents);
        }
    }
    // Downward closure: dropping a constituent keeps the multiset below
    // kappa, so it is listed too whenever its total lies in the window.
    for (const auto& [p, recs] : t.sectors)
        for (const auto& r : recs) {
            if (r.n_quasi() < 2)
                continue;
            for (std::size_t drop = 0; drop < r.constituents.size(); ++drop) {
                auto sub = r.constituents;
                const IntVec total = p - sub[drop];
                sub.erase(sub.begin() + static_cast<long>(drop));
                if (t.in_window(total))
                    CHECK(all.count(sub) == 1);
            }
        }
}

TEST_CASE("raising kappa keeps every earlier record and rank")
{
    const auto lo = enumerate_below(unit, v1, 2.5, 3.0);
    const auto hi = enumerate_below(unit, v1, 3.5, 3.0);
    for (const auto& [p, recs] : lo.sectors) {
        const auto& more = hi.sectors.at(p);
        REQUIRE(more.size() >= recs.size());
        for (std::size_t i = 0; i < recs.size(); ++i) {
            CHECK(more[i].constituents == recs[i].constituents);
            CHECK(more[i].rank == recs[i].rank);
        }
    }
}

TEST_CASE("free-field energies are exact integers")
{
    const auto t = enumerate_below(LatticeSpec{2.0 * kPi, 2}, Potential::none(2), 6.0, 2.0);
    for (const auto& [_, recs] : t.sectors)
        for (const auto& r : recs) {
            long s = 0;
            for (const auto& k : r.constituents)
                s += k.norm2();
            CHECK(r.energy == static_cast<double>(s));
        }
}

TEST_CASE("figure classification")
{
    const auto t = enumerate_below(unit, free1, 5.5, 3.0);
    const auto rows = classify_for_figure(t);
    std::size_t n = 0;
    for (const auto& [_, recs] : t.sectors)
        n += recs.size();
    CHECK(rows.size() == n);
    for (const auto& r : rows) {
        CHECK(static_cast<int>(r.cls) == std::min(r.n_quasi, 3));
        if (r.n_quasi == 1)
            CHECK(r.energy == dispersion(Momentum(r.n, unit), free1));
        CHECK(r.momentum_norm == doctest::Approx(r.n[0] * unit.spacing()));
    }
}

TEST_CASE("Beliaev damping scan")
{
    SUBCASE("free gas")
    {
        const auto t = enumerate_below(unit, free1, 5.0, 2.0);
        const auto rows = damping_scan(t);
        for (const auto& r : rows) {
            if (r.n == IntVec{2}) {
                CHECK(r.status == Stability::unstable);
                CHECK(*r.min_multi == 2.0);
            }
            if (r.n == IntVec{1}) {
                CHECK(r.status == Stability::stable);
                CHECK(*r.min_multi == 3.0);
            }
        }
    }
    SUBCASE("undetermined when kappa is below e_p")
    {
        const auto t = enumerate_below(unit, free1, 3.0, 2.0);
        for (const auto& r : damping_scan(t))
            if (r.n == IntVec{-2} || r.n == IntVec{2})
                CHECK(r.status == Stability::unstable); // {1,1} at 2 < 4 is still resolved
        const auto t2 = enumerate_below(unit, free1, 0.5, 2.0);
        for (const auto& r : damping_scan(t2))
            CHECK(r.status == Stability::undetermined);
        CHECK(unresolved_sectors(t2).size() == 4);
    }
    SUBCASE("v1 is unstable at low momenta")
    {
        const LatticeSpec fig{40.0 * kPi / 3.0, 1};
        const double kappa = dispersion(Momentum(IntVec{4}, fig), v1);
        const auto t = enumerate_below(fig, v1, kappa, 4 * fig.spacing());
        int unstable = 0;
        for (const auto& r : damping_scan(t))
            unstable += r.status == Stability::unstable ? 1 : 0;
        CHECK(unstable > 0);
    }
}

TEST_CASE("spectrum CSV")
{
    const auto t = enumerate_below(LatticeSpec{2.0 * kPi, 2}, Potential::none(2), 2.0, 1.0);
    std::ostringstream os;
    write_spectrum_csv(os, t);
    const std::string s = os.str();
    CHECK(s.rfind("n1,n2,j,energy,n_quasi,constituents\n", 0) == 0);
    CHECK(s.find("0,0,1,2,2,-1:0;1:0\n") != std::string::npos);
    CHECK(format_constituents({IntVec{1, -2}, IntVec{0, 3}}) == "1:-2;0:3");
}
