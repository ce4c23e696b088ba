#include <doctest.h>

#include "bogospec/errors.hpp"
#include "bogospec/model.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace bogospec;

namespace {

const Potential v1 = Potential::gaussian(0.1, 5.0, 1);
const Potential v2 = Potential::gaussian(7.5, 2.0, 1);

std::vector<int> coords(const std::vector<Momentum>& pts)
{
    std::vector<int> out;
    for (const auto& p : pts)
        out.push_back(p.n[0]);
    return out;
}

} // namespace

TEST_CASE("fourier_at matches the closed Gaussian form")
{
    CHECK(fourier_at(v1, Momentum(IntVec{0}, 1.0)) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(fourier_at(v2, Momentum(IntVec{0}, 1.0)) == doctest::Approx(7.5).epsilon(1e-15));
    const std::vector<double> p{0.7};
    CHECK(fourier_at(v1, p) == doctest::Approx(0.1 * std::exp(-0.49 / 5.0)).epsilon(1e-15));
}

TEST_CASE("fourier_at is even")
{
    const LatticeSpec lat{40.0 * kPi / 3.0, 2};
    const Potential g = Potential::gaussian(0.3, 1.5, 2);
    for (const auto& p : lattice_points(lat, 2.0, true))
        CHECK(fourier_at(g, p) == fourier_at(g, Momentum(-p.n, lat)));
    const Potential t = Potential::table({{0.0, 1.0}, {1.0, 0.5}, {5.0, 0.0}}, 1);
    for (int n = -4; n <= 4; ++n)
        CHECK(fourier_at(t, Momentum(IntVec{n}, 1.0)) == fourier_at(t, Momentum(IntVec{-n}, 1.0)));
}

TEST_CASE("Gaussian never exceeds its amplitude")
{
    for (const auto& p : lattice_points(LatticeSpec{7.0, 1}, 10.0, true))
        CHECK(fourier_at(v2, p) <= 7.5);
}

TEST_CASE("tables interpolate linearly and refuse queries past the last sample")
{
    const Potential t = Potential::table({{0.0, 1.0}, {2.0, 0.0}}, 1);
    CHECK(fourier_at(t, Momentum(IntVec{1}, 1.0)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(fourier_at(t, Momentum(IntVec{3}, 1.0)), OutOfRangeError);
    CHECK_THROWS_AS(Potential::table({{0.5, 1.0}, {2.0, 0.0}}, 1), DomainError);
    CHECK_THROWS_AS(Potential::table({{0.0, 1.0}, {0.0, 0.0}}, 1), DomainError);
}

TEST_CASE("validate_potential")
{
    const LatticeSpec lat{2.0 * kPi, 1};
    SUBCASE("Gaussian is fine")
    {
        const auto r = validate_potential(v1, lat, 5.0);
        CHECK(r.ok);
        CHECK(r.violations.empty());
    }
    SUBCASE("a negative table sample is reported at its lattice point")
    {
        const Potential t = Potential::table({{0.0, 1.0}, {1.0, -0.5}, {2.0, 0.0}, {10.0, 0.0}}, 1);
        const auto r = validate_potential(t, lat, 3.0);
        REQUIRE_FALSE(r.ok);
        REQUIRE_FALSE(r.violations.empty());
        CHECK(r.violations.front().n.norm2() == 1);
        CHECK(r.violations.front().value == doctest::Approx(-0.5));
    }
    SUBCASE("radius 0 passes with a warning")
    {
        const auto r = validate_potential(v1, lat, 0.0);
        CHECK(r.ok);
        CHECK_FALSE(r.warnings.empty());
    }
    CHECK_THROWS_AS(validate_potential(v1, lat, -1.0), DomainError);
}

TEST_CASE("periodized_value")
{
    SUBCASE("zero potential")
    {
        const std::vector<double> x{0.3};
        CHECK(periodized_value(Potential::none(1), LatticeSpec{}, x) == 0.0);
    }
    SUBCASE("v1 at the origin with spacing 0.15")
    {
        // Poisson summation: the lattice sum equals the integral up to
        // terms of order exp(-5 L^2 / 4).
        const double reference = 0.1 * std::sqrt(5.0 * kPi) / (2.0 * kPi);
        const std::vector<double> x{0.0};
        const double v = periodized_value(v1, LatticeSpec{40.0 * kPi / 3.0, 1}, x);
        CHECK(v == doctest::Approx(reference).epsilon(1e-12));
        CHECK(v == doctest::Approx(0.063078).epsilon(1e-5));
    }
    SUBCASE("periodic in each coordinate")
    {
        const LatticeSpec lat{3.0, 2};
        const Potential g = Potential::gaussian(1.0, 4.0, 2);
        const std::vector<double> x{0.4, -0.2}, y{0.4 + 3.0, -0.2}, z{0.4, -0.2 - 3.0};
        const double a = periodized_value(g, lat, x);
        CHECK(periodized_value(g, lat, y) == doctest::Approx(a).epsilon(1e-12));
        CHECK(periodized_value(g, lat, z) == doctest::Approx(a).epsilon(1e-12));
    }
    SUBCASE("refinements converge within the tail tolerance")
    {
        const std::vector<double> x{0.0};
        const LatticeSpec lat{2.0 * kPi, 1};
        double prev_tol = 1e-4;
        double prev = periodized_value(v2, lat, x, prev_tol);
        for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
            const double cur = periodized_value(v2, lat, x, tol);
            CHECK(std::abs(cur - prev) < prev_tol);
            prev = cur;
            prev_tol = tol;
        }
    }
    SUBCASE("non-decaying table cannot be bounded")
    {
        const Potential t = Potential::table({{0.0, 1.0}, {100.0, 1.0}}, 1);
        const std::vector<double> x{0.0};
        CHECK_THROWS_AS(periodized_value(t, LatticeSpec{}, x), Error);
    }
}

TEST_CASE("lattice_points")
{
    const LatticeSpec lat{2.0 * kPi, 1};
    CHECK(coords(lattice_points(lat, 2.5, false)) == std::vector<int>{-2, -1, 1, 2});
    CHECK(lattice_points(LatticeSpec{10.0, 1}, 0.5, false).empty());
    CHECK(lattice_points(LatticeSpec{2.0 * kPi, 2}, 1.0, false).size() == 4);
    CHECK(coords(lattice_points(lat, 1.0, true)) == std::vector<int>{-1, 0, 1});
    CHECK_THROWS_AS(lattice_points(lat, -1.0, true), DomainError);
}

TEST_CASE("lattice_points agrees with a brute-force box scan")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> radius(0.0, 4.0), side(1.0, 12.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 3;
        const LatticeSpec lat{side(rng), d};
        const double R = radius(rng);
        const double h = lat.spacing();
        const int box = static_cast<int>(std::ceil(R / h));
        std::size_t count = 0;
        const int w = 2 * box + 1;
        const int total = static_cast<int>(std::pow(w, d));
        for (int idx = 0; idx < total; ++idx) {
            long n2 = 0;
            int rem = idx;
            for (int i = 0; i < d; ++i) {
                const int c = rem % w - box;
                rem /= w;
                n2 += static_cast<long>(c) * c;
            }
            if (h * h * static_cast<double>(n2) <= R * R * (1.0 + 1e-12))
                ++count;
        }
        CHECK(lattice_points(lat, R, true).size() == count);
    }
}

TEST_CASE("lattice_shells orders by |n|^2 then lexicographically")
{
    const auto pts = lattice_shells(LatticeSpec{2.0 * kPi, 2}, 1.5, false);
    REQUIRE(pts.size() == 8);
    CHECK(pts[0].n == IntVec{-1, 0});
    CHECK(pts[3].n == IntVec{1, 0});
    CHECK(pts[4].n == IntVec{-1, -1});
}

TEST_CASE("LatticeSpec and IntVec validation")
{
    CHECK_THROWS_AS(LatticeSpec({0.5, 1}).validate(), DomainError);
    CHECK_THROWS_AS(LatticeSpec({2.0, 4}).validate(), DomainError);
    CHECK(LatticeSpec{40.0 * kPi / 3.0, 1}.spacing() == doctest::Approx(0.15).epsilon(1e-15));
    CHECK((IntVec{1, -2}).str() == "(1,-2)");
    CHECK_THROWS_AS((IntVec{1} + IntVec{1, 2}), DomainError);
}
