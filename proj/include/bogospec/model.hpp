#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bogospec {

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Integer lattice vector of dimension 1..3. Ordering is lexicographic in
/// the coordinates.
class IntVec {
public:
    IntVec() = default;
    explicit IntVec(int dim);
    IntVec(std::initializer_list<int> coords);

    int dim() const noexcept { return dim_; }
    int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    long norm2() const noexcept;
    bool is_zero() const noexcept;

    IntVec operator+(const IntVec& o) const;
    IntVec operator-(const IntVec& o) const;
    IntVec operator-() const;
    IntVec& operator+=(const IntVec& o);

    std::string str() const; // "(1,-2)" style

    auto operator<=>(const IntVec&) const = default;
    bool operator==(const IntVec&) const = default;

private:
    std::array<int, kMaxDim> c_{};
    int dim_ = 0;
};

struct IntVecHash {
    std::size_t operator()(const IntVec& v) const noexcept;
};

/// Side length L and dimension d of the torus ]-L/2, L/2]^d.
struct LatticeSpec {
    double L = 2.0 * kPi;
    int dim = 1;

    /// Throws DomainError unless L >= 1 and 1 <= dim <= 3.
    void validate() const;
    double spacing() const noexcept { return 2.0 * kPi / L; }
    double volume() const;
};

/// Lattice momentum p = (2pi/L) n, stored as the integer vector n.
struct Momentum {
    IntVec n;
    double spacing = 1.0;

    Momentum() = default;
    Momentum(IntVec n_, double spacing_) : n(n_), spacing(spacing_) {}
    Momentum(IntVec n_, const LatticeSpec& lat) : n(n_), spacing(lat.spacing()) {}

    double norm2() const noexcept { return spacing * spacing * static_cast<double>(n.norm2()); }
    double norm() const;
    double component(int i) const noexcept { return spacing * n[i]; }
    bool is_zero() const noexcept { return n.is_zero(); }
};

enum class PotentialFamily { gaussian, table, zero_mode };

/// Radially symmetric pair potential, described by its Fourier transform.
///
/// Families:
///  - gaussian:  vhat(p) = amplitude * exp(-|p|^2 / width)
///  - table:     linear interpolation in |p| between samples (|p|, value);
///               queries beyond the last sample are out of range
///  - zero_mode: vhat(0) = amplitude, vhat(p) = 0 for p != 0. On the torus
///               this is the constant interaction amplitude / L^d.
class Potential {
public:
    static Potential gaussian(double amplitude, double width, int dim);
    static Potential table(std::vector<std::pair<double, double>> samples, int dim);
    static Potential zero_mode(double amplitude, int dim);
    /// vhat identically zero.
    static Potential none(int dim) { return gaussian(0.0, 1.0, dim); }

    PotentialFamily family() const noexcept { return family_; }
    int dim() const noexcept { return dim_; }
    double amplitude() const noexcept { return amplitude_; }
    double width() const noexcept { return width_; }
    const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }

    /// vhat at a point with squared norm p2.
    double at_norm2(double p2) const;

    /// Radius beyond which vhat vanishes identically, if such a radius is
    /// known (compactly supported tables, zero_mode). For gaussian returns
    /// 0 when the amplitude is zero.
    std::optional<double> support_radius() const;

    /// Largest |p| at which vhat may be evaluated (infinity for closed forms).
    double validity_radius() const;

    /// True when the omitted tail of a lattice sum can be bounded.
    bool tail_boundable() const;

    /// Round-trips through the --vhat grammar, e.g. "gaussian:0.1:5".
    std::string describe() const;

private:
    PotentialFamily family_ = PotentialFamily::gaussian;
    int dim_ = 1;
    double amplitude_ = 0.0;
    double width_ = 1.0;
    std::vector<std::pair<double, double>> samples_;
};

/// vhat(p). Throws OutOfRangeError for table queries beyond the table.
/// Shortest decimal form that parses back to the same double.
std::string format_shortest(double x);

double fourier_at(const Potential& pot, const Momentum& p);
double fourier_at(const Potential& pot, std::span<const double> p);

struct PotentialViolation {
    IntVec n;          // offending lattice point (zero vector for the x = 0 check)
    double value = 0.0;
    std::string what;
};

struct ValidationResult {
    bool ok = true;
    std::vector<PotentialViolation> violations; // in lattice order; front() is the first
    std::vector<std::string> warnings;
};

/// Checks vhat >= 0 on all lattice points within `radius` and the
/// periodized v at x = 0.
ValidationResult validate_potential(const Potential& pot, const LatticeSpec& lattice, double radius);

/// v^L(x) = L^{-d} sum_p vhat(p) e^{ipx}, summed until the omitted tail is
/// below tail_tol.
double periodized_value(const Potential& pot, const LatticeSpec& lattice, std::span<const double> x,
                        double tail_tol = 1e-12);

/// All lattice points with |p| <= radius in lexicographic order of n.
std::vector<Momentum> lattice_points(const LatticeSpec& lattice, double radius, bool include_zero);

/// Same set as lattice_points, ordered by |n|^2 and then lexicographically.
/// This is the summation order for every lattice sum in the library.
std::vector<Momentum> lattice_shells(const LatticeSpec& lattice, double radius, bool include_zero);

/// Radius R such that prefactor * sum_{|p| > R} env(p)^power <= tol, where
/// env is an upper envelope of |vhat|. Throws TailBoundError when no such
/// radius can be certified.
double summation_radius(const Potential& pot, const LatticeSpec& lattice, int power, double prefactor,
                        double tol);

/// Upper bound on sum_{p in (2pi/L)Z^d, |p| > R} exp(-a |p|^2).
double gaussian_lattice_tail(double a, double spacing, int dim, double R);

} // namespace bogospec

template <>
struct std::hash<bogospec::IntVec> : bogospec::IntVecHash {};
