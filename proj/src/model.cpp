#include "bogospec/model.hpp"

#include "bogospec/errors.hpp"
#include "bogospec/summation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace bogospec {

namespace {

// Lattice points exactly on the boundary sphere are kept; the slack only
// absorbs rounding in radius (e.g. 20 * 0.15 != 3.0).
constexpr double kRadiusSlack = 1e-12;

bool inside(double p2, double radius)
{
    return p2 <= radius * radius * (1.0 + kRadiusSlack);
}

} // namespace

IntVec::IntVec(int dim) : dim_(dim)
{
    if (dim < 1 || dim > kMaxDim)
        throw DomainError("IntVec dimension must be 1..3, got " + std::to_string(dim));
}

IntVec::IntVec(std::initializer_list<int> coords) : dim_(static_cast<int>(coords.size()))
{
    if (dim_ < 1 || dim_ > kMaxDim)
        throw DomainError("IntVec dimension must be 1..3");
    std::copy(coords.begin(), coords.end(), c_.begin());
}

long IntVec::norm2() const noexcept
{
    long s = 0;
    for (int i = 0; i < dim_; ++i)
        s += static_cast<long>(c_[i]) * c_[i];
    return s;
}

bool IntVec::is_zero() const noexcept
{
    for (int i = 0; i < dim_; ++i)
        if (c_[i] != 0)
            return false;
    return true;
}

IntVec IntVec::operator+(const IntVec& o) const
{
    IntVec r = *this;
    r += o;
    return r;
}

IntVec IntVec::operator-(const IntVec& o) const
{
    return *this + (-o);
}

IntVec IntVec::operator-() const
{
    IntVec r = *this;
    for (int i = 0; i < dim_; ++i)
        r.c_[i] = -c_[i];
    return r;
}

IntVec& IntVec::operator+=(const IntVec& o)
{
    if (o.dim_ != dim_)
        throw DomainError("IntVec dimension mismatch");
    for (int i = 0; i < dim_; ++i)
        c_[i] += o.c_[i];
    return *this;
}

std::string IntVec::str() const
{
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < dim_; ++i)
        os << (i ? "," : "") << c_[i];
    os << ')';
    return os.str();
}

std::size_t IntVecHash::operator()(const IntVec& v) const noexcept
{
    std::size_t h = static_cast<std::size_t>(v.dim());
    for (int i = 0; i < v.dim(); ++i)
        h = h * 1000003u ^ static_cast<std::size_t>(static_cast<unsigned>(v[i]));
    return h;
}

void LatticeSpec::validate() const
{
    if (!(L >= 1.0) || !std::isfinite(L))
        throw DomainError("lattice side length must satisfy L >= 1");
    if (dim < 1 || dim > kMaxDim)
        throw DomainError("lattice dimension must be 1..3");
}

double LatticeSpec::volume() const
{
    return std::pow(L, dim);
}

double Momentum::norm() const
{
    return std::sqrt(norm2());
}

Potential Potential::gaussian(double amplitude, double width, int dim)
{
    if (dim < 1 || dim > kMaxDim)
        throw DomainError("potential dimension must be 1..3");
    if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(amplitude))
        throw DomainError("gaussian potential needs finite amplitude and width > 0");
    Potential p;
    p.family_ = PotentialFamily::gaussian;
    p.dim_ = dim;
    p.amplitude_ = amplitude;
    p.width_ = width;
    return p;
}

Potential Potential::table(std::vector<std::pair<double, double>> samples, int dim)
{
    if (dim < 1 || dim > kMaxDim)
        throw DomainError("potential dimension must be 1..3");
    if (samples.size() < 2)
        throw DomainError("tabulated potential needs at least two samples");
    if (samples.front().first != 0.0)
        throw DomainError("tabulated potential must start at |p| = 0");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].first > samples[i - 1].first))
            throw DomainError("tabulated potential samples must be strictly increasing in |p|");
    Potential p;
    p.family_ = PotentialFamily::table;
    p.dim_ = dim;
    p.amplitude_ = samples.front().second;
    p.samples_ = std::move(samples);
    return p;
}

Potential Potential::zero_mode(double amplitude, int dim)
{
    if (dim < 1 || dim > kMaxDim)
        throw DomainError("potential dimension must be 1..3");
    Potential p;
    p.family_ = PotentialFamily::zero_mode;
    p.dim_ = dim;
    p.amplitude_ = amplitude;
    return p;
}

double Potential::at_norm2(double p2) const
{
    switch (family_) {
    case PotentialFamily::gaussian:
        return amplitude_ * std::exp(-p2 / width_);
    case PotentialFamily::zero_mode:
        return p2 == 0.0 ? amplitude_ : 0.0;
    case PotentialFamily::table: {
        const double r = std::sqrt(p2);
        if (r > samples_.back().first)
            throw OutOfRangeError("tabulated potential queried at |p| = " + std::to_string(r) +
                                  " beyond table end " + std::to_string(samples_.back().first));
        auto hi = std::upper_bound(samples_.begin(), samples_.end(), r,
                                   [](double x, const auto& s) { return x < s.first; });
        if (hi == samples_.end())
            return samples_.back().second;
        auto lo = hi - 1;
        const double t = (r - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }
    }
    return 0.0;
}

std::optional<double> Potential::support_radius() const
{
    switch (family_) {
    case PotentialFamily::gaussian:
        if (amplitude_ == 0.0)
            return 0.0;
        return std::nullopt;
    case PotentialFamily::zero_mode:
        return 0.0;
    case PotentialFamily::table: {
        std::size_t last_nonzero = samples_.size();
        for (std::size_t i = samples_.size(); i-- > 0;)
            if (samples_[i].second != 0.0) {
                last_nonzero = i;
                break;
            }
        if (last_nonzero == samples_.size())
            return 0.0;
        if (last_nonzero + 1 == samples_.size())
            return std::nullopt;
        return samples_[last_nonzero + 1].first;
    }
    }
    return std::nullopt;
}

double Potential::validity_radius() const
{
    if (family_ == PotentialFamily::table)
        return samples_.back().first;
    return std::numeric_limits<double>::infinity();
}

bool Potential::tail_boundable() const
{
    return family_ != PotentialFamily::table || support_radius().has_value();
}

std::string format_shortest(double x)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string Potential::describe() const
{
    std::string s;
    switch (family_) {
    case PotentialFamily::gaussian:
        s = "gaussian:" + format_shortest(amplitude_) + ':' + format_shortest(width_);
        break;
    case PotentialFamily::zero_mode:
        s = "zero_mode:" + format_shortest(amplitude_);
        break;
    case PotentialFamily::table:
        s = "table:";
        for (std::size_t i = 0; i < samples_.size(); ++i)
            s += (i ? "," : "") + format_shortest(samples_[i].first) + '/' + format_shortest(samples_[i].second);
        break;
    }
    return s;
}

double fourier_at(const Potential& pot, const Momentum& p)
{
    if (p.n.dim() != pot.dim())
        throw DomainError("momentum dimension does not match potential");
    return pot.at_norm2(p.norm2());
}

double fourier_at(const Potential& pot, std::span<const double> p)
{
    if (static_cast<int>(p.size()) != pot.dim())
        throw DomainError("momentum dimension does not match potential");
    double p2 = 0.0;
    for (double c : p)
        p2 += c * c;
    return pot.at_norm2(p2);
}

ValidationResult validate_potential(const Potential& pot, const LatticeSpec& lattice, double radius)
{
    lattice.validate();
    if (!(radius >= 0.0))
        throw DomainError("validation radius must be >= 0");
    ValidationResult res;
    if (radius == 0.0) {
        res.warnings.emplace_back("radius = 0: no lattice points checked");
        return res;
    }
    for (const Momentum& p : lattice_points(lattice, radius, true)) {
        double value = 0.0;
        try {
            value = fourier_at(pot, p);
        } catch (const OutOfRangeError&) {
            res.violations.push_back({p.n, 0.0, "outside table range"});
            continue;
        }
        if (value < 0.0)
            res.violations.push_back({p.n, value, "negative vhat"});
    }
    if (pot.tail_boundable()) {
        std::vector<double> origin(static_cast<std::size_t>(lattice.dim), 0.0);
        const double v0 = periodized_value(pot, lattice, origin);
        if (v0 < 0.0)
            res.violations.push_back({IntVec(lattice.dim), v0, "periodized v(0) < 0"});
    } else {
        res.warnings.emplace_back("tabulated potential does not decay to zero inside its table; "
                                  "lattice-sum tails cannot be bounded");
    }
    res.ok = res.violations.empty();
    return res;
}

double periodized_value(const Potential& pot, const LatticeSpec& lattice, std::span<const double> x,
                        double tail_tol)
{
    lattice.validate();
    if (!(tail_tol > 0.0))
        throw DomainError("tail_tol must be > 0");
    if (static_cast<int>(x.size()) != lattice.dim || pot.dim() != lattice.dim)
        throw DomainError("position dimension does not match lattice");
    const double inv_volume = 1.0 / lattice.volume();
    const double R = summation_radius(pot, lattice, 1, inv_volume, tail_tol);

    CompensatedSum re, im;
    for (const Momentum& p : lattice_shells(lattice, R, true)) {
        double phase = 0.0;
        for (int i = 0; i < lattice.dim; ++i)
            phase += p.component(i) * x[static_cast<std::size_t>(i)];
        const double v = fourier_at(pot, p);
        re += v * std::cos(phase);
        im += v * std::sin(phase);
    }
    if (std::abs(im.value() * inv_volume) >= tail_tol)
        throw InvariantError("periodized potential has an imaginary part above tail_tol");
    return re.value() * inv_volume;
}

std::vector<Momentum> lattice_points(const LatticeSpec& lattice, double radius, bool include_zero)
{
    lattice.validate();
    if (!(radius >= 0.0))
        throw DomainError("lattice radius must be >= 0");
    const double h = lattice.spacing();
    const int m = static_cast<int>(std::floor(radius / h * (1.0 + kRadiusSlack)));
    std::vector<Momentum> out;
    IntVec n(lattice.dim);
    for (int i = 0; i < lattice.dim; ++i)
        n[i] = -m;
    // Odometer over [-m, m]^d; the last coordinate runs fastest, which is
    // lexicographic order.
    while (true) {
        const Momentum p(n, h);
        if ((include_zero || !n.is_zero()) && inside(p.norm2(), radius))
            out.push_back(p);
        int k = lattice.dim - 1;
        while (k >= 0 && n[k] == m) {
            n[k] = -m;
            --k;
        }
        if (k < 0)
            break;
        ++n[k];
    }
    return out;
}

std::vector<Momentum> lattice_shells(const LatticeSpec& lattice, double radius, bool include_zero)
{
    auto pts = lattice_points(lattice, radius, include_zero);
    std::stable_sort(pts.begin(), pts.end(),
                     [](const Momentum& a, const Momentum& b) { return a.n.norm2() < b.n.norm2(); });
    return pts;
}

double gaussian_lattice_tail(double a, double spacing, int dim, double R)
{
    const double root = std::sqrt(kPi / a) / spacing;
    const double r = R / std::sqrt(static_cast<double>(dim));
    const double one_dim_tail = root * std::erfc(std::sqrt(a) * std::max(r - spacing, 0.0));
    const double full_line = 1.0 + root;
    return dim * one_dim_tail * std::pow(full_line, dim - 1);
}

double summation_radius(const Potential& pot, const LatticeSpec& lattice, int power, double prefactor,
                        double tol)
{
    if (!(tol > 0.0))
        throw DomainError("tail tolerance must be > 0");
    if (auto support = pot.support_radius())
        return *support;
    if (pot.family() != PotentialFamily::gaussian)
        throw TailBoundError("cannot bound the lattice-sum tail of a non-decaying tabulated potential");

    const double scale = std::abs(prefactor) * std::pow(std::abs(pot.amplitude()), power);
    if (scale == 0.0)
        return 0.0;
    const double a = power / pot.width();
    const double h = lattice.spacing();
    auto bound = [&](double R) { return scale * gaussian_lattice_tail(a, h, lattice.dim, R); };

    double hi = h;
    while (bound(hi) > tol) {
        hi *= 2.0;
        if (hi > 1e8 * h)
            throw TailBoundError("lattice-sum tail did not fall below tolerance");
    }
    double lo = hi / 2.0;
    for (int it = 0; it < 60 && hi - lo > 1e-3 * h; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) > tol ? lo : hi) = mid;
    }
    return hi;
}

} // namespace bogospec
