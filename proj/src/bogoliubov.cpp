#include "bogospec/bogoliubov.hpp"

#include "bogospec/errors.hpp"
#include "bogospec/summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bogospec {

namespace {

void require_nonzero(const Momentum& p)
{
    if (p.is_zero())
        throw DomainError("the zero mode has no quasiparticle; p must be nonzero");
}

// Summand of -2 E_Bog, literal form.
double direct_summand(double p2, double v)
{
    return p2 + v - std::sqrt(p2) * std::sqrt(p2 + 2.0 * v);
}

// Same quantity rationalized: B^2 / (A + sqrt(A^2 - B^2)).
double rationalized_summand(double p2, double v)
{
    return v * v / (p2 + v + std::sqrt(p2) * std::sqrt(p2 + 2.0 * v));
}

double sphere_area(int dim)
{
    switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: throw DomainError("quadrature supports d <= 3 only");
    }
}

constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

template <typename F>
double gauss_legendre(F&& f, double a, double b, std::size_t panels)
{
    const double h = (b - a) / static_cast<double>(panels);
    CompensatedSum total;
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = a + h * static_cast<double>(k);
        const double mid = lo + 0.5 * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i)
            panel += kGlWeights[i] * f(mid + 0.5 * h * kGlNodes[i]);
        total += 0.5 * h * panel;
    }
    return total.value();
}

} // namespace

double dispersion_from(double p2, double vhat)
{
    return std::sqrt(p2 * (p2 + 2.0 * vhat));
}

double dispersion(const Momentum& p, const Potential& pot)
{
    require_nonzero(p);
    return dispersion_from(p.norm2(), fourier_at(pot, p));
}

BogoCoefficients coefficients(const Momentum& p, const Potential& pot)
{
    require_nonzero(p);
    const double p2 = p.norm2();
    const double v = fourier_at(pot, p);
    BogoCoefficients k;
    k.A = p2 + v;
    k.B = v;
    k.e = dispersion_from(p2, v);
    k.alpha = v / (p2 + v + k.e);
    k.beta = 0.5 * std::atanh(k.alpha);
    k.c = 1.0 / std::sqrt((1.0 - k.alpha) * (1.0 + k.alpha));
    k.s = k.alpha * k.c;
    return k;
}

double IdentityResiduals::max() const
{
    return std::max({squeeze, cross, product, hyperbolic});
}

IdentityResiduals identity_residuals(const Momentum& p, const Potential& pot)
{
    const BogoCoefficients k = coefficients(p, pot);
    const double p2 = p.norm2();
    const double pn = std::sqrt(p2);
    const double v = k.B;
    const double root = std::sqrt(p2 + 2.0 * v);
    const double cs = k.c - k.s;

    IdentityResiduals r;
    r.squeeze = std::abs(cs * cs - pn / root);
    r.cross = std::abs(k.s * cs - v / (p2 + 2.0 * v + pn * root));
    r.product = std::abs(2.0 * k.s * k.c * cs * cs - v / (p2 + 2.0 * v));
    r.hyperbolic = std::abs((k.c - k.s) * (k.c + k.s) - 1.0);
    return r;
}

EnergySummary bogoliubov_energy(const LatticeSpec& lattice, const Potential& pot,
                                std::optional<double> tail_tol)
{
    lattice.validate();
    if (pot.dim() != lattice.dim)
        throw DomainError("potential dimension does not match lattice");
    const double first_pass_tol = tail_tol.value_or(1e-10);
    if (!(first_pass_tol > 0.0))
        throw DomainError("tail_tol must be > 0");

    // Each summand is at most vhat^2 / |p|^2 <= vhat^2 / h^2, halved.
    const double h = lattice.spacing();
    const double R = summation_radius(pot, lattice, 2, 0.5 / (h * h), first_pass_tol);

    CompensatedSum direct, alt;
    std::size_t n = 0;
    for (const Momentum& p : lattice_shells(lattice, R, false)) {
        const double p2 = p.norm2();
        const double v = fourier_at(pot, p);
        direct += direct_summand(p2, v);
        alt += rationalized_summand(p2, v);
        ++n;
    }

    EnergySummary out;
    out.e_bog = -0.5 * direct.value();
    out.e_bog_alt = -0.5 * alt.value();
    out.n_terms = n;
    out.radius = R;
    out.tail_tol = tail_tol.value_or(1e-10 * std::max(1.0, std::abs(out.e_bog)));
    if (lattice.dim <= 3 && pot.tail_boundable())
        out.density_limit = energy_density_limit(pot).value;
    return out;
}

double bogoliubov_energy_on(std::span<const Momentum> modes, const Potential& pot)
{
    CompensatedSum sum;
    for (const Momentum& p : modes) {
        if (p.is_zero())
            continue;
        sum += rationalized_summand(p.norm2(), fourier_at(pot, p));
    }
    return -0.5 * sum.value();
}

QuadratureResult energy_density_limit(const Potential& pot, const QuadratureSpec& spec)
{
    const int d = pot.dim();
    const double area = sphere_area(d);
    if (!(spec.step > 0.0) || !(spec.tail_tol > 0.0))
        throw DomainError("quadrature step and tail_tol must be > 0");

    double cutoff = 0.0;
    if (auto support = pot.support_radius()) {
        cutoff = *support;
    } else if (pot.family() == PotentialFamily::gaussian) {
        // Integrand <= vhat^2 / r^2 and r^{d-1} / r^2 <= 1 for r >= 1:
        // tail <= area * amp^2 * (w / 4R) * exp(-2R^2 / w).
        const double amp2 = pot.amplitude() * pot.amplitude();
        const double w = pot.width();
        auto tail = [&](double R) { return area * amp2 * (w / (4.0 * R)) * std::exp(-2.0 * R * R / w); };
        cutoff = 1.0;
        while (tail(cutoff) > spec.tail_tol)
            cutoff *= 1.25;
    } else {
        throw TailBoundError("cannot bound the quadrature tail of a non-decaying tabulated potential");
    }

    auto integrand = [&](double r) {
        const double v = pot.at_norm2(r * r);
        return area * std::pow(r, d - 1) * rationalized_summand(r * r, v);
    };

    const double vhat0 = pot.at_norm2(0.0);
    const double norm = 2.0 * std::pow(2.0 * kPi, d);
    QuadratureResult res;
    res.cutoff = cutoff;
    if (cutoff == 0.0) {
        res.value = 0.5 * vhat0;
        return res;
    }
    const auto panels = static_cast<std::size_t>(std::ceil(cutoff / spec.step));
    const double coarse = gauss_legendre(integrand, 0.0, cutoff, panels);
    const double fine = gauss_legendre(integrand, 0.0, cutoff, 2 * panels);
    res.panels = 2 * panels;
    res.value = 0.5 * vhat0 - fine / norm;
    // Floor keeps the estimate strictly positive once the rule has converged.
    res.error_estimate = std::abs(coarse - fine) / norm + 64.0 * 2.2e-16 * (std::abs(fine) / norm + 1e-300) +
                         spec.tail_tol / norm;
    return res;
}

} // namespace bogospec
