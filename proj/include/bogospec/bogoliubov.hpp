#pragma once

#include "bogospec/model.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace bogospec {

/// Bogoliubov transformation data for one nonzero momentum, in mean-field
/// units (rho * lambda = 1).
struct BogoCoefficients {
    double A = 0.0;     // |p|^2 + vhat(p)
    double B = 0.0;     // vhat(p)
    double alpha = 0.0; // tanh(2 beta)
    double beta = 0.0;
    double c = 1.0;     // cosh(2 beta)
    double s = 0.0;     // sinh(2 beta)
    double e = 0.0;     // quasiparticle energy
};

/// Elementary excitation energy |p| sqrt(|p|^2 + 2 vhat(p)) from |p|^2 and vhat(p).
double dispersion_from(double p2, double vhat);

/// Elementary excitation energy. Throws DomainError for p = 0.
double dispersion(const Momentum& p, const Potential& pot);

/// Throws DomainError for p = 0. alpha uses the cancellation-free form
/// vhat / (|p|^2 + vhat + |p| sqrt(|p|^2 + 2 vhat)).
BogoCoefficients coefficients(const Momentum& p, const Potential& pot);

/// Absolute residuals of the three closed-form identities relating c, s
/// and vhat: (c-s)^2, s(c-s) and 2sc(c-s)^2.
struct IdentityResiduals {
    double squeeze = 0.0;  // |(c-s)^2 - |p| / sqrt(|p|^2 + 2v)|
    double cross = 0.0;    // |s(c-s) - v / (|p|^2 + 2v + |p| sqrt(|p|^2 + 2v))|
    double product = 0.0;  // |2sc(c-s)^2 - v / (|p|^2 + 2v)|
    double hyperbolic = 0.0; // |c^2 - s^2 - 1|

    double max() const;
};

IdentityResiduals identity_residuals(const Momentum& p, const Potential& pot);

struct EnergySummary {
    double e_bog = 0.0;     // -1/2 sum (A - sqrt(A^2 - B^2)), direct form
    double e_bog_alt = 0.0; // -1/2 sum B^2 / (A + sqrt(A^2 - B^2))
    std::size_t n_terms = 0;
    double radius = 0.0;    // summation radius in momentum units
    double tail_tol = 0.0;  // tolerance actually used
    std::optional<double> density_limit; // infinite-volume energy density, d <= 3
};

/// Bogoliubov ground-state energy E_Bog on the full lattice. The default
/// tolerance is 1e-10 * max(1, |E_Bog|).
EnergySummary bogoliubov_energy(const LatticeSpec& lattice, const Potential& pot,
                                std::optional<double> tail_tol = std::nullopt);

/// E_Bog restricted to a finite set of nonzero modes (zero entries are
/// skipped). Used to compare against truncated many-body calculations.
double bogoliubov_energy_on(std::span<const Momentum> modes, const Potential& pot);

struct QuadratureSpec {
    double step = 0.05;       // panel width in momentum units
    double tail_tol = 1e-15;  // bound on the truncated radial tail
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double cutoff = 0.0;
    std::size_t panels = 0;
};

/// Infinite-volume ground-state energy density at rho = lambda = 1:
///   1/2 vhat(0) - (2 (2pi)^d)^{-1} int (|p|^2 + vhat - |p| sqrt(|p|^2 + 2 vhat)) dp.
/// Radial composite Gauss-Legendre; the error estimate is the change under
/// step halving.
QuadratureResult energy_density_limit(const Potential& pot, const QuadratureSpec& spec = {});

} // namespace bogospec
