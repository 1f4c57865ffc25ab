#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tfz/signal.hpp"

/// The Bargmann transform of complex white noise: the planar Gaussian analytic
/// function with covariance kernel e^{pi z conj(w)}, represented as
///
///     B(xi)(z) = sum_n xi_n sqrt(pi^n / n!) z^n,   xi_n iid, E|xi_n|^2 = 1,
///
/// truncated at a degree chosen so that the relative variance of the dropped
/// tail stays below `tail_tol` on the disk of radius `valid_radius`.
namespace tfz::noise {

inline constexpr double default_tail_tol = 1e-12;
/// Distance kept between an analysis domain and the truncation radius.
inline constexpr double default_margin = 1.0;

/// P(X > n) for X ~ Poisson(lambda), by direct summation of the upper tail.
double poisson_upper_tail(double lambda, int n);

/// Smallest N whose dropped tail sum_{n>N} (pi R^2)^n/n! e^{-pi R^2} is <= tail_tol.
int truncation_degree(double radius, double tail_tol = default_tail_tol);

/// Largest radius on which a degree-N truncation meets tail_tol.
double valid_radius_for_degree(int degree, double tail_tol = default_tail_tol);

/// Seed of realization `index` under `master`:
/// splitmix64(splitmix64(master) ^ splitmix64(index)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);
std::uint64_t splitmix64(std::uint64_t x);

/// xi_0..xi_N drawn from std::mt19937_64(seed): real then imaginary part of each
/// coefficient from N(0, 1/2).
std::vector<cplx> standard_coefficients(std::uint64_t seed, int max_degree);

/// One realization of the truncated field. Immutable once built.
struct GafSample {
    /// coeffs[n] = xi_n sqrt(pi^n / n!)
    std::vector<cplx> coeffs;
    int max_degree = 0;
    std::uint64_t seed = 0;
    double valid_radius = 0.0;
    double tail_tol = default_tail_tol;

    /// Horner evaluation; no radius check.
    cplx value(cplx z) const noexcept;
    /// Value and first derivative in one Horner pass.
    std::pair<cplx, cplx> value_and_derivative(cplx z) const noexcept;

    /// All-zero coefficients (a noiseless "realization").
    static GafSample zeros(int max_degree, double valid_radius);
};

/// Scales standard_coefficients(seed, max_degree); valid_radius follows from tail_tol.
GafSample sample_gaf(std::uint64_t seed, int max_degree, double tail_tol = default_tail_tol);

/// Same, with the degree chosen by truncation_degree(radius, tail_tol).
GafSample sample_gaf_on_disk(std::uint64_t seed, double radius,
                             double tail_tol = default_tail_tol);

/// Degree and radius shared by every realization of an experiment.
struct GafPlan {
    int max_degree = 0;
    double valid_radius = 0.0;
    double tail_tol = default_tail_tol;

    static GafPlan for_radius(double radius, double tail_tol = default_tail_tol);
};

/// Realization with a precomputed plan; coefficients identical to
/// sample_gaf(seed, plan.max_degree).
GafSample sample_gaf(std::uint64_t seed, const GafPlan& plan);

/// B(x) + B(xi): the Bargmann transform of the noisy signal y = x + xi.
class NoisyField {
public:
    NoisyField(SignalModel signal, GafSample noise);

    const SignalModel& signal() const noexcept { return signal_; }
    const GafSample& noise() const noexcept { return noise_; }
    double valid_radius() const noexcept { return noise_.valid_radius; }

    /// Throws DomainError outside the validity disk.
    cplx value(cplx z) const;
    cplx derivative(cplx z) const;
    std::pair<cplx, cplx> value_and_derivative(cplx z) const;

private:
    void check_radius(cplx z) const;

    SignalModel signal_;
    GafSample noise_;
    bool has_signal_;
};

cplx eval_field(const NoisyField& field, cplx z);

/// e^{-pi|z|^2} |B(x)(conj z) + B(xi)(conj z)|^2
double noisy_spectrogram(const NoisyField& field, TFPoint p);

} // namespace tfz::noise
