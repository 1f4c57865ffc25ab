#include "tfz/noise.hpp"

#include <cmath>
#include <random>

#include "tfz/analytic.hpp"
#include "tfz/error.hpp"

namespace tfz::noise {

double poisson_upper_tail(double lambda, int n)
{
    if (!(lambda >= 0.0)) {
        throw DomainError("poisson mean must be nonnegative");
    }
    if (n < 0) {
        return 1.0;
    }
    if (lambda == 0.0) {
        return 0.0;
    }
    int m = n + 1;
    double term = std::exp(-lambda + m * std::log(lambda) - std::lgamma(m + 1.0));
    double sum = 0.0;
    const int cap = m + static_cast<int>(lambda + 60.0 * std::sqrt(lambda)) + 200;
    for (; m < cap; ++m) {
        sum += term;
        if (m > lambda && term <= 1e-18 * sum) {
            break;
        }
        term *= lambda / (m + 1.0);
    }
    return std::min(sum, 1.0);
}

int truncation_degree(double radius, double tail_tol)
{
    if (!(radius > 0.0)) {
        throw DomainError("truncation radius must be positive");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("tail tolerance must lie in (0, 1)");
    }
    const double lambda = pi * radius * radius;
    int lo = 0;
    int hi = static_cast<int>(lambda + 60.0 * std::sqrt(lambda)) + 60;
    while (poisson_upper_tail(lambda, hi) > tail_tol) {
        hi *= 2;
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (poisson_upper_tail(lambda, mid) <= tail_tol) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

double valid_radius_for_degree(int degree, double tail_tol)
{
    if (degree < 0) {
        throw DomainError("degree must be nonnegative");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("tail tolerance must lie in (0, 1)");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (poisson_upper_tail(hi, degree) <= tail_tol) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (poisson_upper_tail(mid, degree) <= tail_tol) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo / pi);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(splitmix64(master) ^ splitmix64(index));
}

cplx GafSample::value(cplx z) const noexcept
{
    // Real arithmetic keeps the loop free of the NaN-recovery path of complex operator*.
    const double x = z.real(), y = z.imag();
    double re = 0.0, im = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const double t = re * x - im * y + it->real();
        im = re * y + im * x + it->imag();
        re = t;
    }
    return {re, im};
}

std::pair<cplx, cplx> GafSample::value_and_derivative(cplx z) const noexcept
{
    const double x = z.real(), y = z.imag();
    double re = 0.0, im = 0.0, dre = 0.0, dim = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const double dt = dre * x - dim * y + re;
        dim = dre * y + dim * x + im;
        dre = dt;
        const double t = re * x - im * y + it->real();
        im = re * y + im * x + it->imag();
        re = t;
    }
    return {{re, im}, {dre, dim}};
}

GafSample GafSample::zeros(int max_degree, double valid_radius)
{
    if (max_degree < 0) {
        throw DomainError("degree must be nonnegative");
    }
    GafSample g;
    g.coeffs.assign(static_cast<std::size_t>(max_degree) + 1, cplx{0.0, 0.0});
    g.max_degree = max_degree;
    g.valid_radius = valid_radius;
    return g;
}

std::vector<cplx> standard_coefficients(std::uint64_t seed, int max_degree)
{
    if (max_degree < 0) {
        throw DomainError("degree must be nonnegative");
    }
    std::vector<cplx> xi(static_cast<std::size_t>(max_degree) + 1);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (auto& c : xi) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
    return xi;
}

namespace {

GafSample draw(std::uint64_t seed, int max_degree, double tail_tol, double valid_radius)
{
    GafSample g;
    g.max_degree = max_degree;
    g.seed = seed;
    g.tail_tol = tail_tol;
    g.valid_radius = valid_radius;
    g.coeffs = standard_coefficients(seed, max_degree);
    double scale = 1.0;
    for (int n = 1; n <= max_degree; ++n) {
        scale *= std::sqrt(pi / n);
        g.coeffs[static_cast<std::size_t>(n)] *= scale;
    }
    return g;
}

} // namespace

GafSample sample_gaf(std::uint64_t seed, int max_degree, double tail_tol)
{
    if (max_degree < 0) {
        throw DomainError("degree must be nonnegative");
    }
    return draw(seed, max_degree, tail_tol, valid_radius_for_degree(max_degree, tail_tol));
}

GafSample sample_gaf_on_disk(std::uint64_t seed, double radius, double tail_tol)
{
    return draw(seed, truncation_degree(radius, tail_tol), tail_tol, radius);
}

GafSample sample_gaf(std::uint64_t seed, const GafPlan& plan)
{
    return draw(seed, plan.max_degree, plan.tail_tol, plan.valid_radius);
}

GafPlan GafPlan::for_radius(double radius, double tail_tol)
{
    return {truncation_degree(radius, tail_tol), radius, tail_tol};
}

NoisyField::NoisyField(SignalModel signal, GafSample noise)
    : signal_(std::move(signal)), noise_(std::move(noise)), has_signal_(!is_zero_signal(signal_))
{
    validate(signal_);
}

void NoisyField::check_radius(cplx z) const
{
    if (!(std::abs(z) <= noise_.valid_radius * (1.0 + 1e-12))) {
        throw DomainError("field evaluated at |z| = " + std::to_string(std::abs(z))
                          + " beyond the truncation radius " + std::to_string(noise_.valid_radius));
    }
}

cplx NoisyField::value(cplx z) const
{
    check_radius(z);
    cplx v = noise_.value(z);
    if (has_signal_) {
        v += analytic::bargmann(signal_, z);
    }
    return v;
}

cplx NoisyField::derivative(cplx z) const
{
    return value_and_derivative(z).second;
}

std::pair<cplx, cplx> NoisyField::value_and_derivative(cplx z) const
{
    check_radius(z);
    auto [v, d] = noise_.value_and_derivative(z);
    if (has_signal_) {
        v += analytic::bargmann(signal_, z);
        d += analytic::bargmann_derivative(signal_, z);
    }
    return {v, d};
}

cplx eval_field(const NoisyField& field, cplx z)
{
    return field.value(z);
}

double noisy_spectrogram(const NoisyField& field, TFPoint p)
{
    const cplx z = p.z();
    return std::exp(-pi * std::norm(z)) * std::norm(field.value(std::conj(z)));
}

} // namespace tfz::noise
