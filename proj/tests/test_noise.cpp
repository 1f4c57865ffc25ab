#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tfz/analytic.hpp"
#include "tfz/error.hpp"
#include "tfz/noise.hpp"

using namespace tfz;
namespace nz = tfz::noise;

namespace {

// mean and standard error of a sample
struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

Moments moments(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m += x;
    }
    m /= static_cast<double>(v.size());
    double q = 0.0;
    for (double x : v) {
        q += (x - m) * (x - m);
    }
    const double var = q / static_cast<double>(v.size() - 1);
    return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

} // namespace

TEST(Truncation, Degrees)
{
    EXPECT_EQ(nz::truncation_degree(0.1, 1e-12), 6);
    EXPECT_EQ(nz::truncation_degree(1.0, 1e-12), 22);
    EXPECT_EQ(nz::truncation_degree(3.0, 1e-12), 73);
    EXPECT_LE(nz::truncation_degree(1e-6, 1e-12), 40);
    EXPECT_LE(nz::poisson_upper_tail(pi * 9.0, 73), 1e-12);
    EXPECT_GT(nz::poisson_upper_tail(pi * 9.0, 72), 1e-12);
    for (double r : {0.3, 1.0, 2.5}) {
        EXPECT_GE(nz::truncation_degree(r, 1e-12), nz::truncation_degree(r, 1e-11));
        EXPECT_LE(nz::truncation_degree(r, 1e-12), nz::truncation_degree(r + 0.5, 1e-12));
        const int n = nz::truncation_degree(r);
        EXPECT_GE(nz::valid_radius_for_degree(n), r);
    }
    EXPECT_THROW(nz::truncation_degree(-1.0), DomainError);
    EXPECT_THROW(nz::truncation_degree(1.0, 0.0), DomainError);
}

TEST(Truncation, PoissonTail)
{
    EXPECT_NEAR(nz::poisson_upper_tail(1.0, 0), 1.0 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(nz::poisson_upper_tail(2.0, 1), 1.0 - 3.0 * std::exp(-2.0), 1e-15);
}

TEST(Seeds, SplitMix)
{
    EXPECT_EQ(nz::splitmix64(0), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(nz::derive_seed(7, 3), nz::splitmix64(nz::splitmix64(7) ^ nz::splitmix64(3)));
    EXPECT_NE(nz::derive_seed(7, 3), nz::derive_seed(7, 4));
}

TEST(Gaf, Determinism)
{
    const auto a = nz::sample_gaf(42, 30);
    const auto b = nz::sample_gaf(42, 30);
    ASSERT_EQ(a.coeffs.size(), 31u);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        EXPECT_EQ(a.coeffs[i], b.coeffs[i]);
    }
    EXPECT_NE(nz::sample_gaf(43, 30).coeffs[0], a.coeffs[0]);
    const auto plan = nz::GafPlan::for_radius(2.0);
    const auto c = nz::sample_gaf(42, plan);
    const auto d = nz::sample_gaf(42, plan.max_degree);
    EXPECT_EQ(c.coeffs, d.coeffs);
}

TEST(Gaf, CoefficientScaling)
{
    const auto xi = nz::standard_coefficients(5, 12);
    const auto g = nz::sample_gaf(5, 12);
    double f = 1.0;
    for (int n = 0; n <= 12; ++n) {
        if (n > 0) {
            f *= n;
        }
        const double w = std::sqrt(std::pow(pi, n) / f);
        EXPECT_NEAR(std::abs(g.coeffs[n] - xi[n] * w), 0.0, 1e-14 * std::max(1.0, std::abs(g.coeffs[n])));
    }
}

TEST(Gaf, ValueAndDerivative)
{
    const auto g = nz::sample_gaf(9, 40);
    const cplx z(0.4, -0.6);
    const auto [v, d] = g.value_and_derivative(z);
    EXPECT_EQ(v, g.value(z));
    const double h = 1e-6;
    const cplx fd = (g.value(z + h) - g.value(z - h)) / (2 * h);
    EXPECT_LT(std::abs(fd - d), 1e-6 * std::abs(d));
}

TEST(Gaf, KernelReproduction)
{
    const int n = 100000;
    const auto plan = nz::GafPlan::for_radius(3.0);
    const std::pair<cplx, cplx> pairs[] = {{{1, 0}, {1, 0}},
                                           {{0.5, 0.3}, {-0.2, 0.7}},
                                           {{-1.2, 0.4}, {-1.0, 0.1}},
                                           {{0.0, 1.5}, {0.3, 1.2}},
                                           {{1.4, -1.0}, {1.1, -1.3}}};
    std::vector<std::vector<double>> re(5), im(5);
    std::vector<double> mean_re;
    std::vector<double> field_at;
    std::vector<std::vector<double>> real_part(5);
    for (int s = 0; s < n; ++s) {
        const auto g = nz::sample_gaf(nz::derive_seed(11, static_cast<std::uint64_t>(s)), plan);
        for (int i = 0; i < 5; ++i) {
            const cplx fz = g.value(pairs[i].first);
            const cplx fw = g.value(pairs[i].second);
            const cplx prod = fz * std::conj(fw);
            re[i].push_back(prod.real());
            im[i].push_back(prod.imag());
            real_part[i].push_back(std::exp(-pi * std::norm(pairs[i].first) / 2) * fz.real());
        }
        mean_re.push_back(g.value({0.5, 0.3}).real());
        field_at.push_back(std::norm(g.value(0.0)));
    }
    for (int i = 0; i < 5; ++i) {
        const cplx k = std::exp(pi * pairs[i].first * std::conj(pairs[i].second));
        const Moments mr = moments(re[i]), mi = moments(im[i]);
        EXPECT_LE(std::abs(mr.mean - k.real()), 3 * mr.se) << "pair " << i;
        EXPECT_LE(std::abs(mi.mean - k.imag()), 3 * mi.se) << "pair " << i;
        // e^{-pi|z|^2/2} Re B has variance 1/2
        std::vector<double> sq;
        for (double x : real_part[i]) {
            sq.push_back(x * x);
        }
        const Moments v = moments(sq);
        EXPECT_LE(std::abs(v.mean - 0.5), 3 * v.se) << "point " << i;
    }
    const Moments m = moments(mean_re);
    EXPECT_LE(std::abs(m.mean), 3 * m.se);
    // |B(0)|^2 = |xi_0|^2 is exponential with mean 1
    const Moments e = moments(field_at);
    EXPECT_LE(std::abs(e.mean - 1.0), 3 * e.se);
}

TEST(Field, Examples)
{
    const auto zero = nz::GafSample::zeros(20, 1.0);
    const nz::NoisyField empty(make_hermite(0, 0.0), zero);
    EXPECT_EQ(nz::eval_field(empty, {0.3, 0.2}), cplx(0.0, 0.0));

    const SignalModel h = make_hermite(2, 4.0);
    const nz::NoisyField clean(h, zero);
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.7, 0.3)}) {
        EXPECT_EQ(nz::eval_field(clean, z), analytic::bargmann(h, z));
    }
    const double r = clean.valid_radius();
    EXPECT_THROW(nz::eval_field(clean, r + 0.1), DomainError);
}

TEST(Field, NoisySpectrogram)
{
    const int k = 3;
    const double gamma = 2.5;
    const nz::NoisyField clean(make_hermite(k, gamma), nz::GafSample::zeros(30, 2.0));
    for (TFPoint p : {TFPoint{0.3, 0.4}, TFPoint{-1.0, 0.2}}) {
        const double r2 = std::norm(p.z());
        const double expect = gamma * std::pow(pi, k) * std::pow(r2, k) * std::exp(-pi * r2) / 6.0;
        EXPECT_NEAR(nz::noisy_spectrogram(clean, p), expect, 1e-13 * std::max(1.0, expect));
    }
    const nz::NoisyField noisy(make_linear_chirp(0.2, 0.4, 10.0), nz::sample_gaf_on_disk(3, 2.0));
    for (double x = -1.4; x <= 1.4; x += 0.2) {
        EXPECT_GE(nz::noisy_spectrogram(noisy, {x, 0.5 * x}), 0.0);
    }
}

TEST(Gaf, PlanDegree)
{
    const auto plan = nz::GafPlan::for_radius(2.0, 1e-10);
    EXPECT_EQ(plan.max_degree, nz::truncation_degree(2.0, 1e-10));
    EXPECT_GE(plan.valid_radius, 2.0);
}
