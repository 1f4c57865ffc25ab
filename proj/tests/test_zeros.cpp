#include <gtest/gtest.h>

#include <cmath>

#include "tfz/analytic.hpp"
#include "tfz/error.hpp"
#include "tfz/zeros.hpp"

using namespace tfz;
namespace zs = tfz::zeros;
namespace nz = tfz::noise;

namespace {

zs::HolomorphicField poly(std::function<cplx(cplx)> f)
{
    zs::HolomorphicField h;
    h.value = std::move(f);
    return h;
}

nz::NoisyField noisy(const SignalModel& s, std::uint64_t seed, double radius)
{
    return nz::NoisyField(s, nz::sample_gaf(seed, nz::GafPlan::for_radius(radius + 1.0)));
}

} // namespace

TEST(Winding, ElementaryFields)
{
    const Contour unit = Contour::circle({0, 0}, 1.0);
    for (int k = 0; k <= 5; ++k) {
        EXPECT_EQ(zs::winding_number(poly([k](cplx z) { return std::pow(z, k); }), unit), k);
    }
    EXPECT_EQ(zs::winding_number(poly([](cplx z) { return z - cplx(0.3, 0.4); }), unit), 1);
    EXPECT_EQ(zs::winding_number(poly([](cplx z) { return z - cplx(1.3, 0.4); }), unit), 0);
}

TEST(Winding, ZeroOnContourIsReported)
{
    const Contour unit = Contour::circle({0, 0}, 1.0);
    EXPECT_THROW(zs::winding_number(poly([](cplx z) { return z - 1.0; }), unit), ContourError);
}

TEST(Winding, NoiselessPairRectangles)
{
    const ChirpPair p = make_chirp_pair(-1.0, 0.0, 0.4, 100.0, 40.0);
    const auto f = zs::tf_field(SignalModel{p});
    for (int n : {-2, 0, 3}) {
        EXPECT_EQ(zs::winding_number(f, Contour::rectangle_cn(p, n)), 1) << n;
    }
}

TEST(Winding, HermiteOrigin)
{
    for (int k = 1; k <= 5; ++k) {
        const auto f = zs::tf_field(SignalModel{make_hermite(k, 1.0)});
        EXPECT_EQ(zs::winding_number(f, Contour::circle({0, 0}, 0.3)), k);
    }
}

TEST(FindZeros, HermiteMultipleZero)
{
    const auto f = zs::tf_field(SignalModel{make_hermite(3, 1.0)});
    const auto res = zs::find_zeros(f, {{-1, -1, 1, 1}, 16});
    ASSERT_EQ(res.zeros.size(), 1u);
    EXPECT_EQ(res.zeros[0].multiplicity, 3);
    EXPECT_EQ(res.total_count, 3);
    EXPECT_LT(std::abs(res.zeros[0].location), 1e-6);
}

TEST(FindZeros, PairLattice)
{
    const ChirpPair p = make_chirp_pair(0.0, 1.0, 0.0, 1.0, 1.0);
    const ChirpFrame fr = ChirpFrame::for_pair(p);
    const auto f = zs::tf_field(SignalModel{p});
    const auto res = zs::find_zeros(f, {{0.05, -1.0, 2.95, 2.0}, 16});
    ASSERT_EQ(res.zeros.size(), 3u);
    const double a = fr.distance();
    for (int m = 0; m < 3; ++m) {
        const TFPoint expect = fr.to_tf({a / 2, (m + 0.5) / a});
        EXPECT_LT(std::abs(res.zeros[static_cast<std::size_t>(m)].location - expect.z()), 1e-8);
        EXPECT_EQ(res.zeros[static_cast<std::size_t>(m)].multiplicity, 1);
    }
}

TEST(FindZeros, ZeroOnGridLineIsRecoveredByJitter)
{
    const cplx z0(0.5, 0.5);
    auto f = poly([z0](cplx z) { return (z - z0) * (z + 2.0); });
    const auto res = zs::find_zeros(f, {{0, 0, 1, 1}, 8});
    ASSERT_EQ(res.zeros.size(), 1u);
    EXPECT_LT(std::abs(res.zeros[0].location - z0), 1e-12);
}

TEST(FindZeros, ZeroOnDomainBoundaryFails)
{
    auto f = poly([](cplx z) { return z - cplx(0.0, 0.5); });
    EXPECT_THROW(zs::find_zeros(f, {{0, 0, 1, 1}, 8}), ContourError);
}

TEST(FindZeros, GridValidation)
{
    auto f = poly([](cplx z) { return z; });
    EXPECT_THROW(zs::find_zeros(f, {{0, 0, 1, 1}, 4}), DomainError);
    EXPECT_THROW(zs::find_zeros(f, {{1, 0, 0, 1}, 16}), DomainError);
}

TEST(FindZeros, PureNoiseUnitSquare)
{
    const int n = 10000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto field = noisy(make_hermite(0, 0.0), nz::derive_seed(5, static_cast<std::uint64_t>(i)), 0.75);
        const auto res = zs::find_zeros(zs::tf_field(field), {{-0.5, -0.5, 0.5, 0.5}, 8});
        sum += res.total_count;
        sq += res.total_count * res.total_count;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
    EXPECT_LE(std::abs(mean - 1.0), 3 * se);
}

TEST(CountIn, Examples)
{
    EXPECT_EQ(zs::count_in({}, Contour::circle({0, 0}, 1.0)), 0);
    const auto f = zs::tf_field(SignalModel{make_hermite(2, 1.0)});
    const auto res = zs::find_zeros(f, {{-1, -1, 1, 1}, 16});
    EXPECT_EQ(zs::count_in(res, Contour::circle({0, 0}, std::sqrt(2.0 / pi))), 2);
    EXPECT_EQ(zs::count_in(res, Contour::circle({0.7, 0.7}, 0.2)), 0);
}

TEST(Properties, Conservation)
{
    // split lines are placed as far as possible from the zeros, so that no
    // cell boundary passes through one
    const auto split = [](const std::vector<double>& coords) {
        double best = 0.0, gap = -1.0;
        for (double c = -0.6; c <= 0.6; c += 0.05) {
            double d = INFINITY;
            for (double x : coords) {
                d = std::min(d, std::abs(x - c));
            }
            if (d > gap) {
                gap = d;
                best = c;
            }
        }
        return best;
    };
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto field = noisy(make_linear_chirp(0.0, 0.3, 20.0), seed, 1.5);
        const auto f = zs::tf_field(field);
        const auto found = zs::find_zeros(f, {{-1.0, -1.0, 1.0, 1.0}, 8});
        std::vector<double> xs, ys;
        for (const auto& z : found.zeros) {
            xs.push_back(z.location.real());
            ys.push_back(z.location.imag());
        }
        const double sx = split(xs), sy = split(ys);
        const int whole = zs::winding_number(f, Contour::rectangle(-1.0, -1.0, 1.0, 1.0));
        int parts = 0;
        for (auto [x0, x1] : {std::pair{-1.0, sx}, std::pair{sx, 1.0}}) {
            for (auto [y0, y1] : {std::pair{-1.0, sy}, std::pair{sy, 1.0}}) {
                parts += zs::winding_number(f, Contour::rectangle(x0, y0, x1, y1));
            }
        }
        EXPECT_EQ(parts, whole) << "seed " << seed;
        EXPECT_EQ(found.total_count, whole) << "seed " << seed;
    }
}

TEST(Properties, RoucheConsistency)
{
    const ChirpPair pair = make_chirp_pair(0.0, std::sqrt(2.0 / pi), 0.0, 200.0, 200.0);
    const std::vector<std::pair<SignalModel, Contour>> cases = {
        {make_hermite(1, 200.0), Contour::circle({0, 0}, std::sqrt(1 / pi))},
        {make_hermite(2, 200.0), Contour::circle({0, 0}, std::sqrt(2 / pi))},
        {make_hermite(3, 200.0), Contour::circle({0, 0}, std::sqrt(3 / pi))},
        {pair, Contour::rectangle_cn(pair, 0)},
    };
    for (const auto& [signal, region] : cases) {
        const double radius = region.max_modulus();
        const auto pts = region.sample(4096);
        double min_signal = INFINITY;
        for (cplx z : pts) {
            min_signal = std::min(min_signal, analytic::spectrogram(signal, TFPoint::from(z)));
        }
        const int clean = zs::winding_number(zs::tf_field(signal), region);
        int applicable = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto gaf = nz::sample_gaf(seed, nz::GafPlan::for_radius(radius + 1.0));
            const nz::NoisyField pure(make_hermite(0, 0.0), gaf);
            double max_noise = 0.0;
            for (cplx z : pts) {
                max_noise = std::max(max_noise, nz::noisy_spectrogram(pure, TFPoint::from(z)));
            }
            if (!(max_noise < min_signal)) {
                continue;
            }
            ++applicable;
            EXPECT_EQ(zs::winding_number(zs::tf_field(nz::NoisyField(signal, gaf)), region), clean)
                << family_name(signal) << " seed " << seed;
        }
        EXPECT_GT(applicable, 0) << family_name(signal);
    }
}

TEST(Properties, NewtonContractsQuadratically)
{
    const auto field = noisy(make_hermite(1, 3.0), 17, 1.0);
    const auto f = zs::tf_field(field);
    const auto res = zs::find_zeros(f, {{-1, -1, 1, 1}, 8});
    ASSERT_FALSE(res.zeros.empty());
    for (const auto& z0 : res.zeros) {
        ASSERT_EQ(z0.multiplicity, 1);
        cplx z = z0.location + cplx(2e-3, -1e-3);
        std::vector<double> err;
        for (int i = 0; i < 4; ++i) {
            err.push_back(std::abs(z - z0.location));
            const auto [v, d] = f.evaluate_with_derivative(z);
            z -= v / d;
        }
        // e_{k+1} <= C e_k^2 with a modest C, until rounding takes over
        for (std::size_t i = 0; i + 1 < err.size() && err[i] > 1e-7; ++i) {
            EXPECT_LE(err[i + 1], 1e3 * err[i] * err[i]) << "step " << i;
        }
    }
}

TEST(Properties, NoisyZerosAreSimple)
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto field = noisy(make_linear_chirp(0.0, 0.4, 30.0), nz::derive_seed(99, seed), 1.5);
        const auto res = zs::find_zeros(zs::tf_field(field), {{-1, -1, 1, 1}, 8});
        for (const auto& z : res.zeros) {
            ASSERT_EQ(z.multiplicity, 1) << "seed " << seed;
            EXPECT_LE(z.residual, 1e-10);
        }
    }
}

TEST(Properties, EqualSeedsEqualZeroSets)
{
    const auto a = zs::find_zeros(zs::tf_field(noisy(make_hermite(2, 10.0), 7, 1.5)), {{-1.5, -1.5, 1.5, 1.5}, 8});
    const auto b = zs::find_zeros(zs::tf_field(noisy(make_hermite(2, 10.0), 7, 1.5)), {{-1.5, -1.5, 1.5, 1.5}, 8});
    ASSERT_EQ(a.zeros.size(), b.zeros.size());
    for (std::size_t i = 0; i < a.zeros.size(); ++i) {
        EXPECT_EQ(a.zeros[i].location, b.zeros[i].location);
        EXPECT_EQ(a.zeros[i].multiplicity, b.zeros[i].multiplicity);
    }
}

TEST(Field, FiniteDifferenceFallback)
{
    auto f = poly([](cplx z) { return z * z * z; });
    const auto [v, d] = f.evaluate_with_derivative({0.5, 0.5});
    EXPECT_EQ(v, std::pow(cplx(0.5, 0.5), 3));
    EXPECT_LT(std::abs(d - 3.0 * cplx(0.5, 0.5) * cplx(0.5, 0.5)), 1e-8);
}
