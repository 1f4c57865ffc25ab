#include <gtest/gtest.h>

#include <cmath>

#include "tfz/contour.hpp"
#include "tfz/error.hpp"
#include "tfz/signal.hpp"

using namespace tfz;

TEST(Signal, ConstructorsRejectBadParameters)
{
    EXPECT_THROW(make_hermite(-1, 1.0), DomainError);
    EXPECT_THROW(make_hermite(1, -0.5), DomainError);
    EXPECT_THROW(make_linear_chirp(0.0, 0.0, -1.0), DomainError);
    EXPECT_THROW(make_chirp_pair(1.0, 1.0, 0.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(make_chirp_pair(0.0, 1.0, 0.0, -1.0, 1.0), DomainError);
    EXPECT_NO_THROW(make_hermite(0, 0.0));
}

TEST(Signal, FamilyAndZeroSignal)
{
    EXPECT_EQ(family_name(make_hermite(2, 1.0)), "hermite");
    EXPECT_EQ(family_name(make_linear_chirp(0, 0, 1.0)), "chirp");
    EXPECT_EQ(family_name(make_chirp_pair(0, 1, 0, 1, 1)), "pair");
    EXPECT_TRUE(is_zero_signal(make_hermite(3, 0.0)));
    EXPECT_TRUE(is_zero_signal(make_chirp_pair(0, 1, 0, 0, 0)));
    EXPECT_FALSE(is_zero_signal(make_chirp_pair(0, 1, 0, 0, 2)));
}

TEST(Signal, SigmaB)
{
    EXPECT_DOUBLE_EQ(sigma_b(0.0), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(sigma_b(0.5), 1.0);
}

TEST(ChirpFrameTest, RoundTripAndIsometry)
{
    for (double b : {0.0, 0.4, -3.0, 250.0}) {
        const ChirpFrame f = ChirpFrame::for_pair(make_chirp_pair(-1.0, 0.5, b, 1.0, 2.0));
        const TFPoint p{0.3, -1.7}, q{-2.2, 0.9};
        const TFPoint back = f.to_tf(f.to_rs(p));
        EXPECT_NEAR(back.tau, p.tau, 1e-12);
        EXPECT_NEAR(back.omega, p.omega, 1e-12);
        const RSPoint a = f.to_rs(p), c = f.to_rs(q);
        EXPECT_NEAR(std::hypot(a.r - c.r, a.s - c.s), std::abs(p.z() - q.z()), 1e-12);
    }
}

TEST(ChirpFrameTest, DistanceToAxis)
{
    // r = (sigma_b / sqrt2)(omega - (a + 2 b tau)) for a single chirp
    const double a = 0.7, b = 0.4;
    const ChirpFrame f = ChirpFrame::for_chirp(make_linear_chirp(a, b, 1.0));
    for (TFPoint p : {TFPoint{0.0, 0.0}, TFPoint{1.2, -0.4}, TFPoint{-2.0, 3.0}}) {
        const double expect = sigma_b(b) / std::sqrt(2.0) * (p.omega - (a + 2 * b * p.tau));
        EXPECT_NEAR(f.to_rs(p).r, expect, 1e-13);
    }
    const ChirpFrame g = ChirpFrame::for_pair(make_chirp_pair(-1.0, 0.0, b, 1.0, 1.0));
    EXPECT_NEAR(g.distance(), sigma_b(b) / std::sqrt(2.0), 1e-15);
}

TEST(ContourTest, CircleBasics)
{
    const Contour c = Contour::circle({1.0, 2.0}, 0.5, 64);
    EXPECT_NEAR(c.length(), pi, 1e-15);
    EXPECT_NEAR(std::abs(c.point(0.0) - c.point(1.0)), 0.0, 1e-15);
    EXPECT_TRUE(c.contains({1.0, 2.0}));
    EXPECT_FALSE(c.contains({1.6, 2.0}));
    EXPECT_EQ(c.sample().size(), 64u);
    EXPECT_NEAR(c.max_modulus(), std::abs(cplx(1.0, 2.0)) + 0.5, 1e-15);
    // counterclockwise
    EXPECT_GT(c.point(0.25).imag(), 2.0);
    const Contour m = c.conjugate();
    EXPECT_TRUE(m.contains({1.0, -2.0}));
    EXPECT_GT(m.point(0.25).imag(), -2.0);
}

TEST(ContourTest, PolygonOrientationAndCorners)
{
    const Contour cw = Contour::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, 16);
    EXPECT_GT(cw.point(0.1).real(), 0.0); // stored counterclockwise: leaves along +x
    EXPECT_NEAR(cw.point(0.1).imag(), 0.0, 1e-15);
    EXPECT_NEAR(cw.length(), 4.0, 1e-15);
    const auto pts = cw.sample(10);
    for (cplx corner : {cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)}) {
        bool found = false;
        for (cplx p : pts) {
            found = found || std::abs(p - corner) < 1e-15;
        }
        EXPECT_TRUE(found);
    }
    EXPECT_TRUE(cw.contains({0.5, 0.5}));
    EXPECT_FALSE(cw.contains({1.5, 0.5}));
}

TEST(ContourTest, RejectsDegenerateShapes)
{
    EXPECT_THROW(Contour::rectangle(1, 0, 0, 1), DomainError);
    EXPECT_THROW(Contour::polygon({{0, 0}, {1, 0}}), DomainError);
    EXPECT_THROW(Contour::circle({0, 0}, -1.0), DomainError);
    EXPECT_THROW(Contour::circle({0, 0}, 1.0, 0), DomainError);
}

TEST(ContourTest, RectangleCnCorners)
{
    const ChirpPair p = make_chirp_pair(0.0, 1.0, 0.0, 1.0, 1.0);
    const Contour c = Contour::rectangle_cn(p, 2);
    const ChirpFrame f = ChirpFrame::for_pair(p);
    const double a = f.distance();
    EXPECT_TRUE(c.contains(f.to_tf({0.5 * a, 2.5 / a}).z()));
    EXPECT_FALSE(c.contains(f.to_tf({0.5 * a, 1.5 / a}).z()));
    EXPECT_NEAR(c.length(), 2 * a + 2 / a, 1e-12);
}
