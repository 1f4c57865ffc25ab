#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "tfz/error.hpp"
#include "tfz/io.hpp"

using namespace tfz;

TEST(Io, Fnv1a)
{
    EXPECT_EQ(io::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(io::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(io::hex64(0xabcULL), "0000000000000abc");
}

TEST(Io, DoublesRoundTrip)
{
    for (double v : {0.1, -1e-300, 1.0 / 3.0, 6.02214076e23}) {
        EXPECT_EQ(std::stod(io::format_double(v)), v);
    }
    EXPECT_EQ(io::format_double(NAN), "nan");
    EXPECT_EQ(io::format_double(-INFINITY), "-inf");
}

TEST(Io, GafRecordRoundTrip)
{
    const auto g = noise::sample_gaf(77, 25);
    const auto j = io::json::parse(io::to_json(g).dump());
    const auto back = io::gaf_from_json(j);
    EXPECT_EQ(back.seed, g.seed);
    EXPECT_EQ(back.max_degree, g.max_degree);
    EXPECT_EQ(back.valid_radius, g.valid_radius);
    EXPECT_EQ(back.coeffs, g.coeffs);

    auto bad = j;
    bad["max_degree"] = 3;
    EXPECT_THROW(io::gaf_from_json(bad), DomainError);
    EXPECT_THROW(io::gaf_from_json(io::json{{"seed", 1}}), DomainError);
}

TEST(Io, MetaEverywhere)
{
    const io::Meta meta{"zeros", 0x1234, 9};
    const auto doc = io::document(meta, "zeros", io::to_json(zeros::ZeroSet{}));
    EXPECT_EQ(doc["meta"]["version"], io::version());
    EXPECT_EQ(doc["meta"]["config_hash"], "0000000000001234");
    EXPECT_EQ(doc["meta"]["master_seed"], 9);
    EXPECT_EQ(doc["schema_version"], io::schema_version);

    std::ostringstream os;
    zeros::ZeroSet zs;
    zs.zeros.push_back({{0.5, -0.25}, 1, 1e-17});
    zs.total_count = 1;
    io::write_zeros_csv(os, zs, meta);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "# tfzeros " + io::version() + " kind=zeros config_hash=0000000000001234 master_seed=9");
    std::getline(is, line);
    EXPECT_EQ(line, "tau,omega,multiplicity,residual");
    std::getline(is, line);
    EXPECT_EQ(line, "0.5,-0.25,1,1e-17");
}

TEST(Io, HistogramColumns)
{
    experiments::HistogramSpec g;
    g.domain = {0, 0, 1, 1};
    g.bin_width = 0.5;
    const auto h = experiments::analytic_histogram(make_hermite(0, 0.0), g);
    std::ostringstream os;
    io::write_histogram_csv(os, h, {"intensity", 1, 1});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    EXPECT_EQ(line, "bin_center_tau,bin_center_omega,count,density_estimate,se,analytic_density");

    experiments::HistogramSpec r;
    r.reduction = experiments::Reduction::radial;
    r.edges = {0, 1};
    std::ostringstream rs;
    io::write_analytic_csv(rs, experiments::analytic_histogram(make_hermite(1, 1.0), r), {"intensity", 1, 1});
    EXPECT_NE(rs.str().find("\nbin_lo,bin_hi,analytic_density\n"), std::string::npos);
}

TEST(Io, KeysAreSorted)
{
    const auto j = io::to_json(SignalModel{make_chirp_pair(0, 1, 0.5, 2, 3)});
    EXPECT_EQ(j.dump(), R"({"a1":0.0,"a2":1.0,"b":0.5,"family":"pair","gamma1":2.0,"gamma2":3.0})");
}
