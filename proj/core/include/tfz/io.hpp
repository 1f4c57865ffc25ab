#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tfz/contour.hpp"
#include "tfz/experiments.hpp"
#include "tfz/noise.hpp"
#include "tfz/signal.hpp"
#include "tfz/validate.hpp"
#include "tfz/zeros.hpp"

/// CSV and JSON records. Output depends only on its inputs: keys are sorted,
/// doubles are written with round-trip precision and nothing time-dependent is
/// embedded, so equal runs give equal bytes.
namespace tfz::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

std::string version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Provenance stamped on every output file.
struct Meta {
    std::string kind;
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
};

json meta_json(const Meta& meta);
/// "# tfzeros <version> kind=... config_hash=... master_seed=..." plus newline.
std::string csv_comment(const Meta& meta);

/// Shortest text that reads back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

json to_json(const SignalModel& signal);
json to_json(const Contour& contour);
json to_json(const zeros::Rect& rect);
json to_json(const noise::GafSample& sample);
json to_json(const zeros::ZeroSet& zs);
json to_json(const analytic::AssumptionCheck& check);
json to_json(const analytic::BoundReport& bound);
json to_json(const experiments::CountStatistics& stats);
json to_json(const experiments::SupremumEstimate& sup);
json to_json(const experiments::SupTailTable& table);
json to_json(const experiments::TrappingReport& report);
json to_json(const validation::CheckResult& check);
/// Summary of a histogram (bin values go to CSV).
json histogram_summary(const experiments::IntensityHistogram& h);

/// Inverse of to_json(GafSample); throws DomainError on malformed records.
noise::GafSample gaf_from_json(const json& j);

/// Document = {"meta": ..., "schema_version": ..., "<key>": payload}.
json document(const Meta& meta, const std::string& key, json payload);

/// tau,omega,multiplicity,residual
void write_zeros_csv(std::ostream& os, const zeros::ZeroSet& zs, const Meta& meta);
/// Empirical bins: bin_center_tau,bin_center_omega,count,density_estimate,se,analytic_density
/// for grids; bin_lo,bin_hi,count,density_estimate,se,analytic_density for profiles.
void write_histogram_csv(std::ostream& os, const experiments::IntensityHistogram& h, const Meta& meta);
/// Closed-form values only: bin_center_tau,bin_center_omega,analytic_density (or bin_lo,bin_hi,...).
void write_analytic_csv(std::ostream& os, const experiments::IntensityHistogram& h, const Meta& meta);
/// tau,omega,spectrogram over a regular grid of `step`.
struct SpectrogramSample {
    double tau = 0.0;
    double omega = 0.0;
    double value = 0.0;
};
void write_spectrogram_csv(std::ostream& os, const std::vector<SpectrogramSample>& grid, const Meta& meta);

} // namespace tfz::io
