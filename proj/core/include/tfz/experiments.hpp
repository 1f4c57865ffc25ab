#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tfz/analytic.hpp"
#include "tfz/contour.hpp"
#include "tfz/noise.hpp"
#include "tfz/zeros.hpp"

/// Monte Carlo over realizations of the noise field. Realization i always uses
/// noise::derive_seed(master_seed, i) and results are reduced in index order, so
/// every report is bit-identical whatever the thread count.
namespace tfz::experiments {

/// Runs fn(0) .. fn(n-1) on up to `threads` workers (0: hardware concurrency).
/// The first exception thrown by fn stops the run and is rethrown.
template <class Fn>
void run_indexed(std::size_t n, int threads, Fn&& fn)
{
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back(work);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

struct RunOptions {
    int threads = 0;
    /// Grid lines per unit length of the zero search.
    double search_resolution = 8.0;
    zeros::FindOptions find{};
    double tail_tol = noise::default_tail_tol;
    /// Gap between the analysis region and the truncation radius of the noise.
    double margin = noise::default_margin;
    /// Largest tolerated fraction of realizations dropped after numerical failures.
    double max_excluded_fraction = 1e-3;
};

/// Realizations dropped after a zero-finder failure.
struct Exclusions {
    std::vector<std::uint64_t> seeds;
    std::size_t count() const noexcept { return seeds.size(); }
};

enum class Reduction {
    /// 2D bins of the time-frequency rectangle.
    grid,
    /// Annuli in r = pi |z|^2 around the origin.
    radial,
    /// Bands in |r|, the distance to a chirp axis, over a window of s.
    chirp_distance,
};

struct HistogramSpec {
    Reduction reduction = Reduction::grid;
    /// grid: the binned rectangle.
    zeros::Rect domain;
    /// grid: bin side length.
    double bin_width = 0.25;
    /// radial, chirp_distance: bin edges, increasing.
    std::vector<double> edges;
    /// chirp_distance: range of s along the axis.
    double s0 = -0.5;
    double s1 = 0.5;
};

struct Bin {
    /// Center of the bin (grid) or the profile coordinate in `tau` (profiles).
    TFPoint center;
    double lo = 0.0;
    double hi = 0.0;
    /// Time-frequency area of the bin.
    double area = 0.0;
    long long count = 0;
    /// Bin average of the closed-form intensity.
    double analytic = 0.0;
};

struct IntensityHistogram {
    SignalModel signal;
    HistogramSpec spec;
    zeros::GridSpec search;
    std::vector<Bin> bins;
    /// grid reduction: bins per row and number of rows (row-major, omega rows).
    int nx = 0;
    int ny = 0;
    int n_realizations = 0;
    std::uint64_t master_seed = 0;
    Exclusions excluded;

    int used_realizations() const noexcept
    {
        return n_realizations - static_cast<int>(excluded.count());
    }
    double density(const Bin& b) const;
    /// sqrt(max(count, 1)) / (n area): Poisson error of the mean count, never
    /// below the resolution of a single zero.
    double std_error(const Bin& b) const;
    /// Fraction of bins whose estimate is more than z standard errors off the
    /// closed form.
    double fraction_outside(double z = 3.0) const;
    /// max |density - analytic| / SE over the bins.
    double max_standardized_deviation() const;
};

/// Closed-form bin layout with the empirical fields left empty.
IntensityHistogram analytic_histogram(const SignalModel& signal, const HistogramSpec& spec);

IntensityHistogram empirical_intensity(const SignalModel& signal, const HistogramSpec& spec,
                                       int n, std::uint64_t master_seed,
                                       const RunOptions& options = {});

struct CountStatistics {
    int n_realizations = 0;
    double mean = 0.0;
    double variance = 0.0;
    /// max(sqrt(variance / n), 1 / n)
    double std_error = 0.0;
    std::map<int, long long> histogram;
    Exclusions excluded;
};

/// Zero counts inside `region` by the winding number of the noisy field around it.
CountStatistics count_statistics(const SignalModel& signal, const Contour& region, int n,
                                 std::uint64_t master_seed, const RunOptions& options = {});

inline constexpr int min_sup_points_per_length = 64;

struct SupremumEstimate {
    /// Finer (doubled) discretization; the value used downstream.
    double mean = 0.0;
    double std_error = 0.0;
    int n_realizations = 0;
    int discretization = 0;
    /// Same realizations at the requested discretization.
    double coarse_mean = 0.0;
    double coarse_std_error = 0.0;
    int coarse_discretization = 0;
    /// |mean - coarse_mean| <= 2 std_error.
    bool doubling_consistent = false;
    std::uint64_t master_seed = 0;
};

/// Per-realization sup over the sampled contour of F(z) = e^{-pi|z|^2/2} Re B(xi)(z).
std::vector<double> contour_sups(const Contour& contour, int n, int discretization,
                                 std::uint64_t master_seed, const RunOptions& options = {});

/// Estimates M_C = E[sup_C F]. Throws DomainError when the discretization has
/// fewer than 64 points per unit length.
SupremumEstimate estimate_sup_mean(const Contour& contour, int n, int discretization,
                                   std::uint64_t master_seed, const RunOptions& options = {});

struct SupTailRow {
    double u = 0.0;
    double frequency = 0.0;
    double std_error = 0.0;
    double bound = 1.0;
    bool pass = false;
};

struct SupTailTable {
    SupremumEstimate sup;
    std::vector<SupTailRow> rows;
    bool all_pass() const;
};

/// Empirical P(sup_C F > u) for u = M_hat + offset, against exp(-(u - M_hat)^2).
/// Offsets must be nonnegative.
SupTailTable sup_tail_check(const Contour& contour, const std::vector<double>& u_offsets, int n,
                            int discretization, std::uint64_t master_seed,
                            const RunOptions& options = {});

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

WilsonInterval wilson_interval(long long successes, long long n, double z = 1.959963984540054);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct TrappingReport {
    SignalModel signal;
    Contour region = Contour::circle({0.0, 0.0}, 1.0);
    int target_count = 0;
    double eps = 0.05;
    int n_realizations = 0;
    std::uint64_t master_seed = 0;
    double empirical_prob = 0.0;
    double std_error = 0.0;
    WilsonInterval wilson;
    std::map<int, long long> count_histogram;
    analytic::BoundReport bound;
    SupremumEstimate sup;
    /// Smallest SNR meeting the trapping hypothesis for this sup-mean estimate.
    double gamma_threshold = 0.0;
    Exclusions excluded;
    Verdict verdict = Verdict::not_applicable;
};

/// Region used by the trapping statements: the ball B(0, sqrt(k/pi)) for a
/// Hermite signal, C_n for a chirp pair.
Contour trapping_region(const SignalModel& signal, int n = 0, int discretization = 256);

/// Trapping frequency of `target_count` zeros in `region`, checked against the
/// analytic lower bound built from `sup`. The verdict is withheld
/// (not_applicable) when a hypothesis fails.
TrappingReport trapping_experiment(const SignalModel& signal, const Contour& region,
                                   int target_count, int n, std::uint64_t master_seed,
                                   double eps, const SupremumEstimate& sup,
                                   const RunOptions& options = {});

} // namespace tfz::experiments
