#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tfz/contour.hpp"
#include "tfz/noise.hpp"
#include "tfz/signal.hpp"

/// Zeros of entire functions by the argument principle.
///
/// Counting is exact once the phase of the field is sampled finely enough along
/// each contour; sampling is refined adaptively until every step turns the phase
/// by less than pi/4, and a ContourError is raised when a zero sits (numerically)
/// on the contour.
namespace tfz::zeros {

/// A holomorphic function together with optional closed-form derivative and
/// the local magnitude used to normalize residuals.
struct HolomorphicField {
    std::function<cplx(cplx)> value;
    /// Empty: central finite differences are used for Newton steps.
    std::function<std::pair<cplx, cplx>(cplx)> value_and_derivative;
    /// Empty: residuals are |f| unscaled.
    std::function<double(cplx)> scale;

    std::pair<cplx, cplx> evaluate_with_derivative(cplx z) const;
    double residual(cplx z) const;
};

/// Field whose zeros are the zeros of the noisy spectrogram in the
/// time-frequency plane: z -> conj(B(y)(conj z)). Residuals are scaled by
/// e^{pi|z|^2/2}, so a residual is the square root of the spectrogram value.
HolomorphicField tf_field(const noise::NoisyField& field);
/// Same for the noiseless signal.
HolomorphicField tf_field(const SignalModel& signal);

struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const noexcept { return x1 - x0; }
    double height() const noexcept { return y1 - y0; }
    double area() const noexcept { return width() * height(); }
    bool contains(cplx z) const noexcept
    {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
    /// Largest |z| over the rectangle.
    double max_modulus() const noexcept;
};

inline constexpr double min_resolution = 8.0;

struct GridSpec {
    Rect domain;
    /// Grid lines per unit length.
    double resolution = 32.0;

    void validate() const;
};

struct Zero {
    cplx location;
    int multiplicity = 1;
    double residual = 0.0;
};

struct ZeroSet {
    std::vector<Zero> zeros;
    /// Multiplicity-weighted.
    int total_count = 0;
};

struct FindOptions {
    /// Zeros closer than this are reported as one zero with multiplicity.
    double merge_radius = 1e-6;
    /// Retries with jittered interior grid lines after a ContourError.
    int max_retries = 3;
    /// Jitter amplitude, in cells.
    double jitter = 0.1;
};

/// Number of zeros (with multiplicity) enclosed by the contour.
int winding_number(const HolomorphicField& field, const Contour& contour);

/// All zeros inside grid.domain. Cells of the grid are scanned with the
/// argument principle; cells of index one are polished by Newton's method,
/// larger indices are split until their zeros separate or shrink below the
/// merge radius. Zeros are sorted by (real, imag) of their location.
ZeroSet find_zeros(const HolomorphicField& field, const GridSpec& grid,
                   const FindOptions& options = {});

/// Multiplicity-weighted count of zeros lying inside the region.
int count_in(const ZeroSet& zs, const Contour& region);

} // namespace tfz::zeros
