#pragma once

#include <variant>
#include <vector>

#include "tfz/signal.hpp"

namespace tfz {

struct Circle {
    cplx center{0.0, 0.0};
    double radius = 1.0;
};

/// Closed polygon; the closing edge back to the first vertex is implicit.
struct Polygon {
    std::vector<cplx> vertices;
};

/// A closed simple curve of the time-frequency plane, positively oriented,
/// with a default number of sample points used by discretized consumers
/// (sup estimates, dense infimum checks, starting grid of the winding number).
class Contour {
public:
    static Contour circle(cplx center, double radius, int discretization = 256);
    /// Vertices may be given in either orientation; they are stored counterclockwise.
    static Contour polygon(std::vector<cplx> vertices, int discretization = 256);
    static Contour rectangle(double x0, double y0, double x1, double y1, int discretization = 256);
    /// C_N = {(r, s) in [0, a] x [N/a, (N+1)/a]} in the rotated frame of the pair.
    static Contour rectangle_cn(const ChirpPair& pair, int n, int discretization = 256);
    /// {(r, s) in [r0, r1] x [s0, s1]} in the rotated frame of a single chirp.
    static Contour chirp_rectangle(const LinearChirp& chirp, double r0, double r1,
                                   double s0, double s1, int discretization = 256);

    const std::variant<Circle, Polygon>& shape() const noexcept { return shape_; }
    int discretization() const noexcept { return discretization_; }
    Contour with_discretization(int count) const;

    double length() const;
    /// Point at normalized arclength t in [0, 1]; point(0) == point(1).
    cplx point(double t) const;
    /// Parameters that must be sampled (polygon corners); always contains 0.
    std::vector<double> corner_parameters() const;
    /// `count` points spread by arclength; polygon corners are always included.
    std::vector<cplx> sample(int count) const;
    std::vector<cplx> sample() const { return sample(discretization_); }

    bool contains(cplx z) const;
    /// Mirror image under z -> conj(z), kept positively oriented.
    Contour conjugate() const;
    double max_modulus() const;

private:
    Contour(std::variant<Circle, Polygon> shape, int discretization);

    std::variant<Circle, Polygon> shape_;
    int discretization_;
    std::vector<double> cumulative_; // polygon: arclength at each vertex, normalized
};

} // namespace tfz
