#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "statfield/errors.hpp"

namespace statfield {

using Complex = std::complex<double>;
using Point = std::vector<double>;

/// Uniform grid covering [-L, L)^dim with N points per axis, spacing h = 2L/N.
struct GridSpec {
    int dim = 1;
    double half_width = 8.0;
    int points_per_axis = 512;

    double spacing() const { return 2.0 * half_width / points_per_axis; }
    std::size_t total_points() const;
    double coord(int i) const { return -half_width + i * spacing(); }

    void validate() const;
    bool operator==(const GridSpec&) const = default;
};

/// Grid sampling of a compactly supported function on R^d. Samples outside
/// the centered ball of radius support_radius are exactly zero.
struct TestFunction {
    GridSpec grid;
    std::vector<Complex> samples;
    double support_radius = 0.0;
};

struct FreqSamples {
    std::vector<Point> frequencies;
    std::vector<Complex> values;
};

// Multi-index helpers (row-major, each axis of length N).
std::size_t flat_index(const std::vector<int>& idx, int N, int dim);
std::vector<int> unflatten(std::size_t flat, int N, int dim);

/// Per-axis inclusive bounding box of the nonzero samples.
/// Returns false when the function is identically zero.
bool support_box(const TestFunction& f, std::vector<int>& lo, std::vector<int>& hi);

/// Radius of the smallest centered ball containing all nonzero samples.
double measured_support_radius(const TestFunction& f);

/// Smooth bump exp(-1/(1 - |x-c|^2/r^2)) inside ball(c, r), zero outside,
/// normalized so the Riemann sum integral is 1.
TestFunction make_bump(const Point& center, double radius, const GridSpec& grid);

/// Translation (tau_x f)(y) = f(y - x) as an exact index shift; x must be
/// grid-aligned per axis.
TestFunction translate(const TestFunction& f, const Point& x);

/// Involution f~(x) = conj(f(-x)).
TestFunction involute(const TestFunction& f);

/// Reflection f^(x) = f(-x).
TestFunction reflect(const TestFunction& f);

/// Discrete convolution (f*g)(x) = h^d sum_y f(y) g(x-y).
/// The summation order is anchored to the support box of the first argument,
/// so convolve(translate(f,x), translate(g,-x)) is bit-identical to
/// convolve(f, g) for grid-aligned x.
TestFunction convolve(const TestFunction& f, const TestFunction& g);

/// Same convolution evaluated through zero-padded FFTs; agrees with the
/// direct sum to ~1e-12 on the fixture scale.
TestFunction convolve_fft(const TestFunction& f, const TestFunction& g);

/// (F f)(t) = h^d sum_x f(x) e^{-2 pi i <x,t>} at arbitrary frequencies.
FreqSamples fourier(const TestFunction& f, const std::vector<Point>& frequencies);
Complex fourier_at(const TestFunction& f, const Point& t);

/// Tensor product on the 2d-dimensional product grid: (f x g)(x,y) = f(x)g(y).
TestFunction tensor(const TestFunction& f, const TestFunction& g);

/// Riemann sum h^d * sum samples.
Complex integral(const TestFunction& f);

// Pointwise arithmetic (same grid required).
TestFunction operator+(const TestFunction& a, const TestFunction& b);
TestFunction operator-(const TestFunction& a, const TestFunction& b);
TestFunction operator*(Complex c, const TestFunction& f);

/// Max-norm distance between two samplings on the same grid.
double max_distance(const TestFunction& a, const TestFunction& b);

}  // namespace statfield
