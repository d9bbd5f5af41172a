#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is written as plainly as possible (naive loops, no shared
// code paths with src/), so an agreement between the two is meaningful.

#include <cmath>
#include <complex>
#include <vector>

#include "statfield/field_synthesis.hpp"
#include "statfield/grid.hpp"
#include "statfield/spectral_measure.hpp"

namespace oracles {

using statfield::Complex;
using statfield::GridSpec;
using statfield::Point;
using statfield::TestFunction;

inline GridSpec desk_grid() {
    GridSpec g;
    g.dim = 1;
    g.half_width = 8.0;
    g.points_per_axis = 512;
    return g;
}

// The three-atom desk fixture.
inline statfield::SpectralMeasure desk_measure() {
    statfield::SpectralMeasure F;
    F.dim_space = 1;
    F.dim_h = 2;
    statfield::OperatorValue w0(2, 2), w1(2, 2), w2(2, 2);
    w0 << 1, 0, 0, 0;
    w1 << 0.5, 0.25, 0.25, 0.5;
    w2 << 0.5, 0, 0, 0.5;
    F.atoms.push_back({Point{0.0}, w0});
    F.atoms.push_back({Point{1.0}, w1});
    F.atoms.push_back({Point{-2.0}, w2});
    return F;
}

// Naive quadratic-time 1-D convolution: for every output grid point x, sum
// h * f(y) g(x - y) over all grid points y for which x - y is on the grid.
inline TestFunction convolve_naive(const TestFunction& f, const TestFunction& g) {
    const int N = f.grid.points_per_axis;
    const double h = f.grid.spacing();
    TestFunction out;
    out.grid = f.grid;
    out.samples.assign(static_cast<std::size_t>(N), Complex(0.0, 0.0));
    for (int ix = 0; ix < N; ++ix) {
        Complex acc(0.0, 0.0);
        for (int iy = 0; iy < N; ++iy) {
            const int j = ix - iy + N / 2;  // index of x - y
            if (j < 0 || j >= N) continue;
            acc += f.samples[static_cast<std::size_t>(iy)] * g.samples[static_cast<std::size_t>(j)];
        }
        out.samples[static_cast<std::size_t>(ix)] = h * acc;
    }
    out.support_radius = f.support_radius + g.support_radius;
    return out;
}

// Direct quadrature Fourier transform at one frequency, 1-D.
inline Complex fourier_naive(const TestFunction& f, double t) {
    const int N = f.grid.points_per_axis;
    const double h = f.grid.spacing();
    Complex acc(0.0, 0.0);
    for (int i = 0; i < N; ++i) {
        const double x = f.grid.coord(i);
        acc += f.samples[static_cast<std::size_t>(i)] *
               std::exp(Complex(0.0, -2.0 * M_PI * x * t));
    }
    return h * acc;
}

inline double frob_dist(const statfield::OperatorValue& a, const statfield::OperatorValue& b) {
    return (a - b).norm();
}

}  // namespace oracles
