#include "statfield/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace statfield {

namespace {

constexpr double kAlignTol = 1e-9;

double norm2(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void check_same_grid(const TestFunction& a, const TestFunction& b) {
    if (!(a.grid == b.grid))
        throw SizeMismatchError("test functions live on different grids");
}

// In-place iterative radix-2 FFT, n a power of two. sign = -1 forward.
void fft_pow2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

std::size_t GridSpec::total_points() const {
    std::size_t t = 1;
    for (int a = 0; a < dim; ++a) t *= static_cast<std::size_t>(points_per_axis);
    return t;
}

void GridSpec::validate() const {
    if (dim < 1 || dim > 4) throw ValidationError("grid dim must be in [1,4]");
    if (half_width <= 0.0) throw ValidationError("grid half_width must be positive");
    if (points_per_axis < 8 || points_per_axis % 2 != 0)
        throw ValidationError("points_per_axis must be even and >= 8");
}

std::size_t flat_index(const std::vector<int>& idx, int N, int dim) {
    std::size_t f = 0;
    for (int a = 0; a < dim; ++a) f = f * static_cast<std::size_t>(N) + static_cast<std::size_t>(idx[a]);
    return f;
}

std::vector<int> unflatten(std::size_t flat, int N, int dim) {
    std::vector<int> idx(static_cast<std::size_t>(dim));
    for (int a = dim - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % static_cast<std::size_t>(N));
        flat /= static_cast<std::size_t>(N);
    }
    return idx;
}

bool support_box(const TestFunction& f, std::vector<int>& lo, std::vector<int>& hi) {
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    lo.assign(static_cast<std::size_t>(d), N);
    hi.assign(static_cast<std::size_t>(d), -1);
    bool any = false;
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        if (f.samples[k] == Complex(0.0, 0.0)) continue;
        any = true;
        auto idx = unflatten(k, N, d);
        for (int a = 0; a < d; ++a) {
            lo[static_cast<std::size_t>(a)] = std::min(lo[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(a)]);
            hi[static_cast<std::size_t>(a)] = std::max(hi[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(a)]);
        }
    }
    return any;
}

double measured_support_radius(const TestFunction& f) {
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    double r2max = 0.0;
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        if (f.samples[k] == Complex(0.0, 0.0)) continue;
        auto idx = unflatten(k, N, d);
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
            double c = f.grid.coord(idx[static_cast<std::size_t>(a)]);
            r2 += c * c;
        }
        r2max = std::max(r2max, r2);
    }
    return std::sqrt(r2max);
}

TestFunction make_bump(const Point& center, double radius, const GridSpec& grid) {
    grid.validate();
    if (static_cast<int>(center.size()) != grid.dim)
        throw SizeMismatchError("bump center dimension does not match grid");
    const double h = grid.spacing();
    if (radius <= 2.0 * h) throw SupportError("bump radius must exceed 2h");
    for (double c : center) {
        if (std::abs(c) + radius > grid.half_width - h)
            throw SupportError("bump support exceeds the grid interior");
    }

    TestFunction f;
    f.grid = grid;
    f.samples.assign(grid.total_points(), Complex(0.0, 0.0));
    const int N = grid.points_per_axis;
    const int d = grid.dim;
    double sum = 0.0;
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        auto idx = unflatten(k, N, d);
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
            double dx = grid.coord(idx[static_cast<std::size_t>(a)]) - center[static_cast<std::size_t>(a)];
            r2 += dx * dx;
        }
        r2 /= radius * radius;
        if (r2 < 1.0) {
            double v = std::exp(-1.0 / (1.0 - r2));
            f.samples[k] = Complex(v, 0.0);
            sum += v;
        }
    }
    const double hd = std::pow(h, d);
    const double scale = 1.0 / (sum * hd);
    for (auto& s : f.samples)
        if (s != Complex(0.0, 0.0)) s *= scale;
    f.support_radius = measured_support_radius(f);
    return f;
}

TestFunction translate(const TestFunction& f, const Point& x) {
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    if (static_cast<int>(x.size()) != d) throw SizeMismatchError("shift dimension mismatch");
    const double h = f.grid.spacing();
    std::vector<int> shift(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        double s = x[static_cast<std::size_t>(a)] / h;
        double r = std::round(s);
        if (std::abs(s - r) > kAlignTol)
            throw AlignmentError("translation is not aligned to the grid spacing");
        shift[static_cast<std::size_t>(a)] = static_cast<int>(r);
    }

    TestFunction out;
    out.grid = f.grid;
    out.samples.assign(f.samples.size(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        if (f.samples[k] == Complex(0.0, 0.0)) continue;
        auto idx = unflatten(k, N, d);
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            idx[static_cast<std::size_t>(a)] += shift[static_cast<std::size_t>(a)];
            if (idx[static_cast<std::size_t>(a)] < 0 || idx[static_cast<std::size_t>(a)] >= N) inside = false;
        }
        if (!inside) throw SupportError("translated support leaves the grid");
        out.samples[flat_index(idx, N, d)] = f.samples[k];
    }
    out.support_radius = f.support_radius + norm2(x);
    return out;
}

namespace {

TestFunction flip(const TestFunction& f, bool conjugate) {
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    TestFunction out;
    out.grid = f.grid;
    out.samples.assign(f.samples.size(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        auto idx = unflatten(k, N, d);
        for (int a = 0; a < d; ++a)
            idx[static_cast<std::size_t>(a)] = (N - idx[static_cast<std::size_t>(a)]) % N;
        Complex v = f.samples[flat_index(idx, N, d)];
        out.samples[k] = conjugate ? std::conj(v) : v;
    }
    out.support_radius = f.support_radius;
    return out;
}

}  // namespace

TestFunction involute(const TestFunction& f) { return flip(f, true); }
TestFunction reflect(const TestFunction& f) { return flip(f, false); }

TestFunction convolve(const TestFunction& f, const TestFunction& g) {
    check_same_grid(f, g);
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    const double h = f.grid.spacing();
    if (f.support_radius + g.support_radius >= f.grid.half_width - h)
        throw SupportError("convolution support exceeds the grid");

    TestFunction out;
    out.grid = f.grid;
    out.samples.assign(f.samples.size(), Complex(0.0, 0.0));

    std::vector<int> flo, fhi, glo, ghi;
    const bool fa = support_box(f, flo, fhi);
    const bool ga = support_box(g, glo, ghi);
    if (!fa || !ga) {
        out.support_radius = 0.0;
        return out;
    }

    // Output index per axis: o = iy + iz - N/2.
    std::vector<int> olo(static_cast<std::size_t>(d)), ohi(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        olo[static_cast<std::size_t>(a)] = flo[static_cast<std::size_t>(a)] + glo[static_cast<std::size_t>(a)] - N / 2;
        ohi[static_cast<std::size_t>(a)] = fhi[static_cast<std::size_t>(a)] + ghi[static_cast<std::size_t>(a)] - N / 2;
        if (olo[static_cast<std::size_t>(a)] < 0 || ohi[static_cast<std::size_t>(a)] >= N)
            throw SupportError("convolution support exceeds the grid");
    }

    const double hd = std::pow(h, d);
    std::vector<int> o = olo;
    std::vector<int> y(static_cast<std::size_t>(d)), z(static_cast<std::size_t>(d));
    for (;;) {
        // Sum over the support box of f, anchored at its lower corner so that
        // simultaneous translations of f and g enumerate identical terms in
        // identical order.
        Complex s(0.0, 0.0);
        y = flo;
        for (;;) {
            bool in = true;
            for (int a = 0; a < d; ++a) {
                z[static_cast<std::size_t>(a)] =
                    o[static_cast<std::size_t>(a)] + N / 2 - y[static_cast<std::size_t>(a)];
                if (z[static_cast<std::size_t>(a)] < glo[static_cast<std::size_t>(a)] ||
                    z[static_cast<std::size_t>(a)] > ghi[static_cast<std::size_t>(a)])
                    in = false;
            }
            if (in) s += f.samples[flat_index(y, N, d)] * g.samples[flat_index(z, N, d)];
            int a = d - 1;
            for (; a >= 0; --a) {
                if (++y[static_cast<std::size_t>(a)] <= fhi[static_cast<std::size_t>(a)]) break;
                y[static_cast<std::size_t>(a)] = flo[static_cast<std::size_t>(a)];
            }
            if (a < 0) break;
        }
        out.samples[flat_index(o, N, d)] = hd * s;
        int a = d - 1;
        for (; a >= 0; --a) {
            if (++o[static_cast<std::size_t>(a)] <= ohi[static_cast<std::size_t>(a)]) break;
            o[static_cast<std::size_t>(a)] = olo[static_cast<std::size_t>(a)];
        }
        if (a < 0) break;
    }
    out.support_radius = measured_support_radius(out);
    return out;
}

TestFunction convolve_fft(const TestFunction& f, const TestFunction& g) {
    check_same_grid(f, g);
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    const double h = f.grid.spacing();
    if (f.support_radius + g.support_radius >= f.grid.half_width - h)
        throw SupportError("convolution support exceeds the grid");
    if (d > 2) throw MemoryGuardError("FFT convolution supports dim <= 2");

    const std::size_t P = next_pow2(2 * static_cast<std::size_t>(N));
    const std::size_t total = d == 1 ? P : P * P;
    std::vector<Complex> A(total, Complex(0.0, 0.0)), B(total, Complex(0.0, 0.0));
    auto pad_at = [&](const std::vector<int>& idx) {
        std::size_t k = 0;
        for (int a = 0; a < d; ++a) k = k * P + static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
        return k;
    };
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        auto idx = unflatten(k, N, d);
        A[pad_at(idx)] = f.samples[k];
        B[pad_at(idx)] = g.samples[k];
    }

    auto fft_nd = [&](std::vector<Complex>& v, int sign) {
        if (d == 1) {
            fft_pow2(v, sign);
            return;
        }
        std::vector<Complex> line(P);
        for (std::size_t r = 0; r < P; ++r) {
            std::copy(v.begin() + static_cast<std::ptrdiff_t>(r * P),
                      v.begin() + static_cast<std::ptrdiff_t>((r + 1) * P), line.begin());
            fft_pow2(line, sign);
            std::copy(line.begin(), line.end(), v.begin() + static_cast<std::ptrdiff_t>(r * P));
        }
        for (std::size_t c = 0; c < P; ++c) {
            for (std::size_t r = 0; r < P; ++r) line[r] = v[r * P + c];
            fft_pow2(line, sign);
            for (std::size_t r = 0; r < P; ++r) v[r * P + c] = line[r];
        }
    };

    fft_nd(A, -1);
    fft_nd(B, -1);
    for (std::size_t k = 0; k < total; ++k) A[k] *= B[k];
    fft_nd(A, +1);
    const double scale = std::pow(h, d) / std::pow(static_cast<double>(P), d);

    TestFunction out;
    out.grid = f.grid;
    out.samples.assign(f.samples.size(), Complex(0.0, 0.0));
    // Linear convolution index iy+iz maps to grid index o = iy+iz - N/2.
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        auto idx = unflatten(k, N, d);
        std::vector<int> p = idx;
        for (int a = 0; a < d; ++a) p[static_cast<std::size_t>(a)] += N / 2;
        out.samples[k] = scale * A[pad_at(p)];
    }
    out.support_radius = f.support_radius + g.support_radius;
    return out;
}

Complex fourier_at(const TestFunction& f, const Point& t) {
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    if (static_cast<int>(t.size()) != d) throw SizeMismatchError("frequency dimension mismatch");
    std::vector<int> lo, hi;
    if (!support_box(f, lo, hi)) return Complex(0.0, 0.0);
    Complex s(0.0, 0.0);
    std::vector<int> idx = lo;
    for (;;) {
        double phase = 0.0;
        for (int a = 0; a < d; ++a)
            phase += f.grid.coord(idx[static_cast<std::size_t>(a)]) * t[static_cast<std::size_t>(a)];
        const double ang = -2.0 * std::numbers::pi * phase;
        s += f.samples[flat_index(idx, N, d)] * Complex(std::cos(ang), std::sin(ang));
        int a = d - 1;
        for (; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] <= hi[static_cast<std::size_t>(a)]) break;
            idx[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)];
        }
        if (a < 0) break;
    }
    return std::pow(f.grid.spacing(), d) * s;
}

FreqSamples fourier(const TestFunction& f, const std::vector<Point>& frequencies) {
    FreqSamples out;
    out.frequencies = frequencies;
    out.values.reserve(frequencies.size());
    for (const auto& t : frequencies) out.values.push_back(fourier_at(f, t));
    return out;
}

TestFunction tensor(const TestFunction& f, const TestFunction& g) {
    check_same_grid(f, g);
    const int d = f.grid.dim;
    const int N = f.grid.points_per_axis;
    const int dout = 2 * d;
    if (dout > 4) throw MemoryGuardError("tensor output dimension exceeds 4");
    double total = std::pow(static_cast<double>(N), dout);
    if (total > static_cast<double>(std::size_t{1} << 22))
        throw MemoryGuardError("tensor output exceeds the memory guard");

    TestFunction out;
    out.grid = f.grid;
    out.grid.dim = dout;
    out.samples.resize(out.grid.total_points());
    const std::size_t n = f.samples.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.samples[i * n + j] = f.samples[i] * g.samples[j];
    out.support_radius = std::hypot(f.support_radius, g.support_radius);
    return out;
}

Complex integral(const TestFunction& f) {
    Complex s(0.0, 0.0);
    for (const auto& v : f.samples) s += v;
    return std::pow(f.grid.spacing(), f.grid.dim) * s;
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
    check_same_grid(a, b);
    TestFunction out = a;
    for (std::size_t k = 0; k < out.samples.size(); ++k) out.samples[k] += b.samples[k];
    out.support_radius = std::max(a.support_radius, b.support_radius);
    return out;
}

TestFunction operator-(const TestFunction& a, const TestFunction& b) {
    check_same_grid(a, b);
    TestFunction out = a;
    for (std::size_t k = 0; k < out.samples.size(); ++k) out.samples[k] -= b.samples[k];
    out.support_radius = std::max(a.support_radius, b.support_radius);
    return out;
}

TestFunction operator*(Complex c, const TestFunction& f) {
    TestFunction out = f;
    for (auto& v : out.samples) v *= c;
    return out;
}

double max_distance(const TestFunction& a, const TestFunction& b) {
    check_same_grid(a, b);
    double m = 0.0;
    for (std::size_t k = 0; k < a.samples.size(); ++k)
        m = std::max(m, std::abs(a.samples[k] - b.samples[k]));
    return m;
}

}  // namespace statfield
