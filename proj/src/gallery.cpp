#include "cvnl/gallery.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cvnl::gallery {

namespace {

Complex sigmoid(Complex z) { return 1.0 / (1.0 + std::exp(-z)); }

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<GalleryFunction> make_functions() {
    return {
        {"xsinx", "x*sin(x)", [](Complex z) { return z * std::sin(z); }, -kInf},
        {"cubic", "x^3-2x+3", [](Complex z) { return z * z * z - 2.0 * z + 3.0; }, -kInf},
        {"cosplus2", "cos(x)+2", [](Complex z) { return std::cos(z) + 2.0; }, -kInf},
        {"quartic", "-x^2(x-1)(x+2)+1",
         [](Complex z) { return -z * z * (z - 1.0) * (z + 2.0) + 1.0; }, -kInf},
        {"squareplus2", "x^2+2", [](Complex z) { return z * z + 2.0; }, -kInf},
        {"tanhsq", "tanh(x)^2",
         [](Complex z) { Complex t = std::tanh(z); return t * t; }, -kInf},
        {"xexp", "2x*exp(x)+1", [](Complex z) { return 2.0 * z * std::exp(z) + 1.0; }, -kInf},
        // principal log branch; keep clear of the cut and the origin
        {"xlogx", "3x*log(x)+1", [](Complex z) { return 3.0 * z * std::log(z) + 1.0; }, 0.05},
        {"xsigmoid", "9x*sigmoid(x)+3",
         [](Complex z) { return 9.0 * z * sigmoid(z) + 3.0; }, -kInf},
    };
}

double mod2_checked(const GalleryFunction& fn, Complex z) {
    if (z.real() < fn.re_lo_limit)
        throw DomainError("gallery: sample outside the function domain: " + fn.id);
    Complex v = fn.eval(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("gallery: non-finite value for " + fn.id);
    return std::norm(v);
}

} // namespace

const std::vector<GalleryFunction>& gallery_functions() {
    static const std::vector<GalleryFunction> fns = make_functions();
    return fns;
}

const GalleryFunction& gallery_function(const std::string& id) {
    for (const auto& f : gallery_functions())
        if (f.id == id) return f;
    throw RangeError("gallery: unknown function id '" + id + "'");
}

SurfaceGrid sample_surface(const GalleryFunction& fn, double re_lo, double re_hi,
                           double im_lo, double im_hi, int resolution) {
    if (!(re_lo < re_hi) || !(im_lo < im_hi))
        throw RangeError("sample_surface: ranges must satisfy lo < hi");
    if (resolution < 2) throw RangeError("sample_surface: resolution must be >= 2");
    re_lo = std::max(re_lo, fn.re_lo_limit);

    SurfaceGrid g;
    g.re_axis.resize(resolution);
    g.im_axis.resize(resolution);
    for (int j = 0; j < resolution; ++j) {
        g.re_axis[j] = re_lo + (re_hi - re_lo) * j / (resolution - 1);
        g.im_axis[j] = im_lo + (im_hi - im_lo) * j / (resolution - 1);
    }
    g.values.assign(resolution, std::vector<double>(resolution));
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            g.values[i][j] = mod2_checked(fn, Complex(g.re_axis[j], g.im_axis[i]));
    return g;
}

SurfaceGrid sample_real_line(const GalleryFunction& fn, double re_lo, double re_hi,
                             int resolution) {
    if (!(re_lo < re_hi)) throw RangeError("sample_real_line: lo < hi required");
    if (resolution < 2) throw RangeError("sample_real_line: resolution must be >= 2");
    re_lo = std::max(re_lo, fn.re_lo_limit);

    SurfaceGrid g;
    g.re_axis.resize(resolution);
    g.im_axis = {0.0};
    g.values.assign(1, std::vector<double>(resolution));
    for (int j = 0; j < resolution; ++j) {
        g.re_axis[j] = re_lo + (re_hi - re_lo) * j / (resolution - 1);
        g.values[0][j] = mod2_checked(fn, Complex(g.re_axis[j], 0.0));
    }
    return g;
}

MmpReport mmp_spot_check(const GalleryFunction& fn, Complex z0, double radius,
                         int samples) {
    if (!(radius > 0)) throw RangeError("mmp_spot_check: radius must be positive");
    if (samples < 1) throw RangeError("mmp_spot_check: samples must be >= 1");
    MmpReport rep;
    rep.center_value = mod2_checked(fn, z0);
    if (rep.center_value <= 1e-18)
        throw DomainError("mmp_spot_check: f vanishes at the center point");

    // concentric rings with rotating angular offsets
    int rings = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(samples) / 8.0)));
    int per_ring = std::max(8, samples / rings);
    rep.min_on_disk = rep.center_value;
    for (int r = 1; r <= rings; ++r) {
        double rad = radius * r / rings;
        double offset = 0.37 * r;
        for (int a = 0; a < per_ring; ++a) {
            double th = offset + 2.0 * M_PI * a / per_ring;
            Complex z = z0 + std::polar(rad, th);
            if (z.real() < fn.re_lo_limit) continue;
            rep.min_on_disk = std::min(rep.min_on_disk, mod2_checked(fn, z));
        }
    }
    rep.escapes = rep.min_on_disk < rep.center_value - 1e-12;
    return rep;
}

std::vector<Complex> real_axis_minima(const GalleryFunction& fn, double lo, double hi,
                                      double value_floor) {
    lo = std::max(lo, fn.re_lo_limit);
    const int n = 4001;
    auto g = [&](double x) { return mod2_checked(fn, Complex(x, 0.0)); };
    std::vector<Complex> minima;
    std::vector<double> grid(n), val(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * i / (n - 1);
        val[i] = g(grid[i]);
    }
    for (int i = 1; i + 1 < n; ++i) {
        if (!(val[i] < val[i - 1] && val[i] < val[i + 1])) continue;
        // ternary refinement
        double a = grid[i - 1], b = grid[i + 1];
        for (int it = 0; it < 200; ++it) {
            double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (g(m1) < g(m2)) b = m2; else a = m1;
        }
        double x = 0.5 * (a + b);
        if (g(x) > value_floor) minima.emplace_back(x, 0.0);
    }
    return minima;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void emit_grid(const SurfaceGrid& grid, GridFormat format, std::ostream& out) {
    if (format == GridFormat::csv) {
        out << "re,im,mod2\n";
        for (size_t i = 0; i < grid.im_axis.size(); ++i)
            for (size_t j = 0; j < grid.re_axis.size(); ++j)
                out << fmt17(grid.re_axis[j]) << ',' << fmt17(grid.im_axis[i]) << ','
                    << fmt17(grid.values[i][j]) << '\n';
    } else {
        out << "{\"re_axis\":[";
        for (size_t j = 0; j < grid.re_axis.size(); ++j)
            out << (j ? "," : "") << fmt17(grid.re_axis[j]);
        out << "],\"im_axis\":[";
        for (size_t i = 0; i < grid.im_axis.size(); ++i)
            out << (i ? "," : "") << fmt17(grid.im_axis[i]);
        out << "],\"values\":[";
        for (size_t i = 0; i < grid.values.size(); ++i) {
            out << (i ? "," : "") << '[';
            for (size_t j = 0; j < grid.values[i].size(); ++j)
                out << (j ? "," : "") << fmt17(grid.values[i][j]);
            out << ']';
        }
        out << "]}\n";
    }
    if (!out) throw IoError("emit_grid: write failed");
}

void emit_grid_file(const SurfaceGrid& grid, GridFormat format, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("emit_grid: cannot open " + path);
    emit_grid(grid, format, f);
    f.flush();
    if (!f) throw IoError("emit_grid: write failed for " + path);
}

SurfaceGrid parse_grid_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("parse_grid_json: ") + e.what());
    }
    SurfaceGrid g;
    g.re_axis = j.at("re_axis").get<std::vector<double>>();
    g.im_axis = j.at("im_axis").get<std::vector<double>>();
    g.values = j.at("values").get<std::vector<std::vector<double>>>();
    return g;
}

} // namespace cvnl::gallery
