#pragma once

#include "cvnl/types.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cvnl::gallery {

/// One of the nine analytic showcase functions, each sampled as the squared
/// modulus of its value over a rectangle in C.
struct GalleryFunction {
    std::string id;
    std::string label;
    std::function<Complex(Complex)> eval;
    double re_lo_limit; // domain guard (log branch cut); -inf when unrestricted
};

const std::vector<GalleryFunction>& gallery_functions();
const GalleryFunction& gallery_function(const std::string& id);

struct SurfaceGrid {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    std::vector<std::vector<double>> values; // values[i][j] = |f(re_j + i*im_i)|^2
};

SurfaceGrid sample_surface(const GalleryFunction& fn, double re_lo, double re_hi,
                           double im_lo, double im_hi, int resolution);

/// Real-axis restriction: a single-row grid along im = 0.
SurfaceGrid sample_real_line(const GalleryFunction& fn, double re_lo, double re_hi,
                             int resolution);

struct MmpReport {
    double center_value = 0.0;
    double min_on_disk = 0.0;
    bool escapes = false;
};

/// Deterministic disk sampling around z0: for a non-vanishing analytic f the
/// squared modulus must drop somewhere on any disk, so a strict real-axis
/// local minimum of |f|^2 cannot survive in C.
MmpReport mmp_spot_check(const GalleryFunction& fn, Complex z0, double radius,
                         int samples);

/// Strict local minimizers of |f|^2 on the real segment, located by a grid
/// scan plus ternary refinement; only minima with value > value_floor are
/// reported.
std::vector<Complex> real_axis_minima(const GalleryFunction& fn, double lo, double hi,
                                      double value_floor = 1e-6);

enum class GridFormat { csv, json };

/// Byte-deterministic emitters (17 significant digits).
void emit_grid(const SurfaceGrid& grid, GridFormat format, std::ostream& out);
void emit_grid_file(const SurfaceGrid& grid, GridFormat format, const std::string& path);
SurfaceGrid parse_grid_json(std::istream& in);

} // namespace cvnl::gallery
