#pragma once

#include "cvnl/types.hpp"

#include <cmath>
#include <cstdint>

namespace cvnl {

// Deterministic splitmix64 generator. We roll our own normal sampling so that
// streams are reproducible across standard libraries, and derive independent
// substreams from (seed, index) pairs for parallel-safe experiments.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {
        next_u64();
    }

    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed);
        r.state_ ^= 0xbf58476d1ce4e5b9ULL * (index + 1);
        r.next_u64();
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform();
        double v = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double th = 2.0 * M_PI * v;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    // standard complex normal: E|z|^2 = 1
    Complex complex_normal() {
        double re = normal();
        double im = normal();
        return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
    }

    CMatrix complex_normal_matrix(Index rows, Index cols) {
        CMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
        return m;
    }

    CVector complex_normal_vector(Index n) {
        CVector v(n);
        for (Index i = 0; i < n; ++i) v(i) = complex_normal();
        return v;
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cvnl
