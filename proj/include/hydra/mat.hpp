// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace hydra {

using Vec = std::vector<double>;

/// Dense real matrix, row-major. All arithmetic is 64-bit; reductions run
/// left to right so results are bit-for-bit reproducible on one platform.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0);

    static Mat identity(int n);
    static Mat scaled_identity(int n, double s);

    double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    bool same_shape(const Mat& other) const { return rows == other.rows && cols == other.cols; }
};

/// m * x with deterministic left-to-right accumulation.
Vec matvec(const Mat& m, const Vec& x);

/// Outer product a b^T.
Mat outer(const Vec& a, const Vec& b);

/// Entrywise exp. Output is strictly positive for finite input.
Mat emap_exp(const Mat& m);

/// Entrywise log. Throws std::domain_error on a non-positive entry.
Mat emap_log(const Mat& m);

/// suffix_products(g)[i] == g[i+1] * g[i+2] * ... * g[n-1]; the last entry is 1.
/// These are the decay coefficients of the chunked closed form.
std::vector<double> suffix_products(const std::vector<double>& g);

double max_abs_diff(const Mat& a, const Mat& b);

}  // namespace hydra
