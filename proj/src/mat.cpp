// SPDX-License-Identifier: Apache-2.0
#include "hydra/mat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hydra {

Mat::Mat(int r, int c, double fill) {
    if (r <= 0 || c <= 0) {
        throw std::invalid_argument("Mat: dimensions must be positive, got " + std::to_string(r) +
                                    "x" + std::to_string(c));
    }
    rows = r;
    cols = c;
    data.assign(static_cast<std::size_t>(r) * c, fill);
}

Mat Mat::identity(int n) { return scaled_identity(n, 1.0); }

Mat Mat::scaled_identity(int n, double s) {
    Mat m(n, n, 0.0);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

Vec matvec(const Mat& m, const Vec& x) {
    if (m.cols != static_cast<int>(x.size())) {
        throw std::invalid_argument("matvec: matrix has " + std::to_string(m.cols) +
                                    " columns but vector has length " + std::to_string(x.size()));
    }
    Vec out(static_cast<std::size_t>(m.rows), 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        const double* row = m.data.data() + static_cast<std::size_t>(i) * m.cols;
        for (int j = 0; j < m.cols; ++j) acc += row[j] * x[j];
        out[i] = acc;
    }
    return out;
}

Mat outer(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("outer: empty operand");
    Mat m(static_cast<int>(a.size()), static_cast<int>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m.data[i * b.size() + j] = a[i] * b[j];
    return m;
}

Mat emap_exp(const Mat& m) {
    Mat out = m;
    for (double& v : out.data) v = std::exp(v);
    return out;
}

Mat emap_log(const Mat& m) {
    Mat out = m;
    for (double& v : out.data) {
        if (!(v > 0.0)) {
            throw std::domain_error("emap_log: non-positive entry " + std::to_string(v));
        }
        v = std::log(v);
    }
    return out;
}

std::vector<double> suffix_products(const std::vector<double>& g) {
    if (g.empty()) throw std::invalid_argument("suffix_products: empty input");
    std::vector<double> out(g.size());
    double acc = 1.0;
    for (std::size_t i = g.size(); i-- > 0;) {
        out[i] = acc;
        acc *= g[i];
    }
    return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = std::fabs(a.data[i] - b.data[i]);
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace hydra
