#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nelab/scalar.hpp"

namespace nelab {

/// Small dense complex matrix; just what the truncated-series oracle and the
/// norm oracle need.
struct Mat {
    int n = 0;
    std::vector<Scalar> a;

    Mat() = default;
    explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, Scalar(0.0)) {}

    Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Scalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Mat identity(int size) {
        Mat m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = Scalar(1.0);
        return m;
    }

    Mat operator*(const Mat& rhs) const {
        if (n != rhs.n) throw std::invalid_argument("Mat: size mismatch");
        Mat out(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Scalar aik = at(i, k);
                if (aik == Scalar(0.0)) continue;
                for (int j = 0; j < n; ++j) out.at(i, j) += aik * rhs.at(k, j);
            }
        return out;
    }

    void axpy(Scalar c, const Mat& m) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * m.a[i];
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        std::vector<Scalar> out(n, Scalar(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    double max_abs_diff(const Mat& other) const {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - other.a[i]));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& z : a) s += std::norm(z);
        return std::sqrt(s);
    }
};

}  // namespace nelab
