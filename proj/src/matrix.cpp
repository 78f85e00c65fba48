#include "spikescope/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spikescope {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols_)
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        std::copy(row.begin(), row.end(), m.data_.begin() + r * m.cols_);
        ++r;
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::string Matrix::shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::domain_error(std::string(what) + ": non-finite value");
}

void require_finite(const Matrix& m, const char* what) {
    require_finite(std::span<const double>(m.values()), what);
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: shape mismatch, a is " + a.shape_str() +
                                    " but b is " + b.shape_str());
    Matrix out(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        double* orow = out.row(i).data();
        for (std::size_t p = 0; p < k; ++p) {
            const double av = a(i, p);
            if (av == 0.0) continue;
            const double* brow = b.row(p).data();
            for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
        }
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
    return out;
}

Matrix softmax_rows(const Matrix& m) {
    if (m.empty())
        throw std::invalid_argument("softmax_rows: empty matrix");
    require_finite(m, "softmax_rows input");
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto in = m.row(r);
        auto o = out.row(r);
        const double mx = *std::max_element(in.begin(), in.end());
        double sum = 0.0;
        for (std::size_t c = 0; c < in.size(); ++c) {
            o[c] = std::exp(in[c] - mx);
            sum += o[c];
        }
        for (std::size_t c = 0; c < in.size(); ++c) o[c] /= sum;
    }
    return out;
}

Matrix linear_forward(const Matrix& x, const Matrix& w, std::span<const double> bias) {
    if (x.cols() != w.rows())
        throw std::invalid_argument("linear_forward: shape mismatch, x is " + x.shape_str() +
                                    " but w is " + w.shape_str());
    if (bias.size() != w.cols())
        throw std::invalid_argument("linear_forward: bias length " + std::to_string(bias.size()) +
                                    " does not match w cols " + std::to_string(w.cols()));
    Matrix out = matmul(x, w);
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto o = out.row(r);
        for (std::size_t c = 0; c < o.size(); ++c) o[c] += bias[c];
    }
    require_finite(out, "linear_forward output");
    return out;
}

LinearGrads linear_backward(const Matrix& grad_out, const Matrix& x, const Matrix& w) {
    if (grad_out.rows() != x.rows() || grad_out.cols() != w.cols() || x.cols() != w.rows())
        throw std::invalid_argument("linear_backward: shape mismatch, grad_out is " +
                                    grad_out.shape_str() + ", x is " + x.shape_str() +
                                    ", w is " + w.shape_str());
    LinearGrads g;
    g.grad_x = matmul(grad_out, transpose(w));
    g.grad_w = matmul(transpose(x), grad_out);
    g.grad_b.assign(grad_out.cols(), 0.0);
    for (std::size_t r = 0; r < grad_out.rows(); ++r) {
        auto row = grad_out.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) g.grad_b[c] += row[c];
    }
    return g;
}

}  // namespace spikescope
