#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace spikescope {

/// Dense row-major matrix of doubles. Shared substrate for spectrograms,
/// snapshot matrices, attention maps and parameter arrays.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& values() noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool operator==(const Matrix&) const = default;

    std::string shape_str() const;  // e.g. "3x4"

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Throws std::domain_error if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_finite(std::span<const double> v, const char* what);

Matrix matmul(const Matrix& a, const Matrix& b);

/// Materialized transpose (not a view).
Matrix transpose(const Matrix& m);

/// Row-wise softmax with max subtraction. Every output row is a
/// probability vector; total on finite input.
Matrix softmax_rows(const Matrix& m);

/// x.w + bias broadcast per row. bias.size() must equal w.cols().
Matrix linear_forward(const Matrix& x, const Matrix& w, std::span<const double> bias);

struct LinearGrads {
    Matrix grad_x;
    Matrix grad_w;
    std::vector<double> grad_b;
};

/// Reverse of linear_forward: grad_x = g.w^T, grad_w = x^T.g,
/// grad_b = column sums of g.
LinearGrads linear_backward(const Matrix& grad_out, const Matrix& x, const Matrix& w);

}  // namespace spikescope
