#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace ffp {

/// A point of R^d. Dimensions are desk scale; plain contiguous storage.
using Point = std::vector<double>;

bool all_finite(const Point& y);
Point add(const Point& a, const Point& b);
Point subtract(const Point& a, const Point& b);
Point scaled(double c, const Point& a);
double sup_norm(const Point& a);
double sup_distance(const Point& a, const Point& b);
Point zeros(std::size_t dim);
Point basis_vector(std::size_t dim, std::size_t axis);

/// Dense row-major matrix. Default state is the empty 0x0 matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);
    /// Validates that the rows are nonempty and rectangular.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Point apply(const Point& y) const;
    Matrix transpose() const;
    Matrix multiply(const Matrix& other) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Solves M x = rhs by Gaussian elimination with partial pivoting.
/// Returns nullopt when the best pivot falls below pivot_tol in magnitude.
std::optional<Point> solve_linear(Matrix m, Point rhs, double pivot_tol = 1e-12);

}  // namespace ffp
