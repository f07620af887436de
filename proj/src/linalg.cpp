#include "ffp/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ffp {

bool all_finite(const Point& y) {
    for (double c : y) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

Point add(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Point subtract(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Point scaled(double c, const Point& a) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

double sup_norm(const Point& a) {
    double m = 0.0;
    for (double c : a) m = std::max(m, std::abs(c));
    return m;
}

double sup_distance(const Point& a, const Point& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Point zeros(std::size_t dim) { return Point(dim, 0.0); }

Point basis_vector(std::size_t dim, std::size_t axis) {
    Point e(dim, 0.0);
    e[axis] = 1.0;
    return e;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw std::invalid_argument("matrix: rows must be nonempty");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Point Matrix::apply(const Point& y) const {
    if (y.size() != cols_) throw std::domain_error("matrix apply: dimension mismatch");
    Point r(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * y[j];
        r[i] = acc;
    }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::multiply(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::domain_error("matrix multiply: dimension mismatch");
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
        }
    return r;
}

std::optional<Point> solve_linear(Matrix m, Point rhs, double pivot_tol) {
    const std::size_t n = m.rows();
    if (m.cols() != n || rhs.size() != n)
        throw std::domain_error("solve_linear: matrix must be square and match rhs");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m(r, col)) > best) {
                best = std::abs(m(r, col));
                pivot_row = r;
            }
        }
        if (best < pivot_tol) return std::nullopt;
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(pivot_row, j));
            std::swap(rhs[col], rhs[pivot_row]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
            rhs[r] -= f * rhs[col];
        }
    }

    Point x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
        x[i] = acc / m(i, i);
    }
    return x;
}

}  // namespace ffp
