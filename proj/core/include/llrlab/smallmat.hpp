#pragma once
// Minimal dense linear algebra for the small (2..~100 dimensional) problems in this library.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace llrlab {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
    Vector(std::initializer_list<double> values) : data_(values) {}
    explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    bool operator==(const Vector&) const = default;

private:
    std::vector<double> data_;
};

// Row-major dense matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& values() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
Matrix operator*(double s, const Matrix& a);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double frobenius_norm(const Matrix& a);
bool all_finite(const Matrix& a);
bool all_finite(const Vector& v);

// Relative symmetry test: max |a_ij - a_ji| <= rel_tol * max |a_ij|.
bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);

// Matrices whose 2-norm condition number exceeds this are treated as singular.
inline constexpr double kConditionLimit = 1e12;

// Lower-triangular Cholesky factor L with L*L^T = s and positive diagonal.
// Throws DecompositionError naming the first non-positive pivot.
Matrix cholesky(const Matrix& s);

// Forward / back substitution against a lower-triangular factor.
Vector solve_lower(const Matrix& l, const Vector& b);
Vector solve_lower_transposed(const Matrix& l, const Vector& b);

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns are eigenvectors
};

// Cyclic Jacobi eigensolver for symmetric matrices.
SymmetricEigen symmetric_eigen(const Matrix& s);

// Condition number (largest / smallest eigenvalue) of a symmetric positive definite matrix;
// +inf when the smallest eigenvalue is not positive.
double spd_condition_number(const Matrix& s);

// Factorization of a symmetric positive definite matrix, reusable for many solves.
// Construction validates symmetry, definiteness and conditioning.
class SpdFactor {
public:
    explicit SpdFactor(const Matrix& s);

    std::size_t dim() const noexcept { return lower_.rows(); }
    const Matrix& lower() const noexcept { return lower_; }

    Vector solve(const Vector& v) const;
    // v^T S^{-1} v
    double inverse_quadratic_form(const Vector& v) const;
    // ln |S| from the Cholesky diagonal.
    double log_det() const noexcept { return log_det_; }
    double condition_number() const noexcept { return condition_; }

private:
    Matrix lower_;
    double log_det_ = 0.0;
    double condition_ = 1.0;
};

// Solves S x = v for symmetric positive definite S. Throws ConditioningError when S is
// singular or its condition number exceeds kConditionLimit.
Vector spd_solve(const Matrix& s, const Vector& v);

Matrix spd_inverse(const Matrix& s);

// ln |S| for SPD S, from the Cholesky diagonal.
double log_det_spd(const Matrix& s);

}  // namespace llrlab
