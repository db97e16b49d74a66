#include "llrlab/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "llrlab/errors.hpp"

namespace llrlab {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw ContractError("Matrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ContractError("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols() != v.size()) throw ContractError("matrix-vector product: dimensions differ");
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

namespace {

template <class F>
Matrix elementwise(const Matrix& a, const Matrix& b, F f) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractError("matrix arithmetic: shapes differ");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f(a(i, j), b(i, j));
    return c;
}

template <class F>
Vector elementwise(const Vector& a, const Vector& b, F f) {
    if (a.size() != b.size()) throw ContractError("vector arithmetic: dimensions differ");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = f(a[i], b[i]);
    return c;
}

}  // namespace

Matrix operator-(const Matrix& a, const Matrix& b) {
    return elementwise(a, b, [](double x, double y) { return x - y; });
}
Matrix operator+(const Matrix& a, const Matrix& b) {
    return elementwise(a, b, [](double x, double y) { return x + y; });
}
Vector operator-(const Vector& a, const Vector& b) {
    return elementwise(a, b, [](double x, double y) { return x - y; });
}
Vector operator+(const Vector& a, const Vector& b) {
    return elementwise(a, b, [](double x, double y) { return x + y; });
}

Vector operator*(double s, const Vector& v) {
    Vector out = v;
    for (auto& x : out) x *= s;
    return out;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw ContractError("dot: dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double x : a.values()) s += x * x;
    return std::sqrt(s);
}

bool all_finite(const Matrix& a) {
    return std::all_of(a.values().begin(), a.values().end(),
                       [](double x) { return std::isfinite(x); });
}

bool all_finite(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool is_symmetric(const Matrix& a, double rel_tol) {
    if (!a.square()) return false;
    double scale = 0.0;
    for (double x : a.values()) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    return true;
}

Matrix cholesky(const Matrix& s) {
    if (!s.square() || s.rows() == 0) throw ContractError("cholesky: matrix must be square and non-empty");
    if (!all_finite(s)) throw ContractError("cholesky: non-finite entry");
    if (!is_symmetric(s)) throw ContractError("cholesky: matrix is not symmetric");
    const std::size_t n = s.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) {
            throw DecompositionError(
                "cholesky: matrix is not positive definite (pivot " + std::to_string(j) + ")", j);
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = s(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / ljj;
        }
    }
    return l;
}

Vector solve_lower(const Matrix& l, const Vector& b) {
    const std::size_t n = l.rows();
    if (b.size() != n) throw ContractError("solve_lower: dimensions differ");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * y[k];
        y[i] = v / l(i, i);
    }
    return y;
}

Vector solve_lower_transposed(const Matrix& l, const Vector& b) {
    const std::size_t n = l.rows();
    if (b.size() != n) throw ContractError("solve_lower_transposed: dimensions differ");
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * x[k];
        x[ii] = v / l(ii, ii);
    }
    return x;
}

SymmetricEigen symmetric_eigen(const Matrix& s) {
    if (!s.square()) throw ContractError("symmetric_eigen: matrix must be square");
    const std::size_t n = s.rows();
    Matrix a = s;
    Matrix v = Matrix::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += a(i, j) * a(i, j);
                if (i != j) off += a(i, j) * a(i, j);
            }
        if (off <= 1e-30 * total || off == 0.0) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double spd_condition_number(const Matrix& s) {
    const auto eig = symmetric_eigen(s);
    const double lo = eig.values.front();
    const double hi = eig.values.back();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

SpdFactor::SpdFactor(const Matrix& s) {
    if (!s.square() || s.rows() == 0) throw ContractError("SpdFactor: matrix must be square and non-empty");
    if (!all_finite(s)) throw ContractError("SpdFactor: non-finite entry");
    if (!is_symmetric(s)) throw ContractError("SpdFactor: matrix is not symmetric");
    condition_ = spd_condition_number(s);
    if (!(condition_ <= kConditionLimit)) {
        throw ConditioningError("matrix is singular or ill-conditioned (condition estimate " +
                                std::to_string(condition_) + ")");
    }
    try {
        lower_ = cholesky(s);
    } catch (const DecompositionError& e) {
        throw ConditioningError(std::string("matrix is singular: ") + e.what());
    }
    log_det_ = 0.0;
    for (std::size_t i = 0; i < lower_.rows(); ++i) log_det_ += 2.0 * std::log(lower_(i, i));
}

Vector SpdFactor::solve(const Vector& v) const {
    return solve_lower_transposed(lower_, solve_lower(lower_, v));
}

double SpdFactor::inverse_quadratic_form(const Vector& v) const {
    const Vector y = solve_lower(lower_, v);
    return dot(y, y);
}

Vector spd_solve(const Matrix& s, const Vector& v) {
    if (s.rows() != v.size()) throw ContractError("spd_solve: dimensions differ");
    return SpdFactor(s).solve(v);
}

Matrix spd_inverse(const Matrix& s) {
    const SpdFactor f(s);
    const std::size_t n = s.rows();
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n);
        e[j] = 1.0;
        const Vector col = f.solve(e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    // Symmetrize away rounding asymmetry.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = inv(j, i) = m;
        }
    return inv;
}

double log_det_spd(const Matrix& s) { return SpdFactor(s).log_det(); }

}  // namespace llrlab
