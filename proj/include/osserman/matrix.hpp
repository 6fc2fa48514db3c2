#pragma once

#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osserman/rational.hpp"

namespace osserman {

using Vec = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ > 0 ? init.begin()->size() : 0;
        entries_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer list");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix diagonal(const Vec& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    /// Rows of the matrix are the given vectors.
    static Matrix from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Rational& at(std::size_t i, std::size_t j) {
        check_bounds(i, j);
        return entries_[i * cols_ + j];
    }
    const Rational& at(std::size_t i, std::size_t j) const {
        check_bounds(i, j);
        return entries_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (e != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    Rational trace() const {
        require_square("trace");
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Vec row(std::size_t i) const {
        Vec r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix& operator+=(const Matrix& other) {
        check_same_shape(other, "+");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
        return *this;
    }

    Matrix& operator-=(const Matrix& other) {
        check_same_shape(other, "-");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
        return *this;
    }

    Matrix& operator*=(const Rational& s) {
        for (auto& e : entries_) e *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("Matrix: incompatible shapes for product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b(k, j);
                    if (bkj != 0) r(i, j) += aik * bkj;
                }
            }
        return r;
    }

    Vec apply(const Vec& v) const {
        if (v.size() != cols_)
            throw std::invalid_argument("Matrix::apply: size mismatch");
        Vec r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix pow(std::size_t k) const {
        require_square("pow");
        Matrix result = identity(rows_);
        Matrix base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return result;
    }

    bool operator==(const Matrix& other) const = default;

    std::string to_string() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        // column-aligned rows, bracketed
        std::vector<std::string> cells(m.rows_ * m.cols_);
        std::vector<std::size_t> width(m.cols_, 0);
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) {
                cells[i * m.cols_ + j] = m(i, j).str();
                width[j] = std::max(width[j], cells[i * m.cols_ + j].size());
            }
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << "[ ";
            for (std::size_t j = 0; j < m.cols_; ++j) {
                const std::string& c = cells[i * m.cols_ + j];
                os << std::string(width[j] - c.size(), ' ') << c;
                os << (j + 1 < m.cols_ ? "  " : " ");
            }
            os << "]";
            if (i + 1 < m.rows_) os << '\n';
        }
        return os;
    }

private:
    void check_bounds(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("Matrix: index out of range");
    }
    void check_same_shape(const Matrix& other, const char* op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument(std::string("Matrix: shape mismatch for ") + op);
    }
    void require_square(const char* what) const {
        if (!is_square())
            throw std::invalid_argument(std::string("Matrix: ") + what + " requires a square matrix");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Vec: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator*(const Rational& s, Vec v) {
    for (auto& e : v) e *= s;
    return v;
}

inline bool is_zero_vector(const Vec& v) {
    for (const auto& e : v)
        if (e != 0) return false;
    return true;
}

}  // namespace osserman
