// Exact linear algebra over prime fields F_p.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dcluster {

using Vec = std::vector<std::uint32_t>;

/// Arithmetic in F_p for a prime p < 2^31. Elements are canonical
/// residues in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t from_int(long long v) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec column(std::size_t c) const;
    void set_column(std::size_t c, const Vec& v);
    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> data_;
};

Matrix multiply(const PrimeField& f, const Matrix& a, const Matrix& b);
Vec apply(const PrimeField& f, const Matrix& a, const Vec& v);
Matrix add(const PrimeField& f, const Matrix& a, const Matrix& b);
Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

Vec add(const PrimeField& f, const Vec& a, const Vec& b);
Vec scale(const PrimeField& f, std::uint32_t s, const Vec& v);
/// v += s * w
void axpy(const PrimeField& f, std::uint32_t s, const Vec& w, Vec& v);
bool is_zero(const Vec& v);

struct Echelon {
    Matrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon row_reduce(const PrimeField& f, Matrix m);
std::size_t rank(const PrimeField& f, const Matrix& m);

/// Columns form a basis of the kernel, one per free column of the RREF.
Matrix nullspace(const PrimeField& f, const Matrix& m);

/// Some x with a x = b, or nothing when b is outside the column space.
std::optional<Vec> solve(const PrimeField& f, const Matrix& a, const Vec& b);

std::optional<Matrix> inverse(const PrimeField& f, const Matrix& m);

/// Projection of F_p^rows onto the quotient by the column span of `span`.
/// `projection` has (rows - rank) rows; lifts[k] is the unit vector index
/// that projects onto the k-th quotient basis vector. Units are picked
/// greedily in index order.
struct Quotient {
    Matrix projection;
    std::vector<std::size_t> lifts;
};

Quotient quotient_by_columns(const PrimeField& f, const Matrix& span);

} // namespace dcluster
