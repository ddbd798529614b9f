#include "dcluster/linalg.hpp"

#include <stdexcept>

namespace dcluster {

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (p >= (1u << 31) || !is_prime(p))
        throw std::invalid_argument("field modulus must be a prime below 2^31");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    // Extended Euclid on (a, p).
    long long t = 0, new_t = 1;
    long long r = p_, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return from_int(t);
}

std::uint32_t PrimeField::from_int(long long v) const
{
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<std::uint32_t>(m);
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec Matrix::column(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vec& v)
{
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const
{
    for (auto x : data_)
        if (x != 0) return false;
    return true;
}

Matrix multiply(const PrimeField& f, const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::logic_error("matrix product: shape mismatch");
    Matrix c(a.rows(), b.cols());
    const std::uint64_t p = f.modulus();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
                if (acc >= (1ull << 62)) acc %= p;
            }
            c(i, j) = static_cast<std::uint32_t>(acc % p);
        }
    return c;
}

Vec apply(const PrimeField& f, const Matrix& a, const Vec& v)
{
    if (a.cols() != v.size()) throw std::logic_error("matrix-vector product: shape mismatch");
    Vec out(a.rows(), 0);
    const std::uint64_t p = f.modulus();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            acc += static_cast<std::uint64_t>(a(i, k)) * v[k];
            if (acc >= (1ull << 62)) acc %= p;
        }
        out[i] = static_cast<std::uint32_t>(acc % p);
    }
    return out;
}

Matrix add(const PrimeField& f, const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::logic_error("matrix sum: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
    return c;
}

Matrix hconcat(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) throw std::logic_error("hconcat: row mismatch");
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols)
{
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

Vec add(const PrimeField& f, const Vec& a, const Vec& b)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vec scale(const PrimeField& f, std::uint32_t s, const Vec& v)
{
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(s, v[i]);
    return out;
}

void axpy(const PrimeField& f, std::uint32_t s, const Vec& w, Vec& v)
{
    if (s == 0) return;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(s, w[i]));
}

bool is_zero(const Vec& v)
{
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

Echelon row_reduce(const PrimeField& f, Matrix m)
{
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        const std::uint32_t s = f.inv(m(row, col));
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = f.mul(s, m(row, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const std::uint32_t factor = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const PrimeField& f, const Matrix& m)
{
    return row_reduce(f, m).pivots.size();
}

Matrix nullspace(const PrimeField& f, const Matrix& m)
{
    const Echelon e = row_reduce(f, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.reduced(r, free));
        basis.push_back(std::move(v));
    }
    return from_columns(m.cols(), basis);
}

std::optional<Vec> solve(const PrimeField& f, const Matrix& a, const Vec& b)
{
    if (b.size() != a.rows()) throw std::logic_error("solve: shape mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const Echelon e = row_reduce(f, aug);
    Vec x(a.cols(), 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols()) return std::nullopt;
        x[e.pivots[r]] = e.reduced(r, a.cols());
    }
    return x;
}

std::optional<Matrix> inverse(const PrimeField& f, const Matrix& m)
{
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    const Echelon e = row_reduce(f, hconcat(m, Matrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Quotient quotient_by_columns(const PrimeField& f, const Matrix& span)
{
    const std::size_t n = span.rows();
    // Pivot columns of [span | I] pick independent span columns first, then
    // the earliest unit vectors that complete them to a basis.
    const Echelon e = row_reduce(f, hconcat(span, Matrix::identity(n)));
    std::vector<Vec> basis;
    Quotient q;
    std::size_t span_rank = 0;
    for (auto c : e.pivots) {
        if (c < span.cols()) {
            basis.push_back(span.column(c));
            ++span_rank;
        }
    }
    for (auto c : e.pivots) {
        if (c >= span.cols()) {
            Vec unit(n, 0);
            unit[c - span.cols()] = 1;
            basis.push_back(unit);
            q.lifts.push_back(c - span.cols());
        }
    }
    const auto binv = inverse(f, from_columns(n, basis));
    if (!binv) throw std::logic_error("quotient_by_columns: completed basis is singular");
    q.projection = Matrix(n - span_rank, n);
    for (std::size_t i = 0; i < n - span_rank; ++i)
        for (std::size_t j = 0; j < n; ++j) q.projection(i, j) = (*binv)(span_rank + i, j);
    return q;
}

} // namespace dcluster
