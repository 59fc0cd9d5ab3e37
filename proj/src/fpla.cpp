#include "maysseq/fpla.hpp"

#include "maysseq/error.hpp"

#include <string>
#include <utility>

namespace maysseq {

FpMatrix::FpMatrix(Fp p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
    require_prime(p);
}

FpMatrix::FpMatrix(Fp p, const std::vector<std::vector<std::int64_t>>& entries, std::size_t cols)
    : FpMatrix(p, entries.size(), cols)
{
    for (std::size_t r = 0; r < rows_; ++r) {
        if (entries[r].size() != cols)
            throw Error("ragged matrix row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c)
            data_[r * cols_ + c] = fp_reduce(entries[r][c], p_);
    }
}

FpMatrix FpMatrix::identity(Fp p, std::size_t n)
{
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i * n + i] = 1 % p;
    return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value)
{
    data_[r * cols_ + c] = fp_reduce(value, p_);
}

void FpMatrix::add_to(std::size_t r, std::size_t c, Fp value)
{
    Fp& x = data_[r * cols_ + c];
    x = fp_add(x, value % p_, p_);
}

FpVector FpMatrix::apply(std::span<const Fp> v) const
{
    if (v.size() != cols_)
        throw Error("vector length does not match matrix columns");
    FpVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const Fp* row = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += std::uint64_t(row[c]) * v[c];
            if (acc >= (std::uint64_t(1) << 62))
                acc %= p_;
        }
        out[r] = static_cast<Fp>(acc % p_);
    }
    return out;
}

bool FpMatrix::is_zero() const
{
    for (Fp x : data_)
        if (x)
            return false;
    return true;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p_ != b.p_)
        throw Error("matrix product over different primes");
    if (a.cols_ != b.rows_)
        throw Error("matrix product shape mismatch");
    FpMatrix out(a.p_, a.rows_, b.cols_);
    const Fp p = a.p_;
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t l = 0; l < a.cols_; ++l) {
            Fp x = a(i, l);
            if (!x)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out.data_[i * out.cols_ + j] = fp_add(out.data_[i * out.cols_ + j], fp_mul(x, b(l, j), p), p);
        }
    return out;
}

RowEchelon row_echelon(FpMatrix m)
{
    const Fp p = m.prime();
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t c = 0; c < m.cols() && top < m.rows(); ++c) {
        std::size_t r = top;
        while (r < m.rows() && m(r, c) == 0)
            ++r;
        if (r == m.rows())
            continue;
        if (r != top) {
            auto a = m.row(r);
            auto b = m.row(top);
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(a[j], b[j]);
        }
        auto prow = m.row(top);
        Fp inv = fp_inv(prow[c], p);
        for (std::size_t j = c; j < m.cols(); ++j)
            prow[j] = fp_mul(prow[j], inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == top)
                continue;
            auto row = m.row(i);
            Fp f = row[c];
            if (!f)
                continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (prow[j])
                    row[j] = fp_sub(row[j], fp_mul(f, prow[j], p), p);
        }
        pivots.push_back(c);
        ++top;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    return row_echelon(m).pivot_cols.size();
}

std::vector<FpVector> kernel_basis(const FpMatrix& m)
{
    const Fp p = m.prime();
    RowEchelon e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols)
        is_pivot[c] = true;
    std::vector<FpVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        FpVector v(m.cols(), 0);
        v[f] = 1 % p;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = fp_neg(e.reduced(r, f), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t homology_dimension(const FpMatrix& d_in, const FpMatrix& d_out)
{
    if (d_out.cols() != d_in.rows())
        throw Error("homology_dimension: middle dimensions disagree (" + std::to_string(d_in.rows()) + " vs " +
                    std::to_string(d_out.cols()) + ")");
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw CompositionError("d_out * d_in is nonzero");
    std::size_t middle = d_out.cols();
    return middle - rank(d_out) - rank(d_in);
}

EchelonSpan::EchelonSpan(Fp p, std::size_t dim) : p_(p), dim_(dim)
{
    require_prime(p);
}

FpVector EchelonSpan::reduce(FpVector v) const
{
    if (v.size() != dim_)
        throw Error("EchelonSpan: vector length mismatch");
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        Fp f = v[lead_[b]];
        if (!f)
            continue;
        const FpVector& row = basis_[b];
        for (std::size_t j = lead_[b]; j < dim_; ++j)
            if (row[j])
                v[j] = fp_sub(v[j], fp_mul(f, row[j], p_), p_);
    }
    return v;
}

bool EchelonSpan::contains(std::span<const Fp> v) const
{
    FpVector r = reduce(FpVector(v.begin(), v.end()));
    for (Fp x : r)
        if (x)
            return false;
    return true;
}

bool EchelonSpan::add(std::span<const Fp> v)
{
    FpVector r = reduce(FpVector(v.begin(), v.end()));
    std::size_t lead = 0;
    while (lead < dim_ && r[lead] == 0)
        ++lead;
    if (lead == dim_)
        return false;
    Fp inv = fp_inv(r[lead], p_);
    for (std::size_t j = lead; j < dim_; ++j)
        r[j] = fp_mul(r[j], inv, p_);
    basis_.push_back(std::move(r));
    lead_.push_back(lead);
    return true;
}

}  // namespace maysseq
