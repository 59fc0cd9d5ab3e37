#pragma once

#include "maysseq/fp.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace maysseq {

using FpVector = std::vector<Fp>;

// Dense matrix over the prime field F_p, row-major.
class FpMatrix {
public:
    FpMatrix(Fp p, std::size_t rows, std::size_t cols);
    // Entries are reduced modulo p; rows must all have length cols.
    FpMatrix(Fp p, const std::vector<std::vector<std::int64_t>>& entries, std::size_t cols);

    static FpMatrix identity(Fp p, std::size_t n);

    Fp prime() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fp operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t value);
    void add_to(std::size_t r, std::size_t c, Fp value);

    std::span<const Fp> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Fp> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    FpVector apply(std::span<const Fp> v) const;
    bool is_zero() const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

private:
    Fp p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Fp> data_;
};

// Reduced row echelon form with deterministic pivoting: columns are scanned
// left to right and the first remaining row with a nonzero entry is the pivot.
struct RowEchelon {
    FpMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};

RowEchelon row_echelon(FpMatrix m);

std::size_t rank(const FpMatrix& m);

// Basis of {v : m v = 0}; one vector per non-pivot column, with a 1 in that
// column.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

// dim ker(d_out) - rank(d_in), for d_in : A -> B and d_out : B -> C.
// Throws CompositionError when d_out * d_in != 0 and Error on shape mismatch.
std::size_t homology_dimension(const FpMatrix& d_in, const FpMatrix& d_out);

// Incrementally built subspace of F_p^dim kept in echelon form.
class EchelonSpan {
public:
    EchelonSpan(Fp p, std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return basis_.size(); }

    // Reduces v against the current basis; zero iff v lies in the span.
    FpVector reduce(FpVector v) const;
    bool contains(std::span<const Fp> v) const;
    // Returns true when v was independent of the span and has been added.
    bool add(std::span<const Fp> v);

private:
    Fp p_;
    std::size_t dim_;
    std::vector<FpVector> basis_;  // each normalized, leading entry 1
    std::vector<std::size_t> lead_;
};

}  // namespace maysseq
