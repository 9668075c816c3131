#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hps/rng.hpp"

namespace hps {

// Dense bit-packed matrix over GF(2). Rows are packed LSB-first into
// 64-bit words (column j lives at word j/64, bit j%64), padded to a word
// boundary so elimination and products run word-parallel.
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0), wpr_(0) {}
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }
    // Rows given as '0'/'1' strings, e.g. {"110", "011"}.
    static BitMatrix from_rows(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = 1ull << (c % 64);
        if (v)
            data_[r * wpr_ + c / 64] |= mask;
        else
            data_[r * wpr_ + c / 64] &= ~mask;
    }

    const std::uint64_t* row_words(std::size_t r) const { return data_.data() + r * wpr_; }
    std::size_t words_per_row() const { return wpr_; }

    void row_xor(std::size_t dst, std::size_t src);
    // data[dst] ^= other.data[src]; column counts must match.
    void row_xor_from(const BitMatrix& other, std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    bool row_is_zero(std::size_t r) const;

    // Row r as an n-bit packed word, n = cols <= 64.
    std::uint64_t row_bits(std::size_t r) const;
    void set_row_bits(std::size_t r, std::uint64_t bits);

    std::string row_string(std::size_t r) const;
    std::vector<std::string> to_row_strings() const;

    BitMatrix transposed() const;
    // Rows [r0, r1) as a new matrix.
    BitMatrix row_slice(std::size_t r0, std::size_t r1) const;

    bool operator==(const BitMatrix& other) const;
    bool operator!=(const BitMatrix& other) const { return !(*this == other); }

private:
    std::size_t rows_, cols_, wpr_;
    std::vector<std::uint64_t> data_;
};

struct RrefResult {
    BitMatrix reduced;            // R = T * M, reduced row echelon form
    BitMatrix transform;          // T, invertible
    std::vector<std::size_t> pivots;
};

std::size_t rank(const BitMatrix& m);
RrefResult rref(const BitMatrix& m);
// Throws SingularMatrix unless m is square and full rank.
BitMatrix invert(const BitMatrix& m);

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);
// y = A * x over GF(2); x, y as packed words (cols, rows <= 64).
std::uint64_t matvec_bits(const BitMatrix& a, std::uint64_t x);
std::vector<std::uint8_t> matvec(const BitMatrix& a, const std::vector<std::uint8_t>& x);

BitMatrix sample_uniform(std::size_t rows, std::size_t cols, Rng& rng);
// Uniform over GL(n, Z2) by rejection; acceptance probability >= 0.288.
BitMatrix sample_gl(std::size_t n, Rng& rng);
// Uniform over {A : rank(A) = min(rows, cols)} by rejection.
BitMatrix sample_full_rank(std::size_t rows, std::size_t cols, Rng& rng);

// Extends the rows of m (must be linearly independent) to a basis of
// GF(2)^cols with unit vectors; result is cols x cols, invertible, with
// the rows of m first.
BitMatrix complete_to_basis(const BitMatrix& m);

}  // namespace hps
