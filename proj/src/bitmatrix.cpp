#include "hps/bitmatrix.hpp"

#include <algorithm>
#include <bit>

#include "hps/errors.hpp"

namespace hps {

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged row strings");
        for (std::size_t j = 0; j < c; ++j) {
            const char ch = rows[i][j];
            if (ch != '0' && ch != '1') throw Error("row string must be 0/1");
            if (ch == '1') m.set(i, j, true);
        }
    }
    return m;
}

void BitMatrix::row_xor(std::size_t dst, std::size_t src) {
    std::uint64_t* d = data_.data() + dst * wpr_;
    const std::uint64_t* s = data_.data() + src * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BitMatrix::row_xor_from(const BitMatrix& other, std::size_t dst, std::size_t src) {
    std::uint64_t* d = data_.data() + dst * wpr_;
    const std::uint64_t* s = other.data_.data() + src * other.wpr_;
    for (std::size_t w = 0; w < std::min(wpr_, other.wpr_); ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * wpr_, data_.begin() + (a + 1) * wpr_,
                     data_.begin() + b * wpr_);
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    const std::uint64_t* w = row_words(r);
    for (std::size_t i = 0; i < wpr_; ++i)
        if (w[i]) return false;
    return true;
}

std::uint64_t BitMatrix::row_bits(std::size_t r) const {
    if (cols_ > 64) throw TooLarge("row_bits needs cols <= 64");
    return wpr_ ? data_[r * wpr_] : 0;
}

void BitMatrix::set_row_bits(std::size_t r, std::uint64_t bits) {
    if (cols_ > 64) throw TooLarge("set_row_bits needs cols <= 64");
    if (wpr_) data_[r * wpr_] = bits & (cols_ == 64 ? ~0ull : ((1ull << cols_) - 1));
}

std::string BitMatrix::row_string(std::size_t r) const {
    std::string s(cols_, '0');
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) s[c] = '1';
    return s;
}

std::vector<std::string> BitMatrix::to_row_strings() const {
    std::vector<std::string> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_string(r));
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

BitMatrix BitMatrix::row_slice(std::size_t r0, std::size_t r1) const {
    BitMatrix out(r1 - r0, cols_);
    for (std::size_t r = r0; r < r1; ++r)
        std::copy(data_.begin() + r * wpr_, data_.begin() + (r + 1) * wpr_,
                  out.data_.begin() + (r - r0) * wpr_);
    return out;
}

bool BitMatrix::operator==(const BitMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

namespace {

// Gauss-Jordan on [m | I]; returns reduced form, transform and pivots.
RrefResult eliminate(const BitMatrix& m) {
    RrefResult res{m, BitMatrix::identity(m.rows()), {}};
    BitMatrix& a = res.reduced;
    BitMatrix& t = res.transform;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.rows() && !a.get(pivot, col)) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != row) {
            a.swap_rows(pivot, row);
            t.swap_rows(pivot, row);
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r != row && a.get(r, col)) {
                a.row_xor(r, row);
                t.row_xor(r, row);
            }
        }
        res.pivots.push_back(col);
        ++row;
    }
    return res;
}

}  // namespace

std::size_t rank(const BitMatrix& m) { return eliminate(m).pivots.size(); }

RrefResult rref(const BitMatrix& m) { return eliminate(m); }

BitMatrix invert(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw SingularMatrix("invert: matrix not square");
    RrefResult res = eliminate(m);
    if (res.pivots.size() != m.rows()) throw SingularMatrix("invert: rank deficient");
    return res.transform;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.get(i, k)) out.row_xor_from(b, i, k);
        }
    }
    return out;
}

std::uint64_t matvec_bits(const BitMatrix& a, std::uint64_t x) {
    if (a.cols() > 64 || a.rows() > 64) throw TooLarge("matvec_bits needs dims <= 64");
    std::uint64_t y = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const std::uint64_t parity = std::popcount(a.row_bits(r) & x) & 1u;
        y |= parity << r;
    }
    return y;
}

std::vector<std::uint8_t> matvec(const BitMatrix& a, const std::vector<std::uint8_t>& x) {
    if (x.size() != a.cols()) throw DimensionMismatch("matvec: size mismatch");
    std::vector<std::uint8_t> y(a.rows(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) acc ^= (a.get(r, c) & x[c]);
        y[r] = static_cast<std::uint8_t>(acc & 1);
    }
    return y;
}

BitMatrix sample_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng.next_bit()) m.set(r, c, true);
    return m;
}

BitMatrix sample_gl(std::size_t n, Rng& rng) {
    for (;;) {
        BitMatrix m = sample_uniform(n, n, rng);
        if (rank(m) == n) return m;
    }
}

BitMatrix sample_full_rank(std::size_t rows, std::size_t cols, Rng& rng) {
    const std::size_t want = std::min(rows, cols);
    for (;;) {
        BitMatrix m = sample_uniform(rows, cols, rng);
        if (rank(m) == want) return m;
    }
}

BitMatrix complete_to_basis(const BitMatrix& m) {
    const std::size_t n = m.cols();
    if (rank(m) != m.rows()) throw RankDeficient("complete_to_basis: rows not independent");
    BitMatrix out(n, n);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (m.get(r, c)) out.set(r, c, true);
    std::size_t filled = m.rows();
    for (std::size_t c = 0; c < n && filled < n; ++c) {
        out.set(filled, c, true);
        if (rank(out.row_slice(0, filled + 1)) == filled + 1) {
            ++filled;
        } else {
            out.set(filled, c, false);
        }
    }
    return out;
}

}  // namespace hps
