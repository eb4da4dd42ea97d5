#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iqp {

// Dense bit vector over GF(2). Bit i lives in word i/64 at position i%64.
// Padding bits above size() are always zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t size);

    static BitVector from_string(std::string_view bits);
    std::string to_string() const;

    std::size_t size() const { return size_; }
    std::size_t num_words() const { return words_.size(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    std::span<uint64_t> words() { return words_; }
    std::span<const uint64_t> words() const { return words_; }

    BitVector &operator^=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    BitVector operator&(const BitVector &other) const;
    bool operator==(const BitVector &other) const = default;
    bool operator<(const BitVector &other) const;

    // Inner product mod 2.
    bool dot(const BitVector &other) const;
    std::size_t popcount() const;
    bool none() const;
    bool any() const { return !none(); }

   private:
    std::size_t size_ = 0;
    std::vector<uint64_t> words_;
};

// Dense row-major bit-packed matrix over GF(2).
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_strings(const std::vector<std::string> &rows, std::size_t cols = 0);
    static BitMatrix from_rows(const std::vector<BitVector> &rows, std::size_t cols);
    std::vector<std::string> to_strings() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const { return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t m = uint64_t{1} << (c & 63);
        uint64_t &w = data_[r * wpr_ + (c >> 6)];
        if (v) {
            w |= m;
        } else {
            w &= ~m;
        }
    }
    void flip(std::size_t r, std::size_t c) { data_[r * wpr_ + (c >> 6)] ^= uint64_t{1} << (c & 63); }

    std::span<uint64_t> row_words(std::size_t r) { return {data_.data() + r * wpr_, wpr_}; }
    std::span<const uint64_t> row_words(std::size_t r) const { return {data_.data() + r * wpr_, wpr_}; }

    BitVector row(std::size_t r) const;
    BitVector col(std::size_t c) const;
    void set_row(std::size_t r, const BitVector &v);

    // row[dst] ^= row[src]
    void add_row(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);
    // col[dst] ^= col[src]
    void add_col(std::size_t src, std::size_t dst);

    BitMatrix transpose() const;
    // Selects the listed rows, in the given order.
    BitMatrix select_rows(const std::vector<std::size_t> &which) const;
    // Horizontal concatenation [this | other].
    BitMatrix hconcat(const BitMatrix &other) const;
    // Vertical concatenation [this ; other].
    BitMatrix vconcat(const BitMatrix &other) const;

    // M·x for x of length cols().
    BitVector mul(const BitVector &x) const;
    bool is_zero() const;

    bool operator==(const BitMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<uint64_t> data_;
};

std::size_t rank(const BitMatrix &m);

struct ColumnEchelon {
    BitMatrix reduced;    // rows(M) × rank(M)
    BitMatrix transform;  // cols(M) × cols(M), invertible, M·transform = [reduced | 0]
};

// Canonical reduced column-echelon form with zero columns dropped.
ColumnEchelon column_echelon(const BitMatrix &m);

// Some x with m·x = b, or nullopt when b is outside the column space.
std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b);

BitMatrix gf2_product(const BitMatrix &a, const BitMatrix &b);
inline BitMatrix operator*(const BitMatrix &a, const BitMatrix &b) { return gf2_product(a, b); }

// Inverse of a square matrix, nullopt if singular.
std::optional<BitMatrix> inverse(const BitMatrix &m);

struct RowOp {
    enum class Kind { Add, Swap };
    Kind kind;
    std::size_t a;  // Add: source row; Swap: first row
    std::size_t b;  // Add: target row; Swap: second row
    bool operator==(const RowOp &) const = default;
};

// Applies op to the rows of m in place.
void apply_row_op(BitMatrix &m, const RowOp &op);

// Row additions and swaps which, applied in order to the identity, give m.
// Throws std::domain_error when m is singular.
std::vector<RowOp> transvection_synthesis(const BitMatrix &m);

BitMatrix random_bitmatrix(std::size_t rows, std::size_t cols, uint64_t seed);
BitVector random_bitvector(std::size_t size, uint64_t seed);
// Uniform invertible n×n matrix by rejection.
BitMatrix random_invertible(std::size_t n, uint64_t seed);

}  // namespace iqp
