#include "iqp/f2la.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "iqp/rng.hpp"

namespace iqp {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

uint64_t tail_mask(std::size_t bits) {
    std::size_t r = bits & 63;
    return r == 0 ? ~uint64_t{0} : (uint64_t{1} << r) - 1;
}

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string contains a character other than 0 or 1");
        }
    }
    return v;
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVector size mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector r = *this;
    r ^= other;
    return r;
}

BitVector BitVector::operator&(const BitVector &other) const {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVector size mismatch");
    }
    BitVector r = *this;
    for (std::size_t w = 0; w < words_.size(); w++) {
        r.words_[w] &= other.words_[w];
    }
    return r;
}

bool BitVector::operator<(const BitVector &other) const {
    if (size_ != other.size_) {
        return size_ < other.size_;
    }
    return words_ < other.words_;
}

bool BitVector::dot(const BitVector &other) const {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVector size mismatch");
    }
    uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (uint64_t w : words_) {
        n += std::popcount(w);
    }
    return n;
}

bool BitVector::none() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows, std::size_t cols) {
    if (!rows.empty()) {
        cols = rows[0].size();
    }
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("ragged rows");
        }
        m.set_row(r, BitVector::from_string(rows[r]));
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector> &rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); r++) {
        m.set_row(r, rows[r]);
    }
    return m;
}

std::vector<std::string> BitMatrix::to_strings() const {
    std::vector<std::string> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        out.push_back(row(r).to_string());
    }
    return out;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(data_.begin() + r * wpr_, wpr_, v.words().begin());
    return v;
}

BitVector BitMatrix::col(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        if (get(r, c)) {
            v.set(r, true);
        }
    }
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector &v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("row length mismatch");
    }
    std::copy_n(v.words().begin(), wpr_, data_.begin() + r * wpr_);
}

void BitMatrix::add_row(std::size_t src, std::size_t dst) {
    uint64_t *d = data_.data() + dst * wpr_;
    const uint64_t *s = data_.data() + src * wpr_;
    for (std::size_t w = 0; w < wpr_; w++) {
        d[w] ^= s[w];
    }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(data_.begin() + a * wpr_, data_.begin() + (a + 1) * wpr_, data_.begin() + b * wpr_);
}

void BitMatrix::add_col(std::size_t src, std::size_t dst) {
    for (std::size_t r = 0; r < rows_; r++) {
        if (get(r, src)) {
            flip(r, dst);
        }
    }
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t w = 0; w < wpr_; w++) {
            uint64_t bits = data_[r * wpr_ + w];
            while (bits) {
                std::size_t c = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::select_rows(const std::vector<std::size_t> &which) const {
    BitMatrix m(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); i++) {
        std::copy_n(data_.begin() + which[i] * wpr_, wpr_, m.data_.begin() + i * wpr_);
    }
    return m;
}

BitMatrix BitMatrix::hconcat(const BitMatrix &other) const {
    if (other.rows_ != rows_) {
        throw std::invalid_argument("hconcat row mismatch");
    }
    BitMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            if (get(r, c)) m.set(r, c, true);
        }
        for (std::size_t c = 0; c < other.cols_; c++) {
            if (other.get(r, c)) m.set(r, cols_ + c, true);
        }
    }
    return m;
}

BitMatrix BitMatrix::vconcat(const BitMatrix &other) const {
    if (other.cols_ != cols_) {
        throw std::invalid_argument("vconcat column mismatch");
    }
    BitMatrix m(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(), m.data_.begin() + data_.size());
    return m;
}

BitVector BitMatrix::mul(const BitVector &x) const {
    if (x.size() != cols_) {
        throw std::invalid_argument("matrix-vector size mismatch");
    }
    BitVector y(rows_);
    auto xw = x.words();
    for (std::size_t r = 0; r < rows_; r++) {
        uint64_t acc = 0;
        for (std::size_t w = 0; w < wpr_; w++) {
            acc ^= data_[r * wpr_ + w] & xw[w];
        }
        if (std::popcount(acc) & 1) {
            y.set(r, true);
        }
    }
    return y;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t w) { return w == 0; });
}

std::size_t rank(const BitMatrix &m) {
    BitMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); c++) {
        std::size_t p = r;
        while (p < a.rows() && !a.get(p, c)) {
            p++;
        }
        if (p == a.rows()) {
            continue;
        }
        a.swap_rows(p, r);
        for (std::size_t i = r + 1; i < a.rows(); i++) {
            if (a.get(i, c)) {
                a.add_row(r, i);
            }
        }
        r++;
    }
    return r;
}

ColumnEchelon column_echelon(const BitMatrix &m) {
    // Row-reduce the transpose, tracking the row operations in e.
    // Then e·mᵀ = [Rᵀ; 0], i.e. m·eᵀ = [R | 0].
    BitMatrix t = m.transpose();
    BitMatrix e = BitMatrix::identity(m.cols());
    std::size_t r = 0;
    for (std::size_t c = 0; c < t.cols() && r < t.rows(); c++) {
        std::size_t p = r;
        while (p < t.rows() && !t.get(p, c)) {
            p++;
        }
        if (p == t.rows()) {
            continue;
        }
        t.swap_rows(p, r);
        e.swap_rows(p, r);
        for (std::size_t i = 0; i < t.rows(); i++) {
            if (i != r && t.get(i, c)) {
                t.add_row(r, i);
                e.add_row(r, i);
            }
        }
        r++;
    }
    std::vector<std::size_t> top(r);
    for (std::size_t i = 0; i < r; i++) {
        top[i] = i;
    }
    return {t.select_rows(top).transpose(), e.transpose()};
}

std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b) {
    if (b.size() != m.rows()) {
        throw std::invalid_argument("solve: length(b) != rows(M)");
    }
    ColumnEchelon ce = column_echelon(m);
    std::size_t r = ce.reduced.cols();
    BitVector y(r);
    std::size_t row = 0;
    for (std::size_t j = 0; j < r; j++) {
        while (!ce.reduced.get(row, j)) {
            row++;
        }
        y.set(j, b.get(row));
    }
    if (!(ce.reduced.mul(y) == b)) {
        return std::nullopt;
    }
    BitVector full(m.cols());
    for (std::size_t j = 0; j < r; j++) {
        full.set(j, y.get(j));
    }
    return ce.transform.mul(full);
}

BitMatrix gf2_product(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("gf2_product: dimension mismatch");
    }
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        auto dst = out.row_words(i);
        auto arow = a.row_words(i);
        for (std::size_t w = 0; w < arow.size(); w++) {
            uint64_t bits = arow[w];
            while (bits) {
                std::size_t j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                auto src = b.row_words(j);
                for (std::size_t k = 0; k < dst.size(); k++) {
                    dst[k] ^= src[k];
                }
            }
        }
    }
    return out;
}

std::optional<BitMatrix> inverse(const BitMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("inverse: matrix not square");
    }
    std::size_t n = m.rows();
    BitMatrix a = m;
    BitMatrix inv = BitMatrix::identity(n);
    for (std::size_t c = 0; c < n; c++) {
        std::size_t p = c;
        while (p < n && !a.get(p, c)) {
            p++;
        }
        if (p == n) {
            return std::nullopt;
        }
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        for (std::size_t i = 0; i < n; i++) {
            if (i != c && a.get(i, c)) {
                a.add_row(c, i);
                inv.add_row(c, i);
            }
        }
    }
    return inv;
}

void apply_row_op(BitMatrix &m, const RowOp &op) {
    if (op.kind == RowOp::Kind::Add) {
        m.add_row(op.a, op.b);
    } else {
        m.swap_rows(op.a, op.b);
    }
}

std::vector<RowOp> transvection_synthesis(const BitMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("transvection_synthesis: matrix not square");
    }
    std::size_t n = m.rows();
    BitMatrix a = m;
    std::vector<RowOp> ops;
    for (std::size_t c = 0; c < n; c++) {
        if (!a.get(c, c)) {
            std::size_t p = c + 1;
            while (p < n && !a.get(p, c)) {
                p++;
            }
            if (p == n) {
                throw std::domain_error("transvection_synthesis: singular matrix");
            }
            a.swap_rows(p, c);
            ops.push_back({RowOp::Kind::Swap, c, p});
        }
        for (std::size_t i = 0; i < n; i++) {
            if (i != c && a.get(i, c)) {
                a.add_row(c, i);
                ops.push_back({RowOp::Kind::Add, c, i});
            }
        }
    }
    // Each op is its own inverse, so undoing the reduction in reverse rebuilds m.
    std::reverse(ops.begin(), ops.end());
    return ops;
}

BitMatrix random_bitmatrix(std::size_t rows, std::size_t cols, uint64_t seed) {
    Rng rng(seed, "bitmatrix");
    BitMatrix m(rows, cols);
    uint64_t mask = tail_mask(cols);
    for (std::size_t r = 0; r < rows; r++) {
        auto w = m.row_words(r);
        for (std::size_t i = 0; i < w.size(); i++) {
            w[i] = rng.next();
        }
        if (!w.empty()) {
            w.back() &= mask;
        }
    }
    return m;
}

BitVector random_bitvector(std::size_t size, uint64_t seed) {
    Rng rng(seed, "bitvector");
    BitVector v(size);
    auto w = v.words();
    for (std::size_t i = 0; i < w.size(); i++) {
        w[i] = rng.next();
    }
    if (!w.empty()) {
        w.back() &= tail_mask(size);
    }
    return v;
}

BitMatrix random_invertible(std::size_t n, uint64_t seed) {
    Rng rng(seed, "invertible");
    for (;;) {
        BitMatrix m = random_bitmatrix(n, n, rng.next());
        if (rank(m) == n) {
            return m;
        }
    }
}

}  // namespace iqp
