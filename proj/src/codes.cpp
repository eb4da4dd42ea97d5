#include "iqp/codes.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace iqp {

namespace {

// Columns of the reduced generator form a basis.
std::vector<BitVector> basis_of(const LinearCode &c) {
    BitMatrix r = column_echelon(c.generator).reduced;
    std::vector<BitVector> basis;
    for (std::size_t j = 0; j < r.cols(); j++) {
        basis.push_back(r.col(j));
    }
    return basis;
}

}  // namespace

LinearCode make_code(const BitMatrix &generator) {
    return {generator, generator.rows(), rank(generator)};
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; d++) {
        if (n % d == 0) return false;
    }
    return true;
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
    unsigned __int128 result = 1 % mod;
    unsigned __int128 b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<uint64_t>(result);
}

int legendre(uint64_t a, uint64_t p) {
    uint64_t r = pow_mod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

BitVector qr_indicator(uint64_t q) {
    BitVector v(q);
    for (uint64_t j = 1; j < q; j++) {
        if (legendre(j, q) == 1) {
            v.set(j, true);
        }
    }
    return v;
}

LinearCode qr_code(uint64_t q) {
    if (!is_prime(q) || (q + 1) % 8 != 0) {
        throw std::invalid_argument("qr_code: q must be a prime with 8 | q+1, got " + std::to_string(q));
    }
    BitVector ind = qr_indicator(q);
    BitMatrix circ(q, q);
    for (uint64_t shift = 0; shift < q; shift++) {
        for (uint64_t j = 0; j < q; j++) {
            if (ind.get(j)) {
                circ.set((j + shift) % q, shift, true);
            }
        }
    }
    return make_code(column_echelon(circ).reduced);
}

LinearCode extended_hamming_code() {
    // Columns: all-ones plus the three coordinate functions of F₂³.
    BitMatrix g(8, 4);
    for (std::size_t i = 0; i < 8; i++) {
        g.set(i, 0, true);
        for (std::size_t b = 0; b < 3; b++) {
            g.set(i, b + 1, (i >> b) & 1);
        }
    }
    return make_code(g);
}

LinearCode repetition_code(std::size_t length) {
    BitMatrix g(length, 1);
    for (std::size_t i = 0; i < length; i++) {
        g.set(i, 0, true);
    }
    return make_code(g);
}

std::vector<uint64_t> weight_distribution(const LinearCode &c) {
    if (c.rank > kMaxEnumerationRank) {
        throw std::length_error("weight_distribution: rank " + std::to_string(c.rank) + " exceeds enumeration bound");
    }
    std::vector<BitVector> basis = basis_of(c);
    std::vector<uint64_t> counts(c.length + 1, 0);
    BitVector word(c.length);
    counts[0] = 1;
    uint64_t total = uint64_t{1} << basis.size();
    for (uint64_t i = 1; i < total; i++) {
        // Gray code: step i toggles basis vector countr_zero(i).
        word ^= basis[std::countr_zero(i)];
        counts[word.popcount()]++;
    }
    return counts;
}

double wep_eval(const LinearCode &c, double x, double y) {
    std::vector<uint64_t> counts = weight_distribution(c);
    double total = 0;
    for (std::size_t w = 0; w < counts.size(); w++) {
        if (counts[w]) {
            total += static_cast<double>(counts[w]) * std::pow(x, w) * std::pow(y, c.length - w);
        }
    }
    return total;
}

double code_bias(const LinearCode &c, double theta) {
    std::vector<uint64_t> counts = weight_distribution(c);
    double total = 0;
    for (std::size_t w = 0; w < counts.size(); w++) {
        if (counts[w]) {
            double v = std::cos(theta * (static_cast<double>(c.length) - 2.0 * static_cast<double>(w)));
            total += static_cast<double>(counts[w]) * v * v;
        }
    }
    return total / std::ldexp(1.0, static_cast<int>(c.rank));
}

bool is_doubly_even(const LinearCode &c) {
    // Generators of weight 0 mod 4 that are pairwise orthogonal span a
    // doubly-even code, since wt(a+b) = wt(a) + wt(b) − 2|a∧b|.
    std::vector<BitVector> basis = basis_of(c);
    for (std::size_t i = 0; i < basis.size(); i++) {
        if (basis[i].popcount() % 4 != 0) return false;
        for (std::size_t j = i + 1; j < basis.size(); j++) {
            if (basis[i].dot(basis[j])) return false;
        }
    }
    return true;
}

bool is_self_dual(const LinearCode &c) {
    if (c.length % 2 != 0 || 2 * c.rank != c.length) {
        return false;
    }
    return gf2_product(c.generator.transpose(), c.generator).is_zero();
}

std::size_t gram_rank(const BitMatrix &g) {
    return rank(gf2_product(g.transpose(), g));
}

}  // namespace iqp
