#pragma once

#include <cstdint>
#include <vector>

#include "iqp/f2la.hpp"

namespace iqp {

// Binary linear code spanned by the columns of `generator`.
struct LinearCode {
    BitMatrix generator;  // length × (spanning columns)
    std::size_t length = 0;
    std::size_t rank = 0;
};

// Largest rank weight_distribution will enumerate.
inline constexpr std::size_t kMaxEnumerationRank = 28;

LinearCode make_code(const BitMatrix &generator);

bool is_prime(uint64_t n);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod);
// Legendre symbol (a/p) in {-1, 0, 1} for odd prime p.
int legendre(uint64_t a, uint64_t p);

// Cyclic quadratic-residue code of prime length q with 8 | q+1.
// Throws std::invalid_argument otherwise.
LinearCode qr_code(uint64_t q);
// Indicator of the nonzero quadratic residues mod q.
BitVector qr_indicator(uint64_t q);

LinearCode extended_hamming_code();
LinearCode repetition_code(std::size_t length);

// counts[w] = number of codewords of weight w, w = 0..length.
std::vector<uint64_t> weight_distribution(const LinearCode &c);
double wep_eval(const LinearCode &c, double x, double y);
// Mean of cos²(θ(length − 2·wt(c))) over the codewords.
double code_bias(const LinearCode &c, double theta);

bool is_doubly_even(const LinearCode &c);
bool is_self_dual(const LinearCode &c);

// rank(Gᵀ·G)
std::size_t gram_rank(const BitMatrix &g);

}  // namespace iqp
