#include "iqp/codes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "iqp/rng.hpp"

using namespace iqp;

namespace {

std::vector<BitVector> all_codewords(const LinearCode &c) {
    std::vector<BitVector> out;
    std::size_t cols = c.generator.cols();
    for (uint64_t mask = 0; mask < (uint64_t{1} << cols); mask++) {
        BitVector w(c.length);
        for (std::size_t j = 0; j < cols; j++) {
            if ((mask >> j) & 1) w ^= c.generator.col(j);
        }
        out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const double kCos2PiOver8 = std::pow(std::cos(std::numbers::pi / 8), 2);

}  // namespace

TEST(qr_code, q7_support_and_rank) {
    LinearCode c = qr_code(7);
    EXPECT_EQ(qr_indicator(7).to_string(), "0110100");
    EXPECT_EQ(c.length, 7u);
    EXPECT_EQ(c.rank, 4u);
    EXPECT_EQ(qr_code(23).rank, 12u);
    EXPECT_THROW(qr_code(5), std::invalid_argument);
    EXPECT_THROW(qr_code(15), std::invalid_argument);
}

TEST(qr_code, rank_is_half_of_q_plus_one) {
    for (uint64_t q : {7, 23, 31, 47, 71, 79, 103, 127, 151}) {
        EXPECT_EQ(qr_code(q).rank, (q + 1) / 2) << q;
    }
}

TEST(qr_code, contains_all_rotations_of_indicator) {
    LinearCode c = qr_code(23);
    BitVector ind = qr_indicator(23);
    for (std::size_t shift = 0; shift < 23; shift++) {
        BitVector rot(23);
        for (std::size_t j = 0; j < 23; j++) rot.set((j + shift) % 23, ind.get(j));
        EXPECT_TRUE(solve(c.generator, rot).has_value());
    }
}

TEST(weight_distribution, small_codes) {
    LinearCode zero = make_code(BitMatrix(4, 0));
    auto wz = weight_distribution(zero);
    EXPECT_EQ(wz[0], 1u);
    for (std::size_t w = 1; w < wz.size(); w++) EXPECT_EQ(wz[w], 0u);

    auto rep = weight_distribution(repetition_code(3));
    EXPECT_EQ(rep, (std::vector<uint64_t>{1, 0, 0, 1}));

    auto q7 = weight_distribution(qr_code(7));
    for (std::size_t w = 0; w < q7.size(); w++) {
        if (q7[w]) {
            EXPECT_TRUE(w % 4 == 0 || w % 4 == 3) << w;
        }
    }
}

TEST(weight_distribution, matches_enumeration_and_sums) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        Rng r(seed, "code-dims");
        LinearCode c = make_code(random_bitmatrix(3 + r.below(15), 1 + r.below(10), seed));
        auto wd = weight_distribution(c);
        std::vector<uint64_t> brute(c.length + 1, 0);
        for (const auto &w : all_codewords(c)) brute[w.popcount()]++;
        EXPECT_EQ(wd, brute);
        uint64_t total = 0;
        for (auto x : wd) total += x;
        EXPECT_EQ(total, uint64_t{1} << c.rank);
    }
}

TEST(wep_eval, examples) {
    LinearCode q7 = qr_code(7);
    EXPECT_DOUBLE_EQ(wep_eval(q7, 1, 1), 16.0);
    EXPECT_DOUBLE_EQ(wep_eval(q7, 0, 1), 1.0);
    EXPECT_DOUBLE_EQ(wep_eval(repetition_code(3), 2, 1), 1.0 + 8.0);
}

TEST(code_bias, examples) {
    EXPECT_DOUBLE_EQ(code_bias(qr_code(7), 0), 1.0);
    EXPECT_NEAR(code_bias(qr_code(7), std::numbers::pi / 8), 0.8535533905932737, 1e-12);
}

TEST(code_bias, qr_codes_hit_cos_squared) {
    for (uint64_t q : {7, 23, 31, 47}) {
        EXPECT_NEAR(code_bias(qr_code(q), std::numbers::pi / 8), kCos2PiOver8, 1e-12) << q;
    }
}

TEST(code_bias, matches_direct_enumeration_and_is_even_in_theta) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        Rng r(seed, "bias-dims");
        LinearCode c = make_code(random_bitmatrix(2 + r.below(16), 1 + r.below(10), seed));
        double theta = r.uniform() * 3;
        double direct = 0;
        auto words = all_codewords(c);
        for (const auto &w : words) {
            double v = std::cos(theta * (double(c.length) - 2.0 * double(w.popcount())));
            direct += v * v;
        }
        direct /= double(words.size());
        EXPECT_NEAR(code_bias(c, theta), direct, 1e-12);
        EXPECT_NEAR(code_bias(c, theta), code_bias(c, -theta), 1e-14);
        double b = code_bias(c, theta);
        EXPECT_GE(b, 0.0);
        EXPECT_LE(b, 1.0 + 1e-12);
    }
}

TEST(predicates, extended_hamming_and_qr) {
    LinearCode h = extended_hamming_code();
    EXPECT_EQ(h.rank, 4u);
    EXPECT_TRUE(is_doubly_even(h));
    EXPECT_TRUE(is_self_dual(h));
    EXPECT_FALSE(is_doubly_even(qr_code(7)));
    EXPECT_FALSE(is_self_dual(make_code(BitMatrix(2, 0))));
    EXPECT_FALSE(is_self_dual(qr_code(7)));
}

TEST(predicates, doubly_even_matches_enumeration) {
    for (uint64_t seed = 0; seed < 300; seed++) {
        Rng r(seed, "de-dims");
        // Small random codes; mostly not doubly even, so mix in sparse ones.
        BitMatrix g = random_bitmatrix(4 + r.below(6), 1 + r.below(3), seed);
        LinearCode c = make_code(g);
        auto wd = weight_distribution(c);
        bool all4 = true;
        for (std::size_t w = 0; w < wd.size(); w++) {
            if (wd[w] && w % 4) all4 = false;
        }
        EXPECT_EQ(is_doubly_even(c), all4) << "seed " << seed;
        if (all4) {
            EXPECT_TRUE(gf2_product(c.generator.transpose(), c.generator).is_zero());
        }
    }
}

TEST(gram_rank, examples) {
    EXPECT_EQ(gram_rank(BitMatrix::identity(5)), 5u);
    EXPECT_EQ(gram_rank(extended_hamming_code().generator), 0u);
    EXPECT_EQ(gram_rank(qr_code(7).generator), 1u);
    for (uint64_t q : {23, 31, 47}) EXPECT_EQ(gram_rank(qr_code(q).generator), 1u) << q;
}

TEST(gram_rank, predicts_pair_orthogonality) {
    for (uint64_t seed = 0; seed < 60; seed++) {
        Rng r(seed, "gram-dims");
        LinearCode c = make_code(random_bitmatrix(2 + r.below(10), 1 + r.below(7), seed));
        // Every codeword appears 2^(cols-rank) times among the images, so
        // pairs of images are uniform pairs of codewords.
        std::size_t cols = c.generator.cols();
        std::vector<BitVector> images;
        for (uint64_t m = 0; m < (uint64_t{1} << cols); m++) {
            BitVector w(c.length);
            for (std::size_t j = 0; j < cols; j++) {
                if ((m >> j) & 1) w ^= c.generator.col(j);
            }
            images.push_back(w);
        }
        uint64_t hits = 0;
        for (const auto &a : images) {
            for (const auto &b : images) hits += !a.dot(b);
        }
        double frac = double(hits) / double(images.size() * images.size());
        double expect = 0.5 * (1 + std::ldexp(1.0, -int(gram_rank(c.generator))));
        EXPECT_NEAR(frac, expect, 1e-12) << "seed " << seed;
    }
}

TEST(legendre, euler_criterion) {
    EXPECT_EQ(legendre(2, 7), 1);
    EXPECT_EQ(legendre(3, 7), -1);
    EXPECT_EQ(legendre(0, 7), 0);
    EXPECT_TRUE(is_prime(487));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
}
