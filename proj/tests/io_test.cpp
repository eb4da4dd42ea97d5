#include "iqp/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "iqp/rng.hpp"

using namespace iqp;

TEST(challenge_file, exact_format) {
    Challenge c{BitMatrix::from_strings({"101", "011"}), 7};
    EXPECT_EQ(format_challenge(c), "IQP1 q=7 theta=pi/8 rows=2 cols=3\n101\n011\n");
    EXPECT_EQ(parse_challenge(format_challenge(c)), c);
}

TEST(challenge_file, round_trip_fuzz) {
    for (uint64_t seed = 0; seed < 200; seed++) {
        Rng r(seed, "io-dims");
        Challenge c{random_bitmatrix(r.below(40), r.below(90), seed), 7 + 8 * r.below(100)};
        EXPECT_EQ(parse_challenge(format_challenge(c)), c);
    }
    auto g = gen_challenge(23, 23, 4);
    EXPECT_EQ(parse_challenge(format_challenge(g.challenge)), g.challenge);
}

TEST(challenge_file, rejects_malformed) {
    const std::string good = "IQP1 q=7 theta=pi/8 rows=2 cols=3\n101\n011\n";
    EXPECT_NO_THROW(parse_challenge(good));
    for (const std::string &bad : {
             std::string("IQP1 q=7 theta=pi/8 rows=2 cols=3\n101\n011"),      // no final newline
             std::string("IQP1 q=7 theta=pi/8 rows=3 cols=3\n101\n011\n"),    // row count
             std::string("IQP1 q=7 theta=pi/8 rows=2 cols=3\n101\n01\n"),     // short row
             std::string("IQP1 q=7 theta=pi/8 rows=2 cols=3\n101\n0a1\n"),    // bad character
             std::string("IQP1 q=7 theta=pi/8 rows=2 cols=3 \n101\n011\n"),   // trailing space
             std::string("IQP1  q=7 theta=pi/8 rows=2 cols=3\n101\n011\n"),   // double space
             std::string("IQP2 q=7 theta=pi/8 rows=2 cols=3\n101\n011\n"),    // version
             std::string("IQP1 q=7 theta=pi/4 rows=2 cols=3\n101\n011\n"),    // angle
             std::string("IQP1 q=x theta=pi/8 rows=2 cols=3\n101\n011\n"),    // number
             std::string("IQP1 q=7 theta=pi/8 cols=3 rows=2\n101\n011\n"),    // field order
             std::string("IQP1 q=7 theta=pi/8 rows=2 cols=3\n101\n011 \n"),   // trailing space in row
             std::string(""),
         }) {
        EXPECT_THROW(parse_challenge(bad), ParseError) << bad;
    }
}

TEST(secret_file, exact_format) {
    Secret s{BitVector::from_string("01101"), {0, 3, 4}, 0xabc, 7};
    EXPECT_EQ(format_secret(s), "s=01101 q=7 seed=0000000000000abc causal=0,3,4\n");
    EXPECT_EQ(parse_secret(format_secret(s)), s);
    EXPECT_EQ(parse_secret("s=01101 q=7 seed=0xabc causal=0,3,4\n"), s);
    Secret empty{BitVector::from_string("1"), {}, 0, 7};
    EXPECT_EQ(parse_secret(format_secret(empty)), empty);
}

TEST(secret_file, round_trip_fuzz_and_errors) {
    for (uint64_t seed = 0; seed < 100; seed++) {
        auto g = gen_challenge(seed % 2 ? 7 : 23, seed % 5, Rng(seed, "seed").next());
        EXPECT_EQ(parse_secret(format_secret(g.secret)), g.secret);
    }
    EXPECT_THROW(parse_secret("s=011 q=7 seed=0 causal=1,\n"), ParseError);
    EXPECT_THROW(parse_secret("s=011 q=7 seed=zz causal=1\n"), ParseError);
    EXPECT_THROW(parse_secret("s=011 q=7 causal=1\n"), ParseError);
    EXPECT_THROW(parse_secret("s=011 q=7 seed=0 causal=1\nextra\n"), ParseError);
}

TEST(sample_file, round_trip_and_width) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        std::vector<BitVector> xs;
        for (std::size_t i = 0; i < seed; i++) xs.push_back(random_bitvector(13, seed * 100 + i));
        EXPECT_EQ(parse_samples(format_samples(xs), 13), xs);
    }
    EXPECT_TRUE(parse_samples("").empty());
    EXPECT_THROW(parse_samples("0101\n011\n", 4), ParseError);
    EXPECT_THROW(parse_samples("0101\n0121\n"), ParseError);
    EXPECT_THROW(parse_samples("0101"), ParseError);
}

TEST(files, write_then_read) {
    auto path = std::filesystem::temp_directory_path() / "iqp_io_test.txt";
    write_file(path.string(), "hello\n");
    EXPECT_EQ(read_file(path.string()), "hello\n");
    std::filesystem::remove(path);
    EXPECT_THROW(read_file((path / "missing").string()), std::runtime_error);
}
