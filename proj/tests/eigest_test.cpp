#include "iqp/eigest.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "iqp/xprog.hpp"

using namespace iqp;

namespace {

// κ/q in lowest terms, and the same up to the φ ↔ 1−φ symmetry.
bool same_phase(const Fraction &est, uint64_t kappa, uint64_t q) {
    uint64_t g = std::gcd(kappa, q);
    Fraction truth{kappa / g, q / g};
    return est == truth || (est.den == truth.den && (est.num + truth.num) % truth.den == 0);
}

Permutation random_table(std::size_t size, uint64_t seed) {
    std::vector<uint64_t> t(size);
    std::iota(t.begin(), t.end(), 0);
    Rng r(seed, "table");
    for (std::size_t i = size; i > 1; i--) std::swap(t[i - 1], t[r.below(i)]);
    return Permutation::table(t);
}

// Nearest fraction by scanning every denominator.
Fraction brute_nearest(uint64_t value, std::size_t bits, uint64_t max_den) {
    const double x = std::ldexp(double(value), -int(bits));
    Fraction best{0, 1};
    double best_err = x;
    for (uint64_t den = 1; den <= max_den; den++) {
        uint64_t num = uint64_t(std::llround(x * double(den)));
        double err = std::abs(x - double(num) / double(den));
        if (err < best_err - 1e-15) {
            best_err = err;
            uint64_t g = std::gcd(num, den);
            best = {num / g, den / g};
        }
    }
    return best;
}

}  // namespace

TEST(schedule, examples) {
    ControlSchedule a = make_schedule(1, 0.5);
    EXPECT_EQ(a.t, 2u);
    EXPECT_EQ(a.d, 1u);
    EXPECT_GT(a.k, 0u);
    ControlSchedule b = make_schedule(10, 0.05);
    EXPECT_EQ(b.t, 20u);
    EXPECT_EQ(b.d, 7u);
    EXPECT_EQ(b.size(), b.k * (b.t + 1) * (b.d + 1));
    EXPECT_EQ(b.control(3, 2), 72u);
    ControlSchedule c = fixed_schedule(2, 1, 3);
    EXPECT_EQ(c.controls, (std::vector<uint64_t>{1, 1, 1, 3, 3, 3, 2, 2, 2, 6, 6, 6, 4, 4, 4, 12, 12, 12}));
    EXPECT_THROW(make_schedule(0, 0.1), std::invalid_argument);
}

TEST(sample_bits, identity_and_two_cycle) {
    ControlSchedule s = make_schedule(4, 0.1);
    SampledPhases id = sample_bits(Permutation::table({0, 1, 2, 3}), s, 1, true);
    ASSERT_TRUE(id.hidden);
    EXPECT_EQ(id.hidden->q, 1u);
    EXPECT_EQ(id.hidden->kappa, 0u);
    EXPECT_EQ(id.samples.mu.maxCoeff(), 0.0);

    // Each 2-cycle: κ = 1 makes bits deterministic, odd c gives 1, even c gives 0.
    for (uint64_t seed = 0; seed < 20; seed++) {
        SampledPhases two = sample_bits(Permutation::table({1, 0, 3, 2}), s, seed, true);
        EXPECT_EQ(two.hidden->q, 2u);
        for (std::size_t a = 0; a <= s.t; a++) {
            for (std::size_t b = 0; b <= s.d; b++) {
                double expect = two.hidden->kappa == 1 && s.control(a, b) % 2 ? 1.0 : 0.0;
                EXPECT_EQ(two.samples.mu(a, b), expect);
            }
        }
    }
    EXPECT_FALSE(sample_bits(Permutation::table({1, 0}), s, 1).hidden.has_value());
}

TEST(sample_bits, field_multiplication_orbit) {
    BinaryField f(4);
    uint64_t g = 2;
    ASSERT_TRUE(f.is_generator(g));
    Permutation p = Permutation::linear(f.mul_matrix(g));
    ControlSchedule s = make_schedule(4, 0.1);
    for (uint64_t seed = 0; seed < 20; seed++) EXPECT_EQ(sample_bits(p, s, seed, true).hidden->q, 15u);
}

TEST(sample_bits, bit_means_converge) {
    ControlSchedule s = fixed_schedule(3, 1, 20000);
    Rng rng(3, "means");
    PhaseSamples ps = phase_samples(s, 5, 13, rng);
    for (std::size_t a = 0; a <= s.t; a++) {
        for (std::size_t b = 0; b <= s.d; b++) {
            double p = std::pow(std::sin(std::numbers::pi * double(s.control(a, b)) * 5 / 13), 2);
            EXPECT_NEAR(ps.mu(a, b), p, 4 * std::sqrt(p * (1 - p) / 20000) + 1e-12);
        }
    }
}

TEST(decode, examples) {
    PhaseSamples third = exact_phase_samples(8, 4, 1, 3);
    BitVector bits = decode(third);
    // 1/3 = 0.010101…
    EXPECT_EQ(bits.to_string(), "010101010");
    EXPECT_TRUE(decode(exact_phase_samples(8, 4, 0, 1)).none());
}

TEST(decode, tripling_resolves_quarter_plus_epsilon) {
    // φ slightly above ¼: μ at the coarse scale sits at ½, inside the dead band.
    const uint64_t b = 1 << 12;
    const uint64_t a = b / 4 + 1;
    uint64_t floor_e = (a << 9) / b;
    EXPECT_NE(decoded_numerator(decode(exact_phase_samples(8, 0, a, b))), floor_e);
    EXPECT_EQ(decoded_numerator(decode(exact_phase_samples(8, 3, a, b))), floor_e);
}

TEST(decode, noiseless_rationals) {
    const std::size_t t = 20, d = 7;
    Rng r(1, "rationals");
    for (int i = 0; i < 1000; i++) {
        uint64_t b = 1 + r.below(1024);
        uint64_t a = r.below(b / 2 + 1);
        uint64_t e = decoded_numerator(decode(exact_phase_samples(t, d, a, b)));
        uint64_t floor_e = (a << (t + 1)) / b;
        bool dyadic = (a << (t + 1)) % b == 0;
        // Dyadic φ also has the expansion ending in ones.
        EXPECT_TRUE(e == floor_e || (dyadic && e + 1 == floor_e)) << a << "/" << b;
        EXPECT_TRUE(same_phase(cf_recover(e, t + 1, 1024), a, b)) << a << "/" << b;
    }
}

TEST(cf_recover, examples) {
    const std::size_t bits = 20;
    EXPECT_EQ(cf_recover((uint64_t{1} << bits) / 3, bits, 1024), (Fraction{1, 3}));
    EXPECT_EQ(cf_recover(0, bits, 1024), (Fraction{0, 1}));
    EXPECT_EQ(cf_recover((uint64_t{7} << bits) / 15, bits, 1024), (Fraction{7, 15}));
    EXPECT_EQ(cf_recover(1 << 19, bits, 1024), (Fraction{1, 2}));
}

TEST(cf_recover, matches_denominator_scan) {
    Rng r(2, "cf");
    for (int i = 0; i < 2000; i++) {
        std::size_t bits = 8 + r.below(12);
        uint64_t value = r.below(uint64_t{1} << bits);
        uint64_t max_den = 1 + r.below(300);
        Fraction f = cf_recover(value, bits, max_den);
        Fraction g = brute_nearest(value, bits, max_den);
        double x = std::ldexp(double(value), -int(bits));
        EXPECT_NEAR(std::abs(x - double(f.num) / double(f.den)), std::abs(x - double(g.num) / double(g.den)), 1e-15)
            << value << "/2^" << bits << " max " << max_den;
        EXPECT_LE(f.den, max_den);
    }
}

TEST(error_budget, examples) {
    ControlSchedule s = fixed_schedule(20, 7, 50);
    auto [threshold, zoom] = error_budget(s, 0.32);
    EXPECT_NEAR(threshold, 168 * std::exp(-100 * 0.18 * 0.18), 1e-12);
    double gap = 0.32 - std::pow(std::sin(std::numbers::pi / 8), 2);
    EXPECT_NEAR(zoom, 168 * std::exp(-100 * gap * gap), 1e-12);
    EXPECT_DOUBLE_EQ(error_budget(s, 0.5).first, 168.0);
    auto [t2, z2] = error_budget(fixed_schedule(20, 7, 100000), 0.32);
    EXPECT_LT(t2, 1e-100);
    EXPECT_LT(z2, 1e-100);
}

TEST(error_budget, default_schedule_meets_epsilon) {
    for (std::size_t n : {1, 4, 8, 10, 16}) {
        for (double eps : {0.5, 0.05, 0.001}) {
            auto [a, b] = error_budget(make_schedule(n, eps), kDefaultEta);
            EXPECT_LE(a, eps) << n << " " << eps;
            EXPECT_LE(b, eps) << n << " " << eps;
        }
    }
}

TEST(eigest, stochastic_recovery_rate) {
    ControlSchedule s = make_schedule(8, 0.05);
    std::size_t ok = 0;
    for (uint64_t seed = 0; seed < 200; seed++) {
        Permutation f = random_table(256, seed);
        SampledPhases sp = sample_bits(f, s, seed, true);
        Fraction est = cf_recover(decoded_numerator(decode(sp.samples)), s.t + 1, 256);
        ok += same_phase(est, sp.hidden->kappa, sp.hidden->q);
    }
    EXPECT_GE(ok, 190u);
}

TEST(binary_field, arithmetic) {
    BinaryField f(4);
    EXPECT_EQ(f.order(), 15u);
    for (uint64_t a = 1; a < 16; a++) {
        EXPECT_EQ(f.pow(a, 15), 1u);
        for (uint64_t b = 1; b < 16; b++) {
            EXPECT_EQ(f.mul_matrix(a).mul(index_to_bits(b, 4)), index_to_bits(f.mul(a, b), 4));
        }
    }
    std::size_t generators = 0;
    for (uint64_t a = 1; a < 16; a++) generators += f.is_generator(a);
    EXPECT_EQ(generators, 8u);  // φ(15)
    EXPECT_EQ(BinaryField(8).order(), 255u);
}

TEST(dlog, examples_and_brute_force) {
    BinaryField f(4);
    uint64_t g = 2;
    DlogResult one = dlog_demo(4, g, g, 1);
    EXPECT_TRUE(one.success);
    EXPECT_EQ(one.s, 1u);
    EXPECT_GT(one.synthesis_ops, 0u);
    std::size_t ok = 0;
    for (uint64_t seed = 0; seed < 50; seed++) {
        uint64_t s = 1 + Rng(seed, "dlog-s").below(14);
        uint64_t h = f.pow(g, s);
        DlogResult r = dlog_demo(4, g, h, seed);
        if (r.success) {
            EXPECT_EQ(r.s, *f.brute_force_log(g, h));
            ok++;
        }
    }
    EXPECT_GE(ok, 45u);
    EXPECT_THROW(dlog_demo(4, 1, 2, 1), std::invalid_argument);
}

TEST(dlog, n8_instances) {
    BinaryField f(8);
    uint64_t g = 2;
    while (!f.is_generator(g)) g++;
    std::size_t ok = 0;
    for (uint64_t seed = 0; seed < 20; seed++) {
        uint64_t s = 1 + Rng(seed, "dlog8-s").below(254);
        DlogResult r = dlog_demo(8, g, f.pow(g, s), seed);
        ok += r.success && r.s == s;
    }
    EXPECT_GE(ok, 18u);
}

TEST(partition_identity, examples) {
    PartitionIdentity a = partition_identity({1, 1}, 2);
    EXPECT_DOUBLE_EQ(a.lhs, 1.0);
    EXPECT_DOUBLE_EQ(a.rhs, 1.0);
    PartitionIdentity e = partition_identity({}, 1);
    EXPECT_DOUBLE_EQ(e.lhs, 1.0);
    EXPECT_DOUBLE_EQ(e.rhs, 1.0);
}

TEST(partition_identity, random_instances) {
    Rng r(5, "partition");
    for (int i = 0; i < 100; i++) {
        std::vector<uint64_t> c(1 + r.below(12));
        for (auto &x : c) x = 1 + r.below(50);
        uint64_t q = std::accumulate(c.begin(), c.end(), uint64_t{0});
        EXPECT_LT(partition_identity(c, q).residual, 1e-9);
    }
}
