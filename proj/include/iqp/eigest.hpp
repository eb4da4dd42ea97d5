#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "iqp/f2la.hpp"
#include "iqp/rng.hpp"

namespace iqp {

// Multiplier in k = ceil(c₀·ln((t+1)(d+1)/ε)).
inline constexpr double kScheduleConstant = 17.0;
inline constexpr double kDefaultEta = 0.32;

// Controls 2^α·3^β for α ∈ [0, t], β ∈ [0, d], each repeated k times.
struct ControlSchedule {
    std::size_t t = 0;
    std::size_t d = 0;
    std::size_t k = 0;
    std::vector<uint64_t> controls;  // α-major, then β, then repeat

    uint64_t control(std::size_t alpha, std::size_t beta) const;
    std::size_t size() const { return controls.size(); }
};

ControlSchedule make_schedule(std::size_t n, double epsilon, double c0 = kScheduleConstant);
// Same layout with explicit parameters.
ControlSchedule fixed_schedule(std::size_t t, std::size_t d, std::size_t k);

// mu(α, β) is the mean of the k bits for control 2^α·3^β.
struct PhaseSamples {
    std::size_t t = 0;
    std::size_t d = 0;
    std::size_t k = 0;
    Eigen::MatrixXd mu;
};

// Bits with Pr[1] = sin²(π c κ / q), computed exactly from c·κ mod q.
PhaseSamples phase_samples(const ControlSchedule &s, uint64_t kappa, uint64_t q, Rng &rng);
// μ = sin²(π c a / b) exactly, no sampling noise.
PhaseSamples exact_phase_samples(std::size_t t, std::size_t d, uint64_t a, uint64_t b);

// A permutation given by an explicit table, or by an invertible linear map
// acting on the nonzero vectors of F₂ⁿ.
class Permutation {
   public:
    static Permutation table(std::vector<uint64_t> image);
    static Permutation linear(BitMatrix m);

    uint64_t operator()(uint64_t x) const;
    uint64_t random_point(Rng &rng) const;
    uint64_t orbit_length(uint64_t x) const;

   private:
    std::vector<uint64_t> table_;
    BitMatrix linear_;
    bool is_linear_ = false;
};

struct HiddenPhase {
    uint64_t x = 0;
    uint64_t q = 0;
    uint64_t kappa = 0;
};

struct SampledPhases {
    PhaseSamples samples;
    std::optional<HiddenPhase> hidden;  // set only when requested
};

// Random point x, its orbit length q, random κ ∈ [0, q), then one biased
// bit per schedule entry.
SampledPhases sample_bits(const Permutation &f, const ControlSchedule &s, uint64_t seed, bool expose_hidden = false);

// The fixed-threshold decoder. Returns t+1 bits φ₁…φ_{t+1} of φ ∈ [0, ½];
// bit i of the result is φ_{i+1}.
BitVector decode(const PhaseSamples &samples, double eta = kDefaultEta);
// The decoded bits read as an integer E with φ ≈ E / 2^{t+1}.
uint64_t decoded_numerator(const BitVector &bits);

struct Fraction {
    uint64_t num = 0;
    uint64_t den = 1;
    bool operator==(const Fraction &) const = default;
};

// Closest fraction to value / 2^bits with denominator ≤ max_den.
Fraction cf_recover(uint64_t value, std::size_t bits, uint64_t max_den);

// Union bounds on the threshold errors and on the zoom errors.
std::pair<double, double> error_budget(const ControlSchedule &s, double eta);

// Arithmetic in F₂ⁿ with a primitive modulus found by search.
class BinaryField {
   public:
    explicit BinaryField(std::size_t n);

    std::size_t bits() const { return n_; }
    uint64_t modulus() const { return modulus_; }
    uint64_t order() const { return (uint64_t{1} << n_) - 1; }
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t pow(uint64_t a, uint64_t e) const;
    bool is_generator(uint64_t a) const;
    // Multiplication by a as an n×n matrix over F₂.
    BitMatrix mul_matrix(uint64_t a) const;
    // Exhaustive discrete log; nullopt if h is not a power of g.
    std::optional<uint64_t> brute_force_log(uint64_t g, uint64_t h) const;

   private:
    std::size_t n_;
    uint64_t modulus_;
    std::vector<uint64_t> order_factors_;
};

struct DlogResult {
    bool success = false;
    uint64_t s = 0;
    std::size_t attempts = 0;
    std::size_t distinct_controls = 0;
    std::size_t synthesis_ops = 0;      // total over all controlled multipliers
    std::size_t max_synthesis_ops = 0;  // largest single multiplier
};

// Discrete log of h to base g via two eigenphase estimates sharing κ.
DlogResult dlog_demo(std::size_t n, uint64_t g, uint64_t h, uint64_t seed, std::size_t max_attempts = 5,
                     double epsilon = 0.05);

struct PartitionIdentity {
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
};

// E_κ ∏ cos(2π c_j κ / q) against Pr_s[s·c ≡ s̄·c mod q].
PartitionIdentity partition_identity(const std::vector<uint64_t> &c, uint64_t q);

}  // namespace iqp
