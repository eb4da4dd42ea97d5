#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "iqp/xprog.hpp"

namespace iqp {

inline const double kQuantumBias = std::pow(std::cos(std::numbers::pi / 8), 2);
inline constexpr double kClassicalBias = 0.75;
inline const double kDefaultThreshold = (kQuantumBias + kClassicalBias) / 2;

struct Challenge {
    BitMatrix public_matrix;
    uint64_t q = 0;
    double theta = std::numbers::pi / 8;

    XProgram program() const { return {public_matrix, theta}; }
    bool operator==(const Challenge &) const = default;
};

struct Secret {
    BitVector s;
    std::vector<std::size_t> causal_rows;  // sorted, 0-based
    uint64_t seed = 0;
    uint64_t q = 0;

    bool operator==(const Secret &) const = default;
};

struct GeneratedChallenge {
    Challenge challenge;
    Secret secret;
};

// QR generator, plus an all-ones column, plus extra_rows random rows that are
// zero in that column, rows shuffled, then canonically column-reduced.
GeneratedChallenge gen_challenge(uint64_t q, std::size_t extra_rows, uint64_t seed);

class SimulationBoundExceeded : public std::length_error {
   public:
    using std::length_error::length_error;
};

// Honest prover. Throws SimulationBoundExceeded past kMaxSimQubits columns.
std::vector<BitVector> prove(const Challenge &c, std::size_t count, uint64_t seed, unsigned threads = 1);

enum class Verdict { Accept, Reject, Inconclusive };
const char *verdict_name(Verdict v);

// Automatic removes repeats only when 2^cols ≥ N², i.e. when an honest
// prover is unlikely to repeat itself.
enum class DedupPolicy { Always, Never, Automatic };

struct VerifyOptions {
    double threshold = kDefaultThreshold;
    std::size_t min_samples = 500;
    DedupPolicy dedup = DedupPolicy::Automatic;
};

struct VerifyStatistics {
    std::size_t raw = 0;
    std::size_t zeros_removed = 0;
    std::size_t duplicates_removed = 0;
    std::size_t filtered = 0;
    std::size_t orthogonal = 0;
    double fraction = 0;
    bool deduplicated = false;
    // Hoeffding tail bounds: Pr[fraction this low | quantum prover] and
    // Pr[fraction this high | classical attack].
    double p_quantum = 1;
    double p_classical = 1;
};

struct Transcript {
    Challenge challenge;
    std::vector<BitVector> samples;
    Verdict verdict = Verdict::Inconclusive;
    VerifyStatistics statistics;
};

Transcript verify(const std::vector<BitVector> &samples, const Secret &secret, const VerifyOptions &opts = {});
// Same, also checking every sample has cols(public_matrix) bits.
Transcript verify(const Challenge &c, const std::vector<BitVector> &samples, const Secret &secret,
                  const VerifyOptions &opts = {});

// Fraction of samples x with x·s = 0, with no filtering.
double orthogonal_fraction(const std::vector<BitVector> &samples, const BitVector &s);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ℓ_p distance (Σ|P−Q|^p)^{1/p}; p = kInfinity gives the max.
double stat_distance(const Distribution &p, const Distribution &q, double norm);
// max |log P − log Q| over the common support; infinite if supports differ.
double mult_gap(const Distribution &p, const Distribution &q);
Distribution tensor(const Distribution &p, const Distribution &q);

// 1 − 2exp(−k b²/2). Requires |b| ≤ 1 and k odd.
double amplify_bound(double bias, std::size_t k);
// Smallest N with exp(−2N(gap/2)²) ≤ max_error.
std::size_t plan_samples(double gap, double max_error);

}  // namespace iqp
