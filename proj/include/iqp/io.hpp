#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqp/protocol.hpp"

namespace iqp {

class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// "IQP1 q=<q> theta=pi/8 rows=<k> cols=<n>" then k rows of '0'/'1'.
std::string format_challenge(const Challenge &c);
Challenge parse_challenge(const std::string &text);

// "s=<bits> q=<q> seed=<16 hex digits> causal=<i,j,...>"
std::string format_secret(const Secret &s);
Secret parse_secret(const std::string &text);

// One bit string per line.
std::string format_samples(const std::vector<BitVector> &samples);
// Every line must have `width` characters when width is given.
std::vector<BitVector> parse_samples(const std::string &text, std::optional<std::size_t> width = std::nullopt);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

}  // namespace iqp
