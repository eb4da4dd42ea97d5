#include "iqp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace iqp {

namespace {

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            throw ParseError("missing final newline");
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

uint64_t parse_uint(std::string_view s, int base, const char *what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(std::string("bad ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

// Value of a "key=value" token.
std::string_view field(std::string_view token, std::string_view key) {
    if (token.size() < key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=') {
        throw ParseError("expected field '" + std::string(key) + "=', got '" + std::string(token) + "'");
    }
    return token.substr(key.size() + 1);
}

std::vector<std::string> tokens(const std::string &line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

// Tokens separated by single spaces.
std::string join(const std::vector<std::string> &parts) {
    std::string s;
    for (const auto &p : parts) {
        if (!s.empty()) s += ' ';
        s += p;
    }
    return s;
}

BitVector parse_bits(std::string_view s) {
    try {
        return BitVector::from_string(s);
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what());
    }
}

}  // namespace

std::string format_challenge(const Challenge &c) {
    if (std::abs(c.theta - std::numbers::pi / 8) > 1e-15) {
        throw std::invalid_argument("challenge files only carry theta = pi/8");
    }
    std::ostringstream out;
    out << "IQP1 q=" << c.q << " theta=pi/8 rows=" << c.public_matrix.rows() << " cols=" << c.public_matrix.cols()
        << "\n";
    for (const auto &row : c.public_matrix.to_strings()) {
        out << row << "\n";
    }
    return out.str();
}

Challenge parse_challenge(const std::string &text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty challenge file");
    auto head = tokens(lines[0]);
    if (head.size() != 5 || head[0] != "IQP1" || head[2] != "theta=pi/8" || lines[0] != join(head)) {
        throw ParseError("bad challenge header: '" + lines[0] + "'");
    }
    Challenge c;
    c.q = parse_uint(field(head[1], "q"), 10, "q");
    std::size_t rows = parse_uint(field(head[3], "rows"), 10, "rows");
    std::size_t cols = parse_uint(field(head[4], "cols"), 10, "cols");
    if (lines.size() != rows + 1) {
        throw ParseError("header says " + std::to_string(rows) + " rows, file has " + std::to_string(lines.size() - 1));
    }
    c.public_matrix = BitMatrix(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        if (lines[r + 1].size() != cols) {
            throw ParseError("row " + std::to_string(r) + " has " + std::to_string(lines[r + 1].size()) +
                             " characters, expected " + std::to_string(cols));
        }
        c.public_matrix.set_row(r, parse_bits(lines[r + 1]));
    }
    return c;
}

std::string format_secret(const Secret &s) {
    std::ostringstream out;
    out << "s=" << s.s.to_string() << " q=" << s.q << " seed=" << std::hex << std::setw(16) << std::setfill('0')
        << s.seed << std::dec << " causal=";
    for (std::size_t i = 0; i < s.causal_rows.size(); i++) {
        if (i) out << ",";
        out << s.causal_rows[i];
    }
    out << "\n";
    return out.str();
}

Secret parse_secret(const std::string &text) {
    auto lines = split_lines(text);
    if (lines.size() != 1) throw ParseError("secret file must hold exactly one line");
    auto t = tokens(lines[0]);
    if (t.size() != 4) throw ParseError("secret line needs s=, q=, seed= and causal= fields");
    Secret s;
    s.s = parse_bits(field(t[0], "s"));
    s.q = parse_uint(field(t[1], "q"), 10, "q");
    std::string_view seed = field(t[2], "seed");
    if (seed.substr(0, 2) == "0x" || seed.substr(0, 2) == "0X") seed.remove_prefix(2);
    s.seed = parse_uint(seed, 16, "seed");
    std::string_view causal = field(t[3], "causal");
    while (!causal.empty()) {
        std::size_t comma = causal.find(',');
        s.causal_rows.push_back(parse_uint(causal.substr(0, comma), 10, "causal row"));
        if (comma == std::string_view::npos) break;
        causal.remove_prefix(comma + 1);
        if (causal.empty()) throw ParseError("trailing comma in causal list");
    }
    return s;
}

std::string format_samples(const std::vector<BitVector> &samples) {
    std::string out;
    for (const auto &x : samples) {
        out += x.to_string();
        out += '\n';
    }
    return out;
}

std::vector<BitVector> parse_samples(const std::string &text, std::optional<std::size_t> width) {
    std::vector<BitVector> out;
    for (const auto &line : split_lines(text)) {
        if (width && line.size() != *width) {
            throw ParseError("sample '" + line + "' has " + std::to_string(line.size()) + " bits, expected " +
                             std::to_string(*width));
        }
        out.push_back(parse_bits(line));
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace iqp
