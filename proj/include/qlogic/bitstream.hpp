// Turning multi-symbol outcome streams into bits, and judging the bits.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qlogic {

struct SymbolStream {
    int alphabet = 0;          // symbols range over 0..alphabet-1
    std::vector<int> symbols;

    SymbolStream(int alphabet_size, std::vector<int> syms)
        : alphabet(alphabet_size), symbols(std::move(syms)) {
        if (alphabet <= 0)
            throw std::invalid_argument("SymbolStream: empty alphabet");
        for (int s : symbols)
            if (s < 0 || s >= alphabet)
                throw std::invalid_argument("SymbolStream: symbol out of range");
    }
};

// A rule for projecting symbols to bits. Two shapes:
//   identify: every symbol maps to 0 or 1 (total relabeling);
//   keep:     one or two symbols survive, all others are discarded; with
//             two survivors the smaller maps to 0, with one the output is
//             constant 0 (degenerate but well defined).
class GroupingRule {
public:
    static GroupingRule identify(std::vector<int> symbol_to_bit) {
        for (int b : symbol_to_bit)
            if (b != 0 && b != 1)
                throw std::invalid_argument("GroupingRule: bits must be 0/1");
        GroupingRule r;
        r.map_ = std::move(symbol_to_bit);
        return r;
    }

    static GroupingRule keep(std::vector<int> keep_symbols) {
        std::sort(keep_symbols.begin(), keep_symbols.end());
        keep_symbols.erase(
            std::unique(keep_symbols.begin(), keep_symbols.end()),
            keep_symbols.end());
        if (keep_symbols.empty() || keep_symbols.size() > 2)
            throw std::invalid_argument(
                "GroupingRule: keep set needs one or two symbols");
        GroupingRule r;
        r.keep_ = std::move(keep_symbols);
        return r;
    }

    // nullopt-like: -1 means "discard this symbol".
    int bit_for(int symbol, int alphabet) const {
        if (!map_.empty()) {
            if (static_cast<int>(map_.size()) != alphabet)
                throw std::invalid_argument(
                    "GroupingRule: identification map does not cover alphabet");
            return map_.at(symbol);
        }
        for (std::size_t i = 0; i < keep_.size(); ++i)
            if (keep_[i] == symbol) return static_cast<int>(i);
        return -1;
    }

private:
    std::vector<int> map_;  // identification form when nonempty
    std::vector<int> keep_; // keep form otherwise
};

// Output length equals input length for identification rules; keep rules
// drop discarded symbols and preserve the order of the rest.
inline std::vector<std::uint8_t> map_outcomes_to_bits(const SymbolStream& in,
                                                      const GroupingRule& rule) {
    std::vector<std::uint8_t> out;
    out.reserve(in.symbols.size());
    for (int s : in.symbols) {
        const int b = rule.bit_for(s, in.alphabet);
        if (b >= 0) out.push_back(static_cast<std::uint8_t>(b));
    }
    return out;
}

// Classic de-biasing of an exchangeable bit source: consume disjoint pairs;
// 01 emits 0, 10 emits 1, 00 and 11 emit nothing. A trailing odd bit is
// dropped. Output length is at most floor(n/2).
inline std::vector<std::uint8_t>
von_neumann_extract(const std::vector<std::uint8_t>& bits) {
    std::vector<std::uint8_t> out;
    out.reserve(bits.size() / 2);
    for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
        const std::uint8_t a = bits[i] ? 1 : 0;
        const std::uint8_t b = bits[i + 1] ? 1 : 0;
        if (a != b) out.push_back(a ? 1 : 0);
    }
    return out;
}

struct BitStats {
    std::size_t count = 0;
    double frequency_of_ones = 0.0; // 0 when the stream is empty
    std::size_t runs = 0;           // maximal blocks of equal bits
    std::size_t longest_run = 0;
};

inline BitStats bit_stats(const std::vector<std::uint8_t>& bits) {
    BitStats st;
    st.count = bits.size();
    if (bits.empty()) return st;
    std::size_t ones = 0, run = 0;
    std::uint8_t prev = 2;
    for (std::uint8_t raw : bits) {
        const std::uint8_t b = raw ? 1 : 0;
        ones += b;
        if (b == prev) {
            ++run;
        } else {
            run = 1;
            ++st.runs;
            prev = b;
        }
        st.longest_run = std::max(st.longest_run, run);
    }
    st.frequency_of_ones = static_cast<double>(ones) /
                           static_cast<double>(bits.size());
    return st;
}

} // namespace qlogic
