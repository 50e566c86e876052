// Word enumeration over a finite alphabet, ordered by length then
// lexicographically. This ordering is the deterministic output order of the
// CLI and the iteration order of every exhaustive check.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace afalab {

// All words of length exactly `len` over the (sorted) alphabet.
inline void append_words_of_length(const std::vector<char>& sorted_alphabet,
                                   std::size_t len, std::vector<std::string>& out) {
    std::string word(len, len ? sorted_alphabet.front() : '\0');
    std::vector<std::size_t> idx(len, 0);
    while (true) {
        for (std::size_t i = 0; i < len; ++i) word[i] = sorted_alphabet[idx[i]];
        out.push_back(len ? word : std::string());
        std::size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < sorted_alphabet.size()) break;
            idx[pos] = 0;
            if (pos == 0) return;
        }
        if (len == 0) return;
    }
}

inline std::vector<std::string> words_up_to(const std::vector<char>& alphabet,
                                            std::size_t max_len) {
    std::vector<char> sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> out;
    for (std::size_t len = 0; len <= max_len; ++len)
        append_words_of_length(sorted, len, out);
    return out;
}

}  // namespace afalab
