#pragma once

#include <string>

namespace morselab {

// A letter is a rank code: 0..n-1 are the generators in declaration order,
// n..2n-1 their inverses in the same order. Byte-wise lexicographic order on
// words therefore matches the label order used everywhere (positives first).
using Letter = unsigned char;
using Word = std::string;

inline Letter inverse_letter(Letter l, int n_gens) {
    return static_cast<Letter>(l < n_gens ? l + n_gens : l - n_gens);
}

inline int letter_gen(Letter l, int n_gens) { return l < n_gens ? l : l - n_gens; }
inline bool letter_is_inverse(Letter l, int n_gens) { return l >= n_gens; }

inline bool letters_cancel(Letter a, Letter b, int n_gens) {
    return a == inverse_letter(b, n_gens);
}

// Removes adjacent inverse pairs until none remain. Idempotent and
// length-nonincreasing.
inline Word free_reduce(const Word& w, int n_gens) {
    Word out;
    out.reserve(w.size());
    for (char c : w) {
        if (!out.empty() && letters_cancel(static_cast<Letter>(out.back()), static_cast<Letter>(c), n_gens))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

inline Word invert_word(const Word& w, int n_gens) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(static_cast<char>(inverse_letter(static_cast<Letter>(*it), n_gens)));
    return out;
}

inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline Word cyclic_rotate(const Word& w, size_t k) {
    if (w.empty()) return w;
    k %= w.size();
    return w.substr(k) + w.substr(0, k);
}

// Cyclically reduces: free reduction plus cancellation across the wrap-around.
inline Word cyclic_reduce(Word w, int n_gens) {
    w = free_reduce(w, n_gens);
    while (w.size() >= 2 &&
           letters_cancel(static_cast<Letter>(w.front()), static_cast<Letter>(w.back()), n_gens)) {
        w = free_reduce(w.substr(1, w.size() - 2), n_gens);
    }
    return w;
}

} // namespace morselab
