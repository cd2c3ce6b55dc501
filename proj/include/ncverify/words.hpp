#pragma once

/**
 * @file words.hpp
 * @brief Reduced words over n free generators.
 *
 * A letter is a nonzero signed integer: +j is the j-th generator, -j its inverse,
 * 1 <= j <= rank. A Word is always fully reduced (no adjacent letter/inverse pair).
 * The canonical order is length first, then lexicographic with letters ranked
 * 1 < -1 < 2 < -2 < ... so that enumeration and polynomial storage are stable.
 */

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncverify::words {

inline constexpr std::uint64_t kDefaultBallCap = 200000;

class Word {
  public:
    Word() : rank_(1) {}

    static Word identity(int rank) {
        check_rank(rank);
        Word w;
        w.rank_ = rank;
        return w;
    }

    /// Builds the reduced form of the given letter string (stack reduction).
    static Word reduced(int rank, const std::vector<int>& letters) {
        check_rank(rank);
        Word w;
        w.rank_ = rank;
        w.letters_.reserve(letters.size());
        for (int l : letters) w.push_reduce(l);
        return w;
    }

    int rank() const { return rank_; }
    const std::vector<int>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    bool operator==(const Word& o) const { return rank_ == o.rank_ && letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }

    friend Word multiply(const Word& a, const Word& b);
    friend Word inverse(const Word& a);

  private:
    static void check_rank(int rank) {
        if (rank < 1) throw std::invalid_argument("Word: rank must be >= 1");
    }
    void check_letter(int l) const {
        if (l == 0 || l > rank_ || l < -rank_) throw std::invalid_argument("Word: letter out of range");
    }
    void push_reduce(int l) {
        check_letter(l);
        if (!letters_.empty() && letters_.back() == -l)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    int rank_;
    std::vector<int> letters_;
};

/// Rank of a letter in the canonical order: 1 < -1 < 2 < -2 < ...
inline int letter_ordinal(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

/// Negative, zero, positive as a <, ==, > b in length-lex order.
inline int canonical_compare(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
    for (std::size_t i = 0; i < a.length(); ++i) {
        const int oa = letter_ordinal(a.letters()[i]);
        const int ob = letter_ordinal(b.letters()[i]);
        if (oa != ob) return oa < ob ? -1 : 1;
    }
    return 0;
}

inline bool operator<(const Word& a, const Word& b) { return canonical_compare(a, b) < 0; }

inline Word multiply(const Word& a, const Word& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("multiply: rank mismatch");
    Word out = a;
    for (int l : b.letters_) out.push_reduce(l);
    return out;
}

inline Word inverse(const Word& a) {
    std::vector<int> rev(a.letters().rbegin(), a.letters().rend());
    for (int& l : rev) l = -l;
    return Word::reduced(a.rank(), rev);
}

/// True iff every letter is a generator (identity counts as positive).
inline bool is_positive(const Word& w) {
    for (int l : w.letters())
        if (l < 0) return false;
    return true;
}

/// Signed letter count: generators count +1, inverses -1.
inline int rotation_exponent(const Word& w) {
    int s = 0;
    for (int l : w.letters()) s += (l > 0) ? 1 : -1;
    return s;
}

/// |B(rank, radius)| = 1 + sum_{k=1..radius} 2n (2n-1)^{k-1}, saturating instead of overflowing.
inline std::uint64_t ball_size(int rank, int radius) {
    if (rank < 1 || radius < 0) throw std::invalid_argument("ball_size: bad arguments");
    constexpr std::uint64_t kSat = UINT64_MAX / 4;
    std::uint64_t total = 1, shell = 1;
    const std::uint64_t first = 2ull * static_cast<std::uint64_t>(rank);
    const std::uint64_t grow = first - 1;
    for (int k = 1; k <= radius; ++k) {
        const std::uint64_t f = (k == 1) ? first : grow;
        if (shell > kSat / f) return kSat;
        shell *= f;
        if (total > kSat - shell) return kSat;
        total += shell;
    }
    return total;
}

/// All reduced words of length <= radius in canonical order (breadth-first).
inline std::vector<Word> enumerate_ball(int rank, int radius, std::uint64_t cap = kDefaultBallCap) {
    const std::uint64_t count = ball_size(rank, radius);
    if (count > cap) throw std::invalid_argument("enumerate_ball: ball size exceeds cap");

    // Letters in ordinal order so lexicographic extension preserves canonical order.
    std::vector<int> alphabet;
    alphabet.reserve(2 * static_cast<std::size_t>(rank));
    for (int j = 1; j <= rank; ++j) {
        alphabet.push_back(j);
        alphabet.push_back(-j);
    }

    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(count));
    out.push_back(Word::identity(rank));
    std::size_t shell_begin = 0;
    for (int k = 1; k <= radius; ++k) {
        const std::size_t shell_end = out.size();
        for (std::size_t i = shell_begin; i < shell_end; ++i) {
            const std::vector<int>& base = out[i].letters();
            for (int l : alphabet) {
                if (!base.empty() && base.back() == -l) continue;
                std::vector<int> ext = base;
                ext.push_back(l);
                out.push_back(Word::reduced(rank, ext));
            }
        }
        shell_begin = shell_end;
    }
    return out;
}

/// Formats as e or g1*g2^-1*g3^2 (runs of one letter collapse into powers).
inline std::string to_string(const Word& w) {
    if (w.is_identity()) return "e";
    std::string s;
    const std::vector<int>& ls = w.letters();
    std::size_t i = 0;
    while (i < ls.size()) {
        std::size_t j = i;
        while (j < ls.size() && ls[j] == ls[i]) ++j;
        const int gen = std::abs(ls[i]);
        const long long exp = static_cast<long long>(j - i) * (ls[i] < 0 ? -1 : 1);
        if (!s.empty()) s += '*';
        s += 'g';
        s += std::to_string(gen);
        if (exp != 1) {
            s += '^';
            s += std::to_string(exp);
        }
        i = j;
    }
    return s;
}

/// Parses the to_string format; whitespace around tokens is rejected.
inline Word parse_word(const std::string& text, int rank) {
    if (text == "e") return Word::identity(rank);
    if (text.empty()) throw std::invalid_argument("parse_word: empty input");
    std::vector<int> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'g') throw std::invalid_argument("parse_word: expected generator at '" + text.substr(pos) + "'");
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("parse_word: missing generator index");
        const long gen = std::stol(text.substr(start, pos - start));
        if (gen < 1 || gen > rank) throw std::invalid_argument("parse_word: generator index out of range");
        long long exp = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::size_t es = pos;
            if (pos < text.size() && text[pos] == '-') ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == es || (pos == es + 1 && text[es] == '-'))
                throw std::invalid_argument("parse_word: malformed exponent");
            exp = std::stoll(text.substr(es, pos - es));
        }
        const int letter = exp >= 0 ? static_cast<int>(gen) : -static_cast<int>(gen);
        for (long long r = 0; r < std::abs(exp); ++r) letters.push_back(letter);
        if (pos < text.size()) {
            if (text[pos] != '*') throw std::invalid_argument("parse_word: expected '*' separator");
            ++pos;
            if (pos == text.size()) throw std::invalid_argument("parse_word: trailing separator");
        }
    }
    return Word::reduced(rank, letters);
}

}  // namespace ncverify::words
