#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bgklt/rational.hpp"

namespace bgklt::words {

/// A letter is a positive integer; words are sequences of pairwise
/// distinct letters (permutations of their letter set).
using Letter = int;

/// Packed word of up to 12 distinct letters from {1,...,31}.
///
/// The packed representation orders words by (length, lexicographic),
/// which is the canonical order used for all emitted output.
class Word {
  public:
    static constexpr int kMaxLen = 12;
    static constexpr Letter kMaxLetter = 31;

    Word() = default;

    static Word of(std::initializer_list<Letter> letters) {
        Word w;
        for (Letter l : letters) w = w.append(l);
        return w;
    }
    static Word of(const std::vector<Letter>& letters) {
        Word w;
        for (Letter l : letters) w = w.append(l);
        return w;
    }

    int size() const { return static_cast<int>(bits_ >> 60); }
    bool empty() const { return bits_ == 0; }

    Letter letter(int pos) const {  // 0-based
        return static_cast<Letter>((bits_ >> shift(pos)) & 0x1f);
    }
    Letter front() const { return letter(0); }
    Letter back() const { return letter(size() - 1); }

    /// Appends a letter; throws if it repeats, is out of range, or the
    /// word is full.
    Word append(Letter l) const {
        if (l < 1 || l > kMaxLetter) throw std::invalid_argument("letter out of range");
        if (size() >= kMaxLen) throw std::invalid_argument("word too long");
        if (mask() & (1u << l)) throw std::invalid_argument("repeated letter in word");
        Word w;
        w.bits_ = ((bits_ & kLetterBits) | (static_cast<std::uint64_t>(l) << shift(size()))) |
                  (static_cast<std::uint64_t>(size() + 1) << 60);
        return w;
    }

    /// Concatenation; letter sets must be disjoint.
    Word concat(Word other) const {
        Word w = *this;
        for (int i = 0; i < other.size(); ++i) w = w.append(other.letter(i));
        return w;
    }

    /// Contiguous subword [pos, pos+len).
    Word sub(int pos, int len) const {
        Word w;
        for (int i = 0; i < len; ++i) w = w.append(letter(pos + i));
        return w;
    }
    Word prefix(int len) const { return sub(0, len); }
    Word suffix_from(int pos) const { return sub(pos, size() - pos); }

    Word reversed() const {
        Word w;
        for (int i = size() - 1; i >= 0; --i) w = w.append(letter(i));
        return w;
    }

    /// Bitmask of the letter set (bit l set iff letter l occurs).
    std::uint32_t mask() const {
        std::uint32_t m = 0;
        for (int i = 0; i < size(); ++i) m |= 1u << letter(i);
        return m;
    }
    bool contains(Letter l) const { return (mask() & (1u << l)) != 0; }
    /// Position of letter l, or -1.
    int find(Letter l) const {
        for (int i = 0; i < size(); ++i)
            if (letter(i) == l) return i;
        return -1;
    }
    Letter min_letter() const {
        Letter m = kMaxLetter + 1;
        for (int i = 0; i < size(); ++i) m = std::min(m, letter(i));
        return m;
    }

    std::vector<Letter> letters() const {
        std::vector<Letter> v(size());
        for (int i = 0; i < size(); ++i) v[i] = letter(i);
        return v;
    }

    std::uint64_t bits() const { return bits_; }

    auto operator<=>(const Word&) const = default;

  private:
    static int shift(int pos) { return 5 * (kMaxLen - 1 - pos); }
    static constexpr std::uint64_t kLetterBits = (std::uint64_t(1) << 60) - 1;
    std::uint64_t bits_ = 0;
};

/// Exact-rational linear combination of words; zero coefficients are
/// never stored, iteration order is (length, lex).
using WordSum = std::map<Word, Rat>;

void add_term(WordSum& s, Word w, const Rat& c);
WordSum scale(const WordSum& s, const Rat& c);
WordSum sum(const WordSum& a, const WordSum& b);

/// Letter-labelled nested commutator, e.g. [[1,2],3]. Immutable.
class Bracketing {
  public:
    static Bracketing leaf(Letter l);
    /// Throws if the letter sets overlap.
    static Bracketing pair(const Bracketing& left, const Bracketing& right);

    bool is_leaf() const { return node_->left == nullptr; }
    Letter letter() const { return node_->letter; }
    Bracketing left() const { return Bracketing(node_->left); }
    Bracketing right() const { return Bracketing(node_->right); }
    std::uint32_t mask() const { return node_->mask; }
    int size() const { return node_->size; }

    /// Canonical text form "[[1,2],3]"; also the sort key.
    std::string str() const;

    bool operator==(const Bracketing& o) const { return str() == o.str(); }
    bool operator<(const Bracketing& o) const { return str() < o.str(); }

  private:
    struct Node {
        Letter letter = 0;
        std::shared_ptr<const Node> left, right;
        std::uint32_t mask = 0;
        int size = 0;
    };
    explicit Bracketing(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Shuffle product; the letter sets of a and b must be disjoint.
WordSum shuffle(Word a, Word b);
WordSum shuffle(const WordSum& a, const WordSum& b);

/// All splits p = xy with x, y nonempty, left to right.
std::vector<std::pair<Word, Word>> deconcatenations(Word p);

/// All 2^|y| complementary-subsequence pairs (r, s), empty parts
/// included, in subset-mask order.
std::vector<std::pair<Word, Word>> deshuffle2(Word y);

/// Coefficient of a in w.
Rat scalar(Word a, const WordSum& w);
Rat scalar(const WordSum& a, const WordSum& w);

/// Left-to-right bracketing, ell(Pn) = ell(P)n - n ell(P); ell of the
/// empty word is the empty word.
WordSum ell(Word p);
WordSum ell(const WordSum& p);

/// rho(1..n) = 1 rho(2..n) - n rho(1..n-1); rejects the empty word.
WordSum rho(Word p);

/// Shuffle form of rho: sum over splits p = XjY of (-1)^|Y| (X sh ~Y)j.
WordSum rho_shuffle_form(Word p);

/// Expands [x,y] -> xy - yx recursively.
WordSum expand_bracketing(const Bracketing& b);

/// Ree's criterion: true iff w is orthogonal to every proper shuffle.
/// Requires w multilinear (all words permutations of one letter set).
bool is_lie(const WordSum& w);

/// All words over the letters of mask, grouped as permutations.
std::vector<Word> all_words(std::uint32_t mask);
/// All permutations of {1,...,n}.
std::vector<Word> all_perms(int n);
Word id_word(int n);

}  // namespace bgklt::words
