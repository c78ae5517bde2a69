#include "bgklt/words.hpp"

#include <algorithm>
#include <numeric>

namespace bgklt::words {

void add_term(WordSum& s, Word w, const Rat& c) {
    if (c == 0) return;
    auto it = s.find(w);
    if (it == s.end()) {
        s.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0) s.erase(it);
    }
}

WordSum scale(const WordSum& s, const Rat& c) {
    WordSum r;
    if (c == 0) return r;
    for (const auto& [w, x] : s) r.emplace(w, x * c);
    return r;
}

WordSum sum(const WordSum& a, const WordSum& b) {
    WordSum r = a;
    for (const auto& [w, c] : b) add_term(r, w, c);
    return r;
}

Bracketing Bracketing::leaf(Letter l) {
    if (l < 1 || l > Word::kMaxLetter) throw std::invalid_argument("letter out of range");
    auto n = std::make_shared<Node>();
    n->letter = l;
    n->mask = 1u << l;
    n->size = 1;
    return Bracketing(std::move(n));
}

Bracketing Bracketing::pair(const Bracketing& left, const Bracketing& right) {
    if (left.mask() & right.mask())
        throw std::invalid_argument("bracketing factors share letters");
    auto n = std::make_shared<Node>();
    n->left = left.node_;
    n->right = right.node_;
    n->mask = left.mask() | right.mask();
    n->size = left.size() + right.size();
    return Bracketing(std::move(n));
}

std::string Bracketing::str() const {
    if (is_leaf()) return std::to_string(letter());
    return "[" + left().str() + "," + right().str() + "]";
}

WordSum shuffle(Word a, Word b) {
    if (a.mask() & b.mask()) throw std::invalid_argument("shuffle operands share letters");
    // iterative over subsets of merged positions
    WordSum out;
    const int n = a.size(), m = b.size();
    if (n == 0) {
        out.emplace(b, 1);
        return out;
    }
    if (m == 0) {
        out.emplace(a, 1);
        return out;
    }
    // choose which of the n+m slots take letters of a
    const int total = n + m;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        Word w;
        int ai = 0, bi = 0;
        for (int pos = 0; pos < total; ++pos) {
            if (ai < n && idx[ai] == pos)
                w = w.append(a.letter(ai++));
            else
                w = w.append(b.letter(bi++));
        }
        add_term(out, w, 1);
        // next combination
        int k = n - 1;
        while (k >= 0 && idx[k] == m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

WordSum shuffle(const WordSum& a, const WordSum& b) {
    WordSum out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Rat c = ca * cb;
            for (const auto& [w, k] : shuffle(wa, wb)) add_term(out, w, c * k);
        }
    return out;
}

std::vector<std::pair<Word, Word>> deconcatenations(Word p) {
    std::vector<std::pair<Word, Word>> out;
    for (int k = 1; k < p.size(); ++k) out.emplace_back(p.prefix(k), p.suffix_from(k));
    return out;
}

std::vector<std::pair<Word, Word>> deshuffle2(Word y) {
    const int n = y.size();
    std::vector<std::pair<Word, Word>> out;
    out.reserve(std::size_t(1) << n);
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        Word r, s;
        for (int i = 0; i < n; ++i) {
            if (m & (1u << i))
                r = r.append(y.letter(i));
            else
                s = s.append(y.letter(i));
        }
        out.emplace_back(r, s);
    }
    return out;
}

Rat scalar(Word a, const WordSum& w) {
    auto it = w.find(a);
    return it == w.end() ? Rat(0) : it->second;
}

Rat scalar(const WordSum& a, const WordSum& w) {
    Rat r = 0;
    for (const auto& [x, c] : a) r += c * scalar(x, w);
    return r;
}

WordSum ell(Word p) {
    WordSum r;
    if (p.size() <= 1) {
        r.emplace(p, 1);  // ell(empty) = empty word, ell(i) = i
        return r;
    }
    Letter n = p.back();
    WordSum prev = ell(p.prefix(p.size() - 1));
    for (const auto& [w, c] : prev) {
        add_term(r, w.append(n), c);
        add_term(r, Word::of({n}).concat(w), -c);
    }
    return r;
}

WordSum ell(const WordSum& p) {
    WordSum r;
    for (const auto& [w, c] : p)
        for (const auto& [x, k] : ell(w)) add_term(r, x, c * k);
    return r;
}

WordSum rho(Word p) {
    if (p.empty()) throw std::invalid_argument("rho of the empty word");
    WordSum r;
    if (p.size() == 1) {
        r.emplace(p, 1);
        return r;
    }
    Letter first = p.front(), last = p.back();
    for (const auto& [w, c] : rho(p.suffix_from(1)))
        add_term(r, Word::of({first}).concat(w), c);
    for (const auto& [w, c] : rho(p.prefix(p.size() - 1)))
        add_term(r, Word::of({last}).concat(w), -c);
    return r;
}

WordSum rho_shuffle_form(Word p) {
    if (p.empty()) throw std::invalid_argument("rho of the empty word");
    WordSum r;
    for (int jpos = 0; jpos < p.size(); ++jpos) {
        Word x = p.prefix(jpos);
        Letter j = p.letter(jpos);
        Word y = p.suffix_from(jpos + 1);
        Rat sign = (y.size() % 2 == 0) ? 1 : -1;
        for (const auto& [w, c] : shuffle(x, y.reversed()))
            add_term(r, w.append(j), sign * c);
    }
    return r;
}

WordSum expand_bracketing(const Bracketing& b) {
    WordSum r;
    if (b.is_leaf()) {
        r.emplace(Word::of({b.letter()}), 1);
        return r;
    }
    WordSum l = expand_bracketing(b.left());
    WordSum rt = expand_bracketing(b.right());
    for (const auto& [x, cx] : l)
        for (const auto& [y, cy] : rt) {
            add_term(r, x.concat(y), cx * cy);
            add_term(r, y.concat(x), -cx * cy);
        }
    return r;
}

namespace {

void perms_of(std::vector<Letter> letters, std::vector<Word>& out) {
    std::sort(letters.begin(), letters.end());
    do {
        out.push_back(Word::of(letters));
    } while (std::next_permutation(letters.begin(), letters.end()));
}

std::vector<Letter> mask_letters(std::uint32_t mask) {
    std::vector<Letter> v;
    for (Letter l = 1; l <= Word::kMaxLetter; ++l)
        if (mask & (1u << l)) v.push_back(l);
    return v;
}

}  // namespace

bool is_lie(const WordSum& w) {
    if (w.empty()) return true;
    std::uint32_t mask = w.begin()->first.mask();
    const int n = w.begin()->first.size();
    for (const auto& [x, c] : w) {
        (void)c;
        if (x.mask() != mask || x.size() != n)
            throw std::invalid_argument("is_lie requires a multilinear word sum");
    }
    auto letters = mask_letters(mask);
    // proper submask split; words on each side
    for (std::uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        if (sub == mask) continue;
        std::vector<Word> lhs, rhs;
        perms_of(mask_letters(sub), lhs);
        perms_of(mask_letters(mask & ~sub), rhs);
        for (const Word& a : lhs)
            for (const Word& b : rhs) {
                Rat acc = 0;
                for (const auto& [s, k] : shuffle(a, b)) acc += k * scalar(s, w);
                if (acc != 0) return false;
            }
    }
    return true;
}

std::vector<Word> all_words(std::uint32_t mask) {
    std::vector<Word> out;
    perms_of(mask_letters(mask), out);
    return out;
}

std::vector<Word> all_perms(int n) {
    std::vector<Letter> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Word> out;
    perms_of(v, out);
    return out;
}

Word id_word(int n) {
    Word w;
    for (Letter l = 1; l <= n; ++l) w = w.append(l);
    return w;
}

}  // namespace bgklt::words
