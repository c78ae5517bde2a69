#include "bgklt/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace bgklt::io {

using nlohmann::json;
using namespace mandelstam;

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "latex") return Format::latex;
    throw std::invalid_argument("unknown format: " + s);
}

std::string word_str(words::Word w) {
    if (w.empty()) return "e";
    bool digits = true;
    for (int i = 0; i < w.size(); ++i)
        if (w.letter(i) > 9) digits = false;
    std::string s;
    for (int i = 0; i < w.size(); ++i) {
        if (!digits && i) s += ',';
        s += std::to_string(w.letter(i));
    }
    return s;
}

words::Word parse_word(const std::string& s) {
    if (s.empty() || s == "e") return {};
    words::Word w;
    if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw std::invalid_argument("malformed word: " + s);
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("malformed word: " + s);
            w = w.append(v);
        }
    } else {
        for (char c : s) {
            if (c < '1' || c > '9') throw std::invalid_argument("malformed word: " + s);
            w = w.append(c - '0');
        }
    }
    return w;
}

namespace {

std::string letters_str(std::uint32_t mask) {
    bool digits = (mask >> 10) == 0;  // letters above 9 present?
    std::string s;
    bool first = true;
    for (words::Letter l = 1; l <= words::Word::kMaxLetter; ++l) {
        if (!(mask & (1u << l))) continue;
        if (!digits && !first) s += ',';
        s += std::to_string(l);
        first = false;
    }
    return s;
}

std::string letters_latex(std::uint32_t mask) {
    std::string s;
    bool first = true;
    for (words::Letter l = 1; l <= words::Word::kMaxLetter; ++l) {
        if (!(mask & (1u << l))) continue;
        if (!first && l > 9) s += ',';
        s += std::to_string(l);
        first = false;
    }
    return s;
}

/// joins signed pieces: ("a", +) ("b", -) -> "a - b"
std::string join_signed(const std::vector<std::pair<std::string, bool>>& pieces) {
    if (pieces.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& [body, neg] = pieces[i];
        if (i == 0) {
            if (neg) out += "-";
            out += body;
        } else {
            out += neg ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

std::string rat_abs_str(const Rat& r) {
    Rat a = r < 0 ? Rat(-r) : r;
    return a.get_str();
}

}  // namespace

std::string svar_str(SVar v) {
    std::uint32_t mask = (1u << svar_lo(v)) | (1u << svar_hi(v));
    return "s" + letters_str(mask);
}

std::string pole_str(Pole p) { return "s" + letters_str(p); }

std::string mono_str(const Mono& m) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += '*';
        s += svar_str(m[i]);
    }
    return s;
}

std::string poly_text(const MPoly& p) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [m, c] : p) {
        bool neg = c < 0;
        std::string body;
        Rat a = neg ? Rat(-c) : c;
        if (m.empty()) {
            body = a.get_str();
        } else if (a == 1) {
            body = mono_str(m);
        } else {
            body = a.get_str() + "*" + mono_str(m);
        }
        pieces.emplace_back(body, neg);
    }
    return join_signed(pieces);
}

namespace {

std::string svar_latex(SVar v) {
    std::uint32_t mask = (1u << svar_lo(v)) | (1u << svar_hi(v));
    return "s_{" + letters_latex(mask) + "}";
}

std::string mono_latex(const Mono& m) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ' ';
        s += svar_latex(m[i]);
    }
    return s;
}

}  // namespace

std::string poly_latex(const MPoly& p) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [m, c] : p) {
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        std::string body;
        if (m.empty()) {
            body = a.get_str();
        } else if (a == 1) {
            body = mono_latex(m);
        } else {
            body = a.get_str() + "\\," + mono_latex(m);
        }
        pieces.emplace_back(body, neg);
    }
    return join_signed(pieces);
}

std::string poly_json(const MPoly& p) {
    json arr = json::array();
    for (const auto& [m, c] : p) {
        json term;
        term["coeff"] = rat_str(c);
        json vars = json::array();
        for (SVar v : m) vars.push_back(svar_str(v));
        term["vars"] = vars;
        arr.push_back(term);
    }
    return arr.dump();
}

namespace {

std::string rat_term_text(const RatTerm& t) {
    Rat a = t.coeff < 0 ? Rat(-t.coeff) : t.coeff;
    std::string num;
    if (t.num.empty()) {
        num = a.get_str();
    } else if (a == 1) {
        num = mono_str(t.num);
    } else {
        num = a.get_str() + "*" + mono_str(t.num);
    }
    if (t.den.empty()) return num;
    std::string den;
    if (t.den.size() == 1) {
        den = pole_str(t.den[0]);
    } else {
        den = "(";
        for (std::size_t i = 0; i < t.den.size(); ++i) {
            if (i) den += '*';
            den += pole_str(t.den[i]);
        }
        den += ")";
    }
    return num + "/" + den;
}

}  // namespace

std::string rat_text(const MRat& r) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& t : r.terms()) pieces.emplace_back(rat_term_text(t), t.coeff < 0);
    return join_signed(pieces);
}

std::string rat_latex(const MRat& r) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& t : r.terms()) {
        bool neg = t.coeff < 0;
        Rat a = neg ? Rat(-t.coeff) : t.coeff;
        std::string num;
        if (t.num.empty()) {
            num = a.get_str();
        } else if (a == 1) {
            num = mono_latex(t.num);
        } else {
            num = a.get_str() + "\\," + mono_latex(t.num);
        }
        std::string body;
        if (t.den.empty()) {
            body = num;
        } else {
            std::string den;
            for (std::size_t i = 0; i < t.den.size(); ++i) {
                if (i) den += ' ';
                den += "s_{" + letters_latex(t.den[i]) + "}";
            }
            body = "\\frac{" + num + "}{" + den + "}";
        }
        pieces.emplace_back(body, neg);
    }
    return join_signed(pieces);
}

std::string rat_json(const MRat& r) {
    json arr = json::array();
    for (const auto& t : r.terms()) {
        json term;
        term["coeff"] = rat_str(t.coeff);
        json num = json::array();
        for (SVar v : t.num) num.push_back(svar_str(v));
        term["num"] = num;
        json poles = json::array();
        for (Pole p : t.den) poles.push_back(pole_str(p));
        term["poles"] = poles;
        arr.push_back(term);
    }
    return arr.dump();
}

std::string wordsum_text(const words::WordSum& s) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [w, c] : s) {
        bool neg = c < 0;
        std::string body = rat_abs_str(c) == "1" ? word_str(w) : rat_abs_str(c) + "*" + word_str(w);
        pieces.emplace_back(body, neg);
    }
    return join_signed(pieces);
}

std::string wordsum_json(const words::WordSum& s) {
    json arr = json::array();
    for (const auto& [w, c] : s) {
        json term;
        term["word"] = word_str(w);
        term["coeff_num"] = c.get_num().get_str();
        term["coeff_den"] = c.get_den().get_str();
        arr.push_back(term);
    }
    return arr.dump();
}

namespace {

// (piece text without sign, is_negative); single-term polys fold the sign out
std::pair<std::string, bool> poly_signed_factor(const MPoly& p, const std::string& tail) {
    if (p.size() == 1) {
        const auto& [m, c] = *p.begin();
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (a == 1 && m.empty() && !tail.empty() && tail.front() == '*')
            return {tail.substr(1), neg};  // unit weight
        std::string body = (a == 1 && !m.empty()) ? mono_str(m)
                           : m.empty()            ? a.get_str()
                                                  : a.get_str() + "*" + mono_str(m);
        return {body + tail, neg};
    }
    return {"(" + poly_text(p) + ")" + tail, false};
}

std::pair<std::string, bool> rat_signed_factor(const MRat& r, const std::string& tail) {
    if (r.size() == 1) {
        const auto& t = r.terms()[0];
        bool neg = t.coeff < 0;
        RatTerm abs = t;
        abs.coeff = neg ? Rat(-t.coeff) : t.coeff;
        return {rat_term_text(abs) + tail, neg};
    }
    return {"(" + rat_text(r) + ")" + tail, false};
}

}  // namespace

std::string weighted_text(const klt::WeightedWordSum& s) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [w, p] : s) pieces.push_back(poly_signed_factor(p, "*" + word_str(w)));
    return join_signed(pieces);
}

std::string weighted_json(const klt::WeightedWordSum& s) {
    json arr = json::array();
    for (const auto& [w, p] : s) {
        json term;
        term["word"] = word_str(w);
        term["weight"] = json::parse(poly_json(p));
        arr.push_back(term);
    }
    return arr.dump();
}

std::string weighted_latex(const klt::WeightedWordSum& s) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [w, p] : s) {
        std::string body;
        if (p.size() == 1) {
            const auto& [m, c] = *p.begin();
            bool neg = c < 0;
            Rat a = neg ? Rat(-c) : c;
            body = (a == 1 ? std::string() : a.get_str() + "\\,") + mono_latex(m) + "\\," +
                   word_str(w);
            pieces.emplace_back(body, neg);
        } else {
            pieces.emplace_back("(" + poly_latex(p) + ")\\," + word_str(w), false);
        }
    }
    return join_signed(pieces);
}

std::string lieratsum_text(const currents::LieRatSum& s) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [br, c] : s.terms) pieces.push_back(rat_signed_factor(c, " * " + br.str()));
    return join_signed(pieces);
}

std::string current_text(const currents::Current& c) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [w, r] : c) pieces.push_back(rat_signed_factor(r, " * V" + word_str(w)));
    return join_signed(pieces);
}

std::string current_json(const currents::Current& c) {
    json obj = json::object();
    for (const auto& [w, r] : c) obj[word_str(w)] = json::parse(rat_json(r));
    return obj.dump();
}

std::string current_latex(const currents::Current& c) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [w, r] : c) {
        std::string tail = "\\,V_{" + word_str(w) + "}";
        if (r.size() == 1) {
            const auto& t = r.terms()[0];
            bool neg = t.coeff < 0;
            RatTerm abs = t;
            abs.coeff = neg ? Rat(-t.coeff) : t.coeff;
            MRat single = MRat::from_terms({abs});
            pieces.emplace_back(rat_latex(single) + tail, neg);
        } else {
            pieces.emplace_back("\\Big(" + rat_latex(r) + "\\Big)" + tail, false);
        }
    }
    return join_signed(pieces);
}

namespace {

std::string vtuple_str(const std::vector<words::Word>& t, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += sep;
        s += "V" + word_str(t[i]);
    }
    return s;
}

}  // namespace

std::string grassmann_text(const brst::GrassmannPoly& g) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [k, c] : g.terms)
        pieces.push_back(rat_signed_factor(c, " * " + vtuple_str(k, "^")));
    return join_signed(pieces);
}

std::string grassmann_json(const brst::GrassmannPoly& g) {
    json arr = json::array();
    for (const auto& [k, c] : g.terms) {
        json term;
        json vw = json::array();
        for (const auto& w : k) vw.push_back(word_str(w));
        term["v_words"] = vw;
        term["coeff"] = json::parse(rat_json(c));
        arr.push_back(term);
    }
    return arr.dump();
}

std::string grassmann_latex(const brst::GrassmannPoly& g) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [k, c] : g.terms) {
        std::string tail;
        for (const auto& w : k) tail += "V_{" + word_str(w) + "}";
        if (c.size() == 1) {
            const auto& t = c.terms()[0];
            bool neg = t.coeff < 0;
            RatTerm abs = t;
            abs.coeff = neg ? Rat(-t.coeff) : t.coeff;
            pieces.emplace_back(rat_latex(MRat::from_terms({abs})) + "\\," + tail, neg);
        } else {
            pieces.emplace_back("\\big(" + rat_latex(c) + "\\big)" + tail, false);
        }
    }
    return join_signed(pieces);
}

std::string vcoeffs_text(const std::map<words::Word, MPoly>& m) {
    std::vector<std::pair<std::string, bool>> pieces;
    for (const auto& [w, p] : m) pieces.push_back(poly_signed_factor(p, "*M" + word_str(w)));
    return join_signed(pieces);
}

}  // namespace bgklt::io
