#pragma once

#include <string>

#include "bgklt/brst.hpp"
#include "bgklt/currents.hpp"
#include "bgklt/klt.hpp"
#include "bgklt/mandelstam.hpp"
#include "bgklt/pbt.hpp"
#include "bgklt/words.hpp"

namespace bgklt::io {

enum class Format { text, json, latex };

Format parse_format(const std::string& s);

/// "123" for letters <= 9, "10,2,3" otherwise; empty word is "e".
std::string word_str(words::Word w);
/// Parses either form; throws std::invalid_argument on malformed input.
words::Word parse_word(const std::string& s);

std::string svar_str(mandelstam::SVar v);
std::string pole_str(mandelstam::Pole p);
std::string mono_str(const mandelstam::Mono& m);

std::string poly_text(const mandelstam::MPoly& p);
std::string poly_latex(const mandelstam::MPoly& p);
std::string poly_json(const mandelstam::MPoly& p);

std::string rat_text(const mandelstam::MRat& r);
std::string rat_latex(const mandelstam::MRat& r);
std::string rat_json(const mandelstam::MRat& r);

std::string wordsum_text(const words::WordSum& s);
std::string wordsum_json(const words::WordSum& s);

std::string weighted_text(const klt::WeightedWordSum& s);
std::string weighted_json(const klt::WeightedWordSum& s);
std::string weighted_latex(const klt::WeightedWordSum& s);

std::string lieratsum_text(const currents::LieRatSum& s);

std::string current_text(const currents::Current& c);
std::string current_json(const currents::Current& c);
std::string current_latex(const currents::Current& c);

std::string grassmann_text(const brst::GrassmannPoly& g);
std::string grassmann_json(const brst::GrassmannPoly& g);
std::string grassmann_latex(const brst::GrassmannPoly& g);

std::string vcoeffs_text(const std::map<words::Word, mandelstam::MPoly>& m);

}  // namespace bgklt::io
