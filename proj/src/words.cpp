#include "nilgrowth/words.hpp"

#include <cctype>
#include <set>

#include "nilgrowth/error.hpp"

namespace nilgrowth::words {
namespace {

constexpr std::string_view kInverseSuffix = "^-1";

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == ')' || c == '\'';
}

bool is_plain_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_name_char(c)) return false;
  return true;
}

bool is_inverse_name(std::string_view s) {
  return s.size() > kInverseSuffix.size() && s.ends_with(kInverseSuffix) &&
         is_plain_name(s.substr(0, s.size() - kInverseSuffix.size()));
}

}  // namespace

GenSet::GenSet(std::vector<Letter> letters) : letters_(std::move(letters)) {
  std::set<std::string> seen;
  for (const auto& l : letters_) {
    if (!is_plain_name(l.name) && !is_inverse_name(l.name))
      throw Error(ErrorCode::InvalidParams, "invalid letter name '" + l.name + "'");
    if (!seen.insert(l.name).second) throw Error(ErrorCode::InvalidParams, "duplicate letter name '" + l.name + "'");
    if (l.weight < 1) throw Error(ErrorCode::InvalidParams, "letter '" + l.name + "' has non-positive weight");
  }
}

GenSet GenSet::standard(const zoo::GroupDescriptor& desc) {
  std::vector<Letter> letters;
  for (const auto& l : desc.letters()) letters.push_back({l.name, l.element, 1});
  return GenSet(std::move(letters));
}

std::optional<std::size_t> GenSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i].name == name) return i;
  return std::nullopt;
}

long long GenSet::max_weight() const {
  long long m = 0;
  for (const auto& l : letters_) m = std::max(m, l.weight);
  return m;
}

Word Word::from_letters(const std::vector<std::size_t>& letters) {
  Word w;
  for (auto l : letters) w.append(l);
  return w;
}

void Word::append(std::size_t letter, long long exponent) {
  if (exponent <= 0) throw Error(ErrorCode::ZeroExponent, "word blocks need positive exponents");
  if (!blocks_.empty() && blocks_.back().letter == letter) {
    blocks_.back().exponent += exponent;
  } else {
    blocks_.push_back({letter, exponent});
  }
}

void Word::append(const Word& other) {
  for (const auto& b : other.blocks_) append(b.letter, b.exponent);
}

std::vector<std::size_t> Word::letters() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks_)
    for (long long i = 0; i < b.exponent; ++i) out.push_back(b.letter);
  return out;
}

long long Word::length() const {
  long long n = 0;
  for (const auto& b : blocks_) n += b.exponent;
  return n;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.append(b);
  return r;
}

Word parse_word(std::string_view text, const GenSet& gens) {
  Word w;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_sep = [&] {
    while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip_sep();
  while (i < n) {
    const std::size_t start = i;
    while (i < n && is_name_char(text[i])) ++i;
    if (i == start) throw SyntaxError(i, std::string("unexpected character '") + text[i] + "'");
    std::string name(text.substr(start, i - start));
    long long exponent = 1;
    if (i < n && text[i] == '^') {
      ++i;
      const std::size_t num_start = i;
      bool negative = false;
      if (i < n && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
      }
      const std::size_t digits = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == digits) throw SyntaxError(num_start, "expected integer exponent after '^'");
      if (i - digits > 15) throw SyntaxError(num_start, "exponent too large");
      exponent = std::stoll(std::string(text.substr(digits, i - digits)));
      if (negative) exponent = -exponent;
      if (exponent == 0)
        throw Error(ErrorCode::ZeroExponent, "zero exponent on '" + name + "' at position " + std::to_string(start));
    }
    if (i < n && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '*')
      throw SyntaxError(i, std::string("unexpected character '") + text[i] + "'");

    std::optional<std::size_t> letter;
    if (exponent > 0) {
      letter = gens.find(name);
      if (!letter)
        throw Error(ErrorCode::UnknownLetter, "unknown letter '" + name + "' at position " + std::to_string(start));
    } else {
      letter = gens.find(name + std::string(kInverseSuffix));
      if (!letter) {
        if (gens.find(name))
          throw Error(ErrorCode::MissingInverseLetter, "letter '" + name + "' has no inverse letter '" + name +
                                                           std::string(kInverseSuffix) + "' at position " +
                                                           std::to_string(start));
        throw Error(ErrorCode::UnknownLetter, "unknown letter '" + name + "' at position " + std::to_string(start));
      }
      exponent = -exponent;
    }
    w.append(*letter, exponent);
    skip_sep();
  }
  return w;
}

std::string format_word(const Word& w, const GenSet& gens) {
  std::string out;
  for (const auto& b : w.blocks()) {
    if (!out.empty()) out += ' ';
    const std::string& name = gens[b.letter].name;
    if (is_inverse_name(name)) {
      out += name.substr(0, name.size() - kInverseSuffix.size()) + "^-" + std::to_string(b.exponent);
    } else {
      out += name;
      if (b.exponent != 1) out += "^" + std::to_string(b.exponent);
    }
  }
  return out;
}

long long coarse_len(const Word& w) { return static_cast<long long>(w.blocks().size()); }

long long weighted_len(const Word& w, const GenSet& gens) {
  long long n = 0;
  for (const auto& b : w.blocks()) n += b.exponent * gens[b.letter].weight;
  return n;
}

zoo::GroupElement evaluate(const Word& w, const GenSet& gens, const zoo::GroupDescriptor& desc) {
  zoo::GroupElement g = desc.identity();
  for (const auto& b : w.blocks()) g = desc.mul(g, desc.pow(gens[b.letter].element, b.exponent));
  return g;
}

const char* grammar_text() {
  return "Word grammar:\n"
         "\n"
         "  word   := [ factor { sep factor } ]\n"
         "  sep    := whitespace | '*'\n"
         "  factor := name [ '^' integer ]        integer nonzero\n"
         "  name   := one or more of [A-Za-z0-9_()']\n"
         "\n"
         "A positive exponent m repeats the letter `name` m times. A negative\n"
         "exponent -m repeats the letter named `name^-1`, which must itself be a\n"
         "letter of the generating set; inverses are never formed implicitly.\n";
}

}  // namespace nilgrowth::words
