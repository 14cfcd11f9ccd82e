#pragma once

// Words over weighted generating sets.
//
// Word grammar (also the CLI's word syntax):
//
//   word   := [ factor { sep factor } ]
//   sep    := whitespace | '*'
//   factor := name [ '^' integer ]        integer nonzero
//   name   := one or more of [A-Za-z0-9_()']
//
// A positive exponent m repeats the letter `name` m times. A negative
// exponent -m repeats the letter named `name^-1`, which must itself be a
// letter of the generating set; inverses are never formed implicitly.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilgrowth/zoo.hpp"

namespace nilgrowth::words {

struct Letter {
  std::string name;
  zoo::GroupElement element;
  long long weight = 1;
};

class GenSet {
 public:
  explicit GenSet(std::vector<Letter> letters);
  /// The descriptor's named letters, all of weight 1.
  static GenSet standard(const zoo::GroupDescriptor& desc);

  std::size_t size() const noexcept { return letters_.size(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::optional<std::size_t> find(std::string_view name) const;
  long long max_weight() const;

 private:
  std::vector<Letter> letters_;
};

struct Block {
  std::size_t letter;
  long long exponent;  // >= 1
  friend bool operator==(const Block&, const Block&) = default;
};

/// Run-length word; adjacent blocks always carry distinct letters.
class Word {
 public:
  Word() = default;
  static Word from_letters(const std::vector<std::size_t>& letters);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  bool empty() const noexcept { return blocks_.empty(); }

  /// Appends letter^exponent, merging with the last block when possible.
  void append(std::size_t letter, long long exponent = 1);
  void append(const Word& other);
  /// Flat letter sequence.
  std::vector<std::size_t> letters() const;
  long long length() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters() <=> b.letters();
  }

 private:
  std::vector<Block> blocks_;
};

Word concat(const Word& a, const Word& b);

/// The grammar above as plain text, for help screens.
const char* grammar_text();

Word parse_word(std::string_view text, const GenSet& gens);
/// Canonical text; parse_word(format_word(w)) == w.
std::string format_word(const Word& w, const GenSet& gens);

/// Number of blocks.
long long coarse_len(const Word& w);
/// Sum of exponent times letter weight.
long long weighted_len(const Word& w, const GenSet& gens);

zoo::GroupElement evaluate(const Word& w, const GenSet& gens, const zoo::GroupDescriptor& desc);

}  // namespace nilgrowth::words
