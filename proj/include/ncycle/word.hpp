#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ncycle {

/// Raised for malformed input: bad word text, letters outside the alphabet,
/// violated preconditions of an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generator u_g raised to +1 or -1.
///
/// Stored as a single signed code: +g for u_g, -g for u_g^{-1}.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int exponent)
      : code_(exponent < 0 ? -generator : generator) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr int generator() const { return code_ < 0 ? -code_ : code_; }
  constexpr int exponent() const { return code_ < 0 ? -1 : 1; }
  constexpr int code() const { return code_; }
  constexpr Letter inverse() const { return from_code(-code_); }
  constexpr bool cancels(Letter other) const { return code_ == -other.code_; }

  /// Position in the 2N-symbol alphabet: u_1, u_1^{-1}, u_2, u_2^{-1}, ...
  constexpr int symbol_index() const {
    return 2 * (generator() - 1) + (code_ < 0 ? 1 : 0);
  }
  static constexpr Letter from_symbol_index(int s) {
    return Letter(s / 2 + 1, (s % 2 == 0) ? 1 : -1);
  }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  int code_ = 1;
};

/// A finite string of letters over u_1^{±1} .. u_N^{±1}.
///
/// Construction never reduces: "aA" is a word of length 2.
class Word {
 public:
  Word() = default;
  /// Throws InvalidArgument if alphabet_size < 1 or a letter's generator
  /// exceeds alphabet_size.
  Word(int alphabet_size, std::vector<Letter> letters);
  explicit Word(int alphabet_size) : Word(alphabet_size, {}) {}

  int alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  /// Letters [pos, pos+count).
  Word substr(std::size_t pos, std::size_t count) const;
  /// l_{r+1} ... l_n l_1 ... l_r (r taken mod n; offset 0 is the identity).
  Word rotate(std::size_t r) const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }

 private:
  int alphabet_size_ = 1;
  std::vector<Letter> letters_;
};

/// Parses either the alphabetic encoding ("aBc": a..z are u_1..u_26,
/// uppercase are inverses) or a JSON array of signed generator indices
/// ("[1,-2,3]"). Leading '[' selects JSON.
Word parse_word(std::string_view text, int alphabet_size);

/// Largest generator index mentioned in the text (at least 1). Used to infer
/// an alphabet size when none is given.
int infer_alphabet_size(std::string_view text);

/// Alphabetic encoding. Throws InvalidArgument if a generator exceeds 26.
std::string to_alpha(std::span<const Letter> letters);
inline std::string to_alpha(const Word& w) { return to_alpha(w.letters()); }

/// Signed-integer JSON array, e.g. "[1,-2]".
std::string to_json_array(const Word& w);

/// Alphabetic when every generator fits in a..z, JSON otherwise.
std::string to_string(const Word& w);

/// l_n^{-1} ... l_1^{-1}, without reduction.
Word invert(const Word& w);

}  // namespace ncycle
