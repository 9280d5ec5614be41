#include "ncycle/word.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace ncycle {

namespace {

void check_letter(Letter l, int alphabet_size) {
  if (l.code() == 0) {
    throw InvalidArgument("generator index 0 is not a letter");
  }
  if (l.generator() > alphabet_size) {
    throw InvalidArgument("generator " + std::to_string(l.generator()) +
                          " exceeds alphabet size N=" +
                          std::to_string(alphabet_size));
  }
}

bool looks_like_json(std::string_view text) {
  auto it = std::find_if_not(text.begin(), text.end(),
                             [](unsigned char c) { return std::isspace(c); });
  return it != text.end() && *it == '[';
}

std::vector<int> parse_json_codes(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON word: ") + e.what());
  }
  if (!j.is_array()) {
    throw InvalidArgument("JSON word must be an array of signed integers");
  }
  std::vector<int> codes;
  codes.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw InvalidArgument("JSON word entries must be nonzero integers");
    }
    codes.push_back(v.get<int>());
  }
  return codes;
}

std::vector<int> parse_alpha_codes(std::string_view text) {
  std::vector<int> codes;
  codes.reserve(text.size());
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      codes.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      codes.push_back(-(c - 'A' + 1));
    } else {
      throw InvalidArgument(std::string("unexpected character '") + c +
                            "' in word");
    }
  }
  return codes;
}

std::vector<int> parse_codes(std::string_view text) {
  return looks_like_json(text) ? parse_json_codes(text)
                               : parse_alpha_codes(text);
}

}  // namespace

Word::Word(int alphabet_size, std::vector<Letter> letters)
    : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
  if (alphabet_size_ < 1) {
    throw InvalidArgument("alphabet size must be at least 1");
  }
  for (Letter l : letters_) check_letter(l, alphabet_size_);
}

Word Word::substr(std::size_t pos, std::size_t count) const {
  pos = std::min(pos, letters_.size());
  count = std::min(count, letters_.size() - pos);
  Word out(alphabet_size_);
  out.letters_.assign(letters_.begin() + pos, letters_.begin() + pos + count);
  return out;
}

Word Word::rotate(std::size_t r) const {
  Word out = *this;
  if (!letters_.empty()) {
    std::rotate(out.letters_.begin(),
                out.letters_.begin() + static_cast<std::ptrdiff_t>(r % size()),
                out.letters_.end());
  }
  return out;
}

Word operator+(const Word& a, const Word& b) {
  Word out(std::max(a.alphabet_size_, b.alphabet_size_));
  out.letters_.reserve(a.size() + b.size());
  out.letters_.insert(out.letters_.end(), a.letters_.begin(), a.letters_.end());
  out.letters_.insert(out.letters_.end(), b.letters_.begin(), b.letters_.end());
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  std::vector<Letter> letters;
  for (int code : parse_codes(text)) {
    Letter l = Letter::from_code(code);
    check_letter(l, alphabet_size);
    letters.push_back(l);
  }
  return Word(alphabet_size, std::move(letters));
}

int infer_alphabet_size(std::string_view text) {
  int n = 1;
  for (int code : parse_codes(text)) n = std::max(n, code < 0 ? -code : code);
  return n;
}

std::string to_alpha(std::span<const Letter> letters) {
  std::string s;
  s.reserve(letters.size());
  for (Letter l : letters) {
    if (l.generator() > 26) {
      throw InvalidArgument("generator " + std::to_string(l.generator()) +
                            " has no alphabetic encoding");
    }
    char base = l.exponent() > 0 ? 'a' : 'A';
    s.push_back(static_cast<char>(base + l.generator() - 1));
  }
  return s;
}

std::string to_json_array(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i].code());
  }
  return s + "]";
}

std::string to_string(const Word& w) {
  bool alpha = std::all_of(w.letters().begin(), w.letters().end(),
                           [](Letter l) { return l.generator() <= 26; });
  return alpha ? to_alpha(w) : to_json_array(w);
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(w.alphabet_size(), std::move(out));
}

}  // namespace ncycle
