#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/errors.hpp"

namespace qualomega {

/// Ordered finite set of symbol names. Declaration order is fixed at
/// construction and used for all tie-breaking in later constructions.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
      auto [it, fresh] = index_.emplace(letters_[i], i);
      if (!fresh) throw Error("DuplicateLetter", "letter '" + letters_[i] + "' declared twice");
    }
  }

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const std::string& letter(int i) const { return letters_.at(i); }
  const std::vector<std::string>& letters() const { return letters_; }

  std::optional<int> index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw Error("UnknownLetter", "letter '" + name + "' not in alphabet");
    return *i;
  }

  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  /// New alphabet with one extra letter appended (used for the '#' padding symbol).
  Alphabet extended_with(const std::string& name) const {
    auto ls = letters_;
    ls.push_back(name);
    return Alphabet(std::move(ls));
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<std::string> letters_;
  std::map<std::string, int> index_;
};

}  // namespace qualomega
