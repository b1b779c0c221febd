#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qualomega/alphabet.hpp"

namespace qualomega {

/// Ultimately periodic word u . v^omega, the finite presentation of an
/// infinite word. Letters are alphabet indices; v is non-empty.
struct LassoWord {
  std::vector<int> prefix;  // u, possibly empty
  std::vector<int> cycle;   // v, non-empty

  int period_start() const { return static_cast<int>(prefix.size()); }
  int total_length() const { return static_cast<int>(prefix.size() + cycle.size()); }

  /// Letter at position i of the presentation (0 <= i < total_length()).
  int letter_at(int i) const {
    return i < period_start() ? prefix[i] : cycle[i - period_start()];
  }

  /// Successor position: advance along u, then cycle within v.
  int next_position(int i) const {
    const int j = i + 1;
    if (j < total_length()) return j;
    return period_start();
  }

  /// Unrolled presentation (u . v, v) of the same word.
  LassoWord unroll_once() const {
    LassoWord w = *this;
    w.prefix.insert(w.prefix.end(), cycle.begin(), cycle.end());
    return w;
  }

  /// Presentation (u, v . v) of the same word.
  LassoWord double_cycle() const {
    LassoWord w = *this;
    w.cycle.insert(w.cycle.end(), cycle.begin(), cycle.end());
    return w;
  }

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

namespace detail {

inline std::vector<int> parse_letter_segment(const std::string& seg, const Alphabet& sigma) {
  std::vector<int> out;
  if (seg.empty()) return out;
  if (seg.find(',') != std::string::npos) {
    std::size_t pos = 0;
    while (pos <= seg.size()) {
      const auto comma = seg.find(',', pos);
      const std::string name = seg.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      out.push_back(sigma.require(name));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else {
    // single-character letters written back to back
    for (char ch : seg) out.push_back(sigma.require(std::string(1, ch)));
  }
  return out;
}

}  // namespace detail

/// Parses the CLI lasso syntax "u;v": each segment is either single-character
/// letters juxtaposed ("ab;ba") or comma-separated names ("go,stop;go").
inline LassoWord parse_lasso(const std::string& text, const Alphabet& sigma) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw Error("Parse", "lasso must be written 'prefix;cycle' (prefix may be empty)");
  LassoWord w;
  w.prefix = detail::parse_letter_segment(text.substr(0, semi), sigma);
  w.cycle = detail::parse_letter_segment(text.substr(semi + 1), sigma);
  if (w.cycle.empty()) throw Error("Parse", "lasso cycle must be non-empty");
  return w;
}

inline std::string format_lasso(const LassoWord& w, const Alphabet& sigma) {
  auto seg = [&](const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ',';
      s += sigma.letter(xs[i]);
    }
    return s;
  };
  return seg(w.prefix) + ";" + seg(w.cycle);
}

}  // namespace qualomega
