#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qualomega/errors.hpp"

namespace qualomega {

enum class AcceptanceKind { Buchi, CoBuchi, Rabin, Parity };

inline std::string to_string(AcceptanceKind k) {
  switch (k) {
    case AcceptanceKind::Buchi: return "buchi";
    case AcceptanceKind::CoBuchi: return "cobuchi";
    case AcceptanceKind::Rabin: return "rabin";
    case AcceptanceKind::Parity: return "parity";
  }
  return "?";
}

/// One Rabin pair: a run accepts through it iff inf(r) meets alpha and
/// avoids beta.
struct RabinPair {
  std::set<int> alpha;
  std::set<int> beta;

  friend bool operator==(const RabinPair&, const RabinPair&) = default;
};

/// Tagged union over the four omega-regular condition families of the word
/// and tree automata in this library. Members are indices into the owning
/// object's state (or label-payload) universe.
class AcceptanceCondition {
 public:
  AcceptanceCondition() : kind_(AcceptanceKind::Buchi) {}

  static AcceptanceCondition buchi(std::set<int> accepting) {
    AcceptanceCondition c;
    c.kind_ = AcceptanceKind::Buchi;
    c.set_ = std::move(accepting);
    return c;
  }

  static AcceptanceCondition cobuchi(std::set<int> rejecting) {
    AcceptanceCondition c;
    c.kind_ = AcceptanceKind::CoBuchi;
    c.set_ = std::move(rejecting);
    return c;
  }

  static AcceptanceCondition rabin(std::vector<RabinPair> pairs) {
    AcceptanceCondition c;
    c.kind_ = AcceptanceKind::Rabin;
    c.pairs_ = std::move(pairs);
    return c;
  }

  static AcceptanceCondition parity(std::map<int, int> priority) {
    AcceptanceCondition c;
    c.kind_ = AcceptanceKind::Parity;
    c.priority_ = std::move(priority);
    return c;
  }

  AcceptanceKind kind() const { return kind_; }
  const std::set<int>& state_set() const { return set_; }
  const std::vector<RabinPair>& pairs() const { return pairs_; }
  const std::map<int, int>& priority() const { return priority_; }

  int priority_of(int q) const {
    auto it = priority_.find(q);
    if (it == priority_.end()) throw Error("PartialParityMap", "no priority for state " + std::to_string(q));
    return it->second;
  }

  /// Evaluates the condition treating `inf` as the set of elements seen
  /// infinitely often.
  bool accepts_infset(const std::set<int>& inf) const {
    if (inf.empty()) throw Error("EmptySet", "inf-set must be non-empty");
    switch (kind_) {
      case AcceptanceKind::Buchi: return intersects(inf, set_);
      case AcceptanceKind::CoBuchi: return !intersects(inf, set_);
      case AcceptanceKind::Rabin:
        for (const auto& p : pairs_)
          if (intersects(inf, p.alpha) && !intersects(inf, p.beta)) return true;
        return false;
      case AcceptanceKind::Parity: {
        int min_prio = -1;
        for (int q : inf) {
          const int pr = priority_of(q);
          if (min_prio < 0 || pr < min_prio) min_prio = pr;
        }
        return min_prio % 2 == 0;
      }
    }
    return false;
  }

  /// All referenced members fall in [0, domain); a parity map is total over it.
  bool well_formed_over(int domain) const {
    auto in_range = [domain](int q) { return q >= 0 && q < domain; };
    switch (kind_) {
      case AcceptanceKind::Buchi:
      case AcceptanceKind::CoBuchi: return std::all_of(set_.begin(), set_.end(), in_range);
      case AcceptanceKind::Rabin:
        for (const auto& p : pairs_) {
          if (!std::all_of(p.alpha.begin(), p.alpha.end(), in_range)) return false;
          if (!std::all_of(p.beta.begin(), p.beta.end(), in_range)) return false;
        }
        return true;
      case AcceptanceKind::Parity:
        for (int q = 0; q < domain; ++q)
          if (!priority_.count(q)) return false;
        for (const auto& [q, pr] : priority_)
          if (!in_range(q) || pr < 0) return false;
        return true;
    }
    return false;
  }

  /// Same condition over a renamed universe; old_to_new[q] < 0 drops q from
  /// sets (a parity map keeps only mapped states — callers must re-total it).
  AcceptanceCondition remap(const std::vector<int>& old_to_new) const {
    auto map_set = [&](const std::set<int>& s) {
      std::set<int> out;
      for (int q : s)
        if (old_to_new.at(q) >= 0) out.insert(old_to_new[q]);
      return out;
    };
    switch (kind_) {
      case AcceptanceKind::Buchi: return buchi(map_set(set_));
      case AcceptanceKind::CoBuchi: return cobuchi(map_set(set_));
      case AcceptanceKind::Rabin: {
        std::vector<RabinPair> ps;
        ps.reserve(pairs_.size());
        for (const auto& p : pairs_) ps.push_back({map_set(p.alpha), map_set(p.beta)});
        return rabin(std::move(ps));
      }
      case AcceptanceKind::Parity: {
        std::map<int, int> pr;
        for (const auto& [q, v] : priority_)
          if (old_to_new.at(q) >= 0) pr[old_to_new[q]] = v;
        return parity(std::move(pr));
      }
    }
    return {};
  }

  friend bool operator==(const AcceptanceCondition&, const AcceptanceCondition&) = default;

 private:
  static bool intersects(const std::set<int>& a, const std::set<int>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib)
        ++ia;
      else if (*ib < *ia)
        ++ib;
      else
        return true;
    }
    return false;
  }

  AcceptanceKind kind_;
  std::set<int> set_;
  std::vector<RabinPair> pairs_;
  std::map<int, int> priority_;
};

}  // namespace qualomega
