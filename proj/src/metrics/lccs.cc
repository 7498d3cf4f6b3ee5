#include "cgate/metrics/lccs.h"

#include <algorithm>
#include <unordered_map>

namespace cgate::metrics {

namespace {

class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::span<const uint32_t> s) {
    states_.reserve(2 * s.size() + 1);
    states_.push_back({});
    for (uint32_t c : s) Extend(c);
  }

  // Longest substring of the indexed sequence occurring in `t`.
  size_t LongestCommon(std::span<const uint32_t> t) const {
    int v = 0;
    size_t len = 0, best = 0;
    for (uint32_t c : t) {
      while (v != 0 && !states_[v].next.count(c)) {
        v = states_[v].link;
        len = states_[v].len;
      }
      if (auto it = states_[v].next.find(c); it != states_[v].next.end()) {
        v = it->second;
        ++len;
      } else {
        len = 0;
      }
      best = std::max(best, len);
    }
    return best;
  }

 private:
  struct State {
    size_t len = 0;
    int link = -1;
    std::unordered_map<uint32_t, int> next;
  };

  void Extend(uint32_t c) {
    const int cur = static_cast<int>(states_.size());
    states_.push_back({states_[last_].len + 1, -1, {}});
    int p = last_;
    while (p != -1 && !states_[p].next.count(c)) {
      states_[p].next[c] = cur;
      p = states_[p].link;
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      const int q = states_[p].next[c];
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const int clone = static_cast<int>(states_.size());
        State copy = states_[q];
        copy.len = states_[p].len + 1;
        states_.push_back(std::move(copy));
        while (p != -1 && states_[p].next[c] == q) {
          states_[p].next[c] = clone;
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

  std::vector<State> states_;
  int last_ = 0;
};

}  // namespace

size_t Lccs(std::span<const uint32_t> a, std::span<const uint32_t> b) {
  if (a.empty() || b.empty()) return 0;
  return SuffixAutomaton(a).LongestCommon(b);
}

size_t Lccs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::unordered_map<std::string, uint32_t> ids;
  auto intern = [&](const std::vector<std::string>& tokens) {
    std::vector<uint32_t> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) out.push_back(ids.emplace(t, static_cast<uint32_t>(ids.size())).first->second);
    return out;
  };
  const std::vector<uint32_t> ia = intern(a);
  const std::vector<uint32_t> ib = intern(b);
  return Lccs(ia, ib);
}

}  // namespace cgate::metrics
