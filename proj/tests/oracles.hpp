#pragma once

// Independent reference computations used to freeze expected values. Nothing
// here calls into the library.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Word = std::vector<int>;

/// Words of length n over {0..k-1} in lexicographic order.
inline std::vector<Word> all_words(std::size_t n, int k = 2) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] == k - 1) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

/// Golden mean words: no two adjacent 1s.
inline bool golden(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == 1 && w[i + 1] == 1) return false;
  }
  return true;
}

/// One-sided even shift prefixes: each 1-run with a 0 on both sides is even.
inline bool even(const Word& w) {
  long last_zero = -1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0) continue;
    if (last_zero >= 0 && (static_cast<long>(i) - last_zero - 1) % 2 != 0) return false;
    last_zero = static_cast<long>(i);
  }
  return true;
}

/// Counts words of length n accepted by a DFA (states 0..m-1, -1 = reject).
inline std::uint64_t dfa_count(const std::vector<std::vector<int>>& delta, int start, std::size_t n) {
  std::vector<std::uint64_t> v(delta.size(), 0);
  v[static_cast<std::size_t>(start)] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::uint64_t> next(delta.size(), 0);
    for (std::size_t q = 0; q < delta.size(); ++q) {
      for (int t : delta[q]) {
        if (t >= 0) next[static_cast<std::size_t>(t)] += v[q];
      }
    }
    v = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto x : v) total += x;
  return total;
}

/// Transfer matrix for the even shift: 0 = no zero seen, 1 = even run after a
/// zero, 2 = odd run after a zero.
inline std::uint64_t even_count(std::size_t n) { return dfa_count({{1, 0}, {1, 2}, {-1, 1}}, 0, n); }

inline std::uint64_t golden_count(std::size_t n) { return dfa_count({{0, 1}, {0, -1}}, 0, n); }

/// Number of words of length n whose every full window translate s + W
/// (offsets into the word) shows an allowed pattern. Transfer matrix over the
/// last d symbols, d = max W.
inline std::uint64_t window_count(std::size_t n, const std::vector<std::size_t>& window,
                                  const std::set<Word>& allowed) {
  std::size_t d = 0;
  for (auto w : window) d = std::max(d, w);
  if (n <= d) return std::uint64_t{1} << n;
  std::map<Word, std::uint64_t> v;
  for (auto& w : all_words(d)) v[w] = 1;
  for (std::size_t len = d; len < n; ++len) {
    std::map<Word, std::uint64_t> next;
    for (const auto& [state, count] : v) {
      for (int c = 0; c < 2; ++c) {
        Word block = state;
        block.push_back(c);
        Word p;
        for (auto w : window) p.push_back(block[w]);
        if (!allowed.contains(p)) continue;
        Word tail(block.begin() + 1, block.end());
        next[tail] += count;
      }
    }
    v = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [s, c] : v) total += c;
  return total;
}

/// Patterns seen at full window translates of the given words.
inline std::set<Word> observed_patterns(const std::vector<Word>& words, const std::vector<std::size_t>& window) {
  std::set<Word> out;
  std::size_t d = 0;
  for (auto w : window) d = std::max(d, w);
  for (const auto& x : words) {
    for (std::size_t s = 0; s + d < x.size(); ++s) {
      Word p;
      for (auto w : window) p.push_back(x[s + w]);
      out.insert(p);
    }
  }
  return out;
}

/// Grigorchuk generators acting on binary strings by their wreath recursion.
inline std::string grigorchuk(char g, const std::string& w) {
  if (w.empty()) return w;
  const char head = w[0];
  const std::string rest = w.substr(1);
  switch (g) {
    case 'a': return std::string(1, head == '0' ? '1' : '0') + rest;
    case 'b': return head == '0' ? "0" + grigorchuk('a', rest) : "1" + grigorchuk('c', rest);
    case 'c': return head == '0' ? "0" + grigorchuk('a', rest) : "1" + grigorchuk('d', rest);
    case 'd': return head == '0' ? "0" + rest : "1" + grigorchuk('b', rest);
    default: return w;
  }
}

/// Orbit of a string under the listed generators (including the string).
inline std::set<std::string> grigorchuk_orbit(const std::string& gens, const std::string& w) {
  std::set<std::string> seen{w};
  std::vector<std::string> todo{w};
  while (!todo.empty()) {
    auto u = todo.back();
    todo.pop_back();
    for (char g : gens) {
      auto v = grigorchuk(g, u);
      if (seen.insert(v).second) todo.push_back(v);
    }
  }
  return seen;
}

/// Multiplication table closure check: does K·S cover every element?
inline bool left_covers(const std::vector<std::vector<std::size_t>>& table, const std::vector<std::size_t>& k) {
  std::set<std::size_t> hit;
  for (auto a : k) {
    for (std::size_t s = 0; s < table.size(); ++s) hit.insert(table[a][s]);
  }
  return hit.size() == table.size();
}

}  // namespace oracle
