#include "symdyn/words.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "symdyn/block_distribution.hpp"

namespace sdyn {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 2 || size > 256)
    throw std::invalid_argument("alphabet size must be in [2,256], got " + std::to_string(size));
}

void check_word(const Word& w, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!alphabet.contains(w[i]))
      throw std::invalid_argument("symbol " + std::to_string(w[i]) + " at position " +
                                  std::to_string(i) + " is outside the alphabet");
  }
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  std::string out;
  if (alphabet.size() <= 10) {
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(const std::string& text, const Alphabet& alphabet) {
  Word w;
  if (alphabet.size() <= 10) {
    w.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad symbol '" + std::string(1, c) + "' in word");
      w.push_back(static_cast<Symbol>(c - '0'));
    }
  } else if (!text.empty()) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int v = -1;
      try {
        v = std::stoi(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || v < 0 || v > 255)
        throw std::invalid_argument("bad symbol '" + item + "' in word");
      w.push_back(static_cast<Symbol>(v));
    }
  }
  check_word(w, alphabet);
  return w;
}

std::size_t hamming_count(const Word& u, const Word& w) {
  if (u.size() != w.size())
    throw std::invalid_argument("hamming distance of words of different lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != w[i]);
  return d;
}

Rational hamming_normalized(const Word& u, const Word& w) {
  if (u.empty() && w.empty()) throw std::invalid_argument("hamming distance of empty words");
  const std::size_t d = hamming_count(u, w);
  return make_rational(static_cast<long>(d), static_cast<long>(u.size()));
}

std::size_t occurrence_count(const Word& w, const Word& b) {
  if (w.size() > b.size()) return 0;
  if (w.empty()) return b.size() + 1;
  std::size_t count = 0;
  auto it = b.begin();
  while (true) {
    it = std::search(it, b.end(), w.begin(), w.end());
    if (it == b.end()) break;
    ++count;
    ++it;
  }
  return count;
}

Rational freq(const Word& w, const Word& b) {
  if (w.size() > b.size() || b.empty()) return 0;
  if (w.empty()) return 1;
  return make_rational(static_cast<long>(occurrence_count(w, b)), static_cast<long>(b.size()));
}

namespace {

std::size_t primitive_period_length(const Word& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = (v[i] == v[i - p]);
    if (ok) return p;
  }
  return n;
}

}  // namespace

UPPoint::UPPoint(Word preperiod, Word period) : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("ultimately periodic point needs a nonempty period");
  period_.resize(primitive_period_length(period_));
  // Fold the tail of the preperiod into the period while they agree.
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

Symbol UPPoint::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

Word UPPoint::prefix(std::size_t n) const {
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

UPPoint UPPoint::shifted() const {
  if (!preperiod_.empty()) return UPPoint(Word(preperiod_.begin() + 1, preperiod_.end()), period_);
  Word rotated(period_.begin() + 1, period_.end());
  rotated.push_back(period_.front());
  return UPPoint({}, std::move(rotated));
}

std::string format_point(const UPPoint& x, const Alphabet& alphabet) {
  return format_word(x.preperiod(), alphabet) + "|" + format_word(x.period(), alphabet);
}

UPPoint parse_point(const std::string& text, const Alphabet& alphabet) {
  const auto bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos)
    throw std::invalid_argument("point must have the form preperiod|period: '" + text + "'");
  return UPPoint(parse_word(text.substr(0, bar), alphabet), parse_word(text.substr(bar + 1), alphabet));
}

Rational dbar_up(const UPPoint& x, const UPPoint& y) {
  const std::size_t start = std::max(x.preperiod().size(), y.preperiod().size());
  const std::size_t window = std::lcm(x.period().size(), y.period().size());
  std::size_t mismatches = 0;
  for (std::size_t j = 0; j < window; ++j) mismatches += (x.at(start + j) != y.at(start + j));
  return make_rational(static_cast<long>(mismatches), static_cast<long>(window));
}

DStarValue dstar_block(const Word& b, const BlockDistribution& mu, int max_level) {
  if (max_level < 1) throw std::invalid_argument("dstar_block needs K >= 1");
  if (max_level > mu.level())
    throw std::invalid_argument("dstar_block: K = " + std::to_string(max_level) +
                                " exceeds the distribution level " + std::to_string(mu.level()));
  Rational total = 0;
  for (int k = 1; k <= max_level; ++k) {
    // Only words occurring in b or charged by mu contribute.
    std::set<Word> support;
    if (static_cast<std::size_t>(k) <= b.size())
      for (std::size_t i = 0; i + k <= b.size(); ++i) support.emplace(b.begin() + i, b.begin() + i + k);
    for (const auto& [w, p] : mu.probabilities()) support.emplace(w.begin(), w.begin() + k);
    Rational inner = 0;
    for (const Word& w : support) inner += abs(freq(w, b) - mu[w]);
    total += pow2_inverse(static_cast<unsigned>(k)) * inner;
  }
  return {total, pow2_inverse(static_cast<unsigned>(max_level - 1))};
}

}  // namespace sdyn
