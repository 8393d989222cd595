#include "symdyn/coded.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "symdyn/errors.hpp"

namespace sdyn {

namespace {

std::uint64_t to_u64(const BigInt& z, const char* what) {
  std::int64_t v = 0;
  if (!fits_int64(z, v) || v < 0) throw CapExceeded(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

BigInt floor_plus_one(const Rational& r) { return floor(r) + 1; }

}  // namespace

BigInt coded_t_bound(const CodedLevelStats& st, TInequality which, const std::optional<Rational>& eps) {
  switch (which) {
    case TInequality::Structural: {
      const BigInt den = 2 * st.l - 3 * st.s;
      if (den <= 0) throw std::invalid_argument("2 l(n) - 3 s(n) <= 0: the structural bound cannot be met");
      return floor_plus_one(make_rational(st.tau_len, den));
    }
    case TInequality::Cauchy: {
      if (!eps || *eps <= 0) throw std::invalid_argument("the Cauchy bound needs a positive epsilon");
      const Rational eps_n = *eps * pow2_inverse(static_cast<unsigned>(st.n));
      return floor_plus_one(Rational(st.tau_len + 3 * st.l) / (Rational(st.s) * eps_n));
    }
    case TInequality::MixingRatio: {
      if (st.l <= st.s) throw std::invalid_argument("l(n) <= s(n): the mixing ratio bound cannot be met");
      return ceil(make_rational(st.l, st.l - st.s));
    }
    case TInequality::MixingLength:
      return ceil(make_rational(2 * st.s + 2 * st.l + 3 * st.tau_len, st.l));
  }
  throw std::invalid_argument("unknown inequality");
}

BigInt coded_min_t(const CodedLevelStats& st, TMode mode, const std::optional<Rational>& eps) {
  BigInt t = std::max(BigInt(2), coded_t_bound(st, TInequality::Structural));
  if (mode == TMode::Cauchy || mode == TMode::Both) t = std::max(t, coded_t_bound(st, TInequality::Cauchy, eps));
  if (mode == TMode::Mixing || mode == TMode::Both) {
    t = std::max(t, coded_t_bound(st, TInequality::MixingRatio));
    t = std::max(t, coded_t_bound(st, TInequality::MixingLength));
  }
  return t;
}

const char* to_string(TMode mode) {
  switch (mode) {
    case TMode::Structural: return "structural";
    case TMode::Cauchy: return "cauchy";
    case TMode::Mixing: return "mixing";
    case TMode::Both: return "both";
  }
  return "?";
}

TMode parse_tmode(const std::string& text) {
  if (text == "structural") return TMode::Structural;
  if (text == "cauchy") return TMode::Cauchy;
  if (text == "mixing") return TMode::Mixing;
  if (text == "both") return TMode::Both;
  throw std::invalid_argument("unknown mode '" + text + "' (structural|cauchy|mixing|both)");
}

CodedSystem::CodedSystem(CodedParams params) : params_(std::move(params)) {
  const auto& b1 = params_.b1;
  if (b1.empty()) throw std::invalid_argument("B_1 must be nonempty");
  std::set<Word> seen;
  for (const Word& w : b1) {
    if (w.empty()) throw std::invalid_argument("B_1 words must be nonempty");
    check_word(w, Alphabet(2));
    if (!seen.insert(w).second) throw std::invalid_argument("B_1 lists a word twice");
  }
  for (const Word& a : b1)
    for (const Word& b : b1)
      if (a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin()))
        throw std::invalid_argument("B_1 must be a prefix code");

  CodedLevelStats first;
  first.n = 1;
  first.k = static_cast<unsigned long>(b1.size());
  std::size_t lo = b1[0].size(), hi = b1[0].size(), total = 0;
  for (const Word& w : b1) {
    lo = std::min(lo, w.size());
    hi = std::max(hi, w.size());
    total += w.size();
  }
  first.s = static_cast<unsigned long>(lo);
  first.l = static_cast<unsigned long>(hi);
  first.tau_len = static_cast<unsigned long>(total);
  stats_.push_back(first);

  const std::size_t T = params_.t.empty() ? params_.levels : params_.t.size();
  for (std::size_t n = 1; n <= T; ++n) {
    const CodedLevelStats& st = stats_.back();
    std::uint64_t t = 0;
    if (params_.t.empty()) {
      t = to_u64(coded_min_t(st, params_.mode, params_.epsilon), "t(n)");
    } else {
      t = params_.t[n - 1];
      if (t < 2) throw std::invalid_argument("t(" + std::to_string(n) + ") must be at least 2");
    }
    t_.push_back(t);
    CodedLevelStats next;
    next.n = n + 1;
    const unsigned long tt = static_cast<unsigned long>(t);
    mpz_pow_ui(next.k.get_mpz_t(), st.k.get_mpz_t(), tt);
    next.s = st.s * tt + st.tau_len;
    next.l = st.l * tt + st.tau_len;
    BigInt kpow;
    mpz_pow_ui(kpow.get_mpz_t(), st.k.get_mpz_t(), tt - 1);
    next.tau_len = st.tau_len * kpow * (st.k + tt);
    stats_.push_back(next);
  }
}

const CodedLevelStats& CodedSystem::stats(std::size_t n) const {
  if (n < 1 || n > stats_.size())
    throw std::out_of_range("level " + std::to_string(n) + " outside 1.." + std::to_string(stats_.size()));
  return stats_[n - 1];
}

std::uint64_t CodedSystem::t(std::size_t n) const {
  if (n < 1 || n > t_.size())
    throw std::out_of_range("t(" + std::to_string(n) + ") is not configured; have t(1.." + std::to_string(t_.size()) +
                            ")");
  return t_[n - 1];
}

std::uint64_t CodedSystem::s(std::size_t n) const { return to_u64(stats(n).s, "s(n)"); }
std::uint64_t CodedSystem::l(std::size_t n) const { return to_u64(stats(n).l, "l(n)"); }

bool CodedSystem::enumerable(std::size_t n) const {
  if (n < 1 || n > stats_.size()) return false;
  if (stats(n).k > params_.enumeration_cap) return false;
  if (n == 1) return true;
  return enumerable(n - 1) && has_tau(n - 1) &&
         stats(n).k * stats(n).l <= BigInt(static_cast<unsigned long>(params_.tau_cap));
}

const std::vector<Word>& CodedSystem::words(std::size_t n) const {
  if (auto it = words_.find(n); it != words_.end()) return it->second;
  if (!enumerable(n)) throw CapExceeded("B_" + std::to_string(n) + " is too large to enumerate");
  std::vector<Word> out;
  if (n == 1) {
    out = params_.b1;
  } else {
    const auto& prev = words(n - 1);
    const Word& tp = tau(n - 1);
    const std::uint64_t tn = t(n - 1);
    std::vector<std::size_t> idx(tn, 0);
    while (true) {
      Word w;
      for (std::size_t i : idx) w.insert(w.end(), prev[i].begin(), prev[i].end());
      w.insert(w.end(), tp.begin(), tp.end());
      out.push_back(std::move(w));
      std::size_t pos = tn;
      while (pos > 0 && idx[pos - 1] + 1 == prev.size()) idx[--pos] = 0;
      if (pos == 0) break;
      ++idx[pos - 1];
    }
  }
  return words_.emplace(n, std::move(out)).first->second;
}

bool CodedSystem::has_tau(std::size_t n) const {
  return enumerable(n) && stats(n).tau_len <= BigInt(static_cast<unsigned long>(params_.tau_cap));
}

const Word& CodedSystem::tau(std::size_t n) const {
  if (auto it = tau_.find(n); it != tau_.end()) return it->second;
  if (!has_tau(n)) throw CapExceeded("tau(" + std::to_string(n) + ") is too long to materialize");
  Word out;
  for (const Word& w : words(n)) out.insert(out.end(), w.begin(), w.end());
  return tau_.emplace(n, std::move(out)).first->second;
}

std::vector<std::uint64_t> split_length(std::uint64_t total, std::uint64_t parts, std::uint64_t lo, std::uint64_t hi,
                                        std::mt19937_64* rng) {
  if (parts == 0 || total < parts * lo || total > parts * hi)
    throw std::invalid_argument("cannot split " + std::to_string(total) + " into " + std::to_string(parts) +
                                " parts within [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  std::vector<std::uint64_t> out;
  std::uint64_t rest = total;
  for (std::uint64_t i = 0; i < parts; ++i) {
    const std::uint64_t after = parts - i - 1;
    const std::uint64_t min_here = rest > after * hi ? std::max(lo, rest - after * hi) : lo;
    const std::uint64_t max_here = std::min(hi, rest - after * lo);
    std::uint64_t pick = max_here;
    if (rng) pick = std::uniform_int_distribution<std::uint64_t>(min_here, max_here)(*rng);
    out.push_back(pick);
    rest -= pick;
  }
  return out;
}

Word CodedSystem::word_of_length(std::size_t n, std::uint64_t len, std::mt19937_64* rng) const {
  const CodedLevelStats& st = stats(n);
  if (BigInt(static_cast<unsigned long>(len)) < st.s || BigInt(static_cast<unsigned long>(len)) > st.l)
    throw std::invalid_argument("no member of B_" + std::to_string(n) + " can have length " + std::to_string(len) +
                                "; lengths span [" + to_string(st.s) + ", " + to_string(st.l) + "]");
  if (n == 1) {
    std::vector<const Word*> fits;
    for (const Word& w : params_.b1)
      if (w.size() == len) fits.push_back(&w);
    if (fits.empty()) throw std::invalid_argument("B_1 has no word of length " + std::to_string(len));
    if (!rng) return *fits.front();
    return *fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(*rng)];
  }
  const Word& tp = tau(n - 1);
  const auto parts = split_length(len - tp.size(), t(n - 1), s(n - 1), l(n - 1), rng);
  Word out;
  out.reserve(len);
  for (std::uint64_t p : parts) {
    const Word b = word_of_length(n - 1, p, rng);
    out.insert(out.end(), b.begin(), b.end());
  }
  out.insert(out.end(), tp.begin(), tp.end());
  return out;
}

Word CodedSystem::random_member(std::size_t n, std::mt19937_64& rng) const {
  if (n == 1) return params_.b1[std::uniform_int_distribution<std::size_t>(0, params_.b1.size() - 1)(rng)];
  Word out;
  for (std::uint64_t i = 0; i < t(n - 1); ++i) {
    const Word b = random_member(n - 1, rng);
    out.insert(out.end(), b.begin(), b.end());
  }
  const Word& tp = tau(n - 1);
  out.insert(out.end(), tp.begin(), tp.end());
  return out;
}

namespace {

// Decodes w[pos, end) as exactly `count` members of B_n; the code is a
// prefix code, so at most one candidate length fits at each step.
bool decode_blocks(const CodedSystem& sys, std::size_t n, const Word& w, std::size_t pos, std::size_t end,
                   std::uint64_t count);

bool member_range(const CodedSystem& sys, std::size_t n, const Word& w, std::size_t pos, std::size_t end) {
  const std::size_t len = end - pos;
  const CodedLevelStats& st = sys.stats(n);
  if (BigInt(static_cast<unsigned long>(len)) < st.s || BigInt(static_cast<unsigned long>(len)) > st.l) return false;
  if (n == 1) {
    for (const Word& b : sys.params().b1)
      if (b.size() == len && std::equal(b.begin(), b.end(), w.begin() + std::ptrdiff_t(pos))) return true;
    return false;
  }
  const Word& tp = sys.tau(n - 1);
  if (tp.size() > len || !std::equal(tp.begin(), tp.end(), w.begin() + std::ptrdiff_t(end - tp.size()))) return false;
  return decode_blocks(sys, n - 1, w, pos, end - tp.size(), sys.t(n - 1));
}

bool decode_blocks(const CodedSystem& sys, std::size_t n, const Word& w, std::size_t pos, std::size_t end,
                   std::uint64_t count) {
  const std::uint64_t lo = sys.s(n), hi = sys.l(n);
  for (std::uint64_t i = 0; i < count; ++i) {
    bool found = false;
    for (std::uint64_t len = lo; len <= hi && pos + len <= end; ++len)
      if (member_range(sys, n, w, pos, pos + len)) {
        pos += len;
        found = true;
        break;
      }
    if (!found) return false;
  }
  return pos == end;
}

}  // namespace

bool CodedSystem::is_member(std::size_t n, const Word& w) const { return member_range(*this, n, w, 0, w.size()); }

CodedShadow coded_shadow_next(const CodedSystem& sys, const std::vector<Word>& blocks, std::size_t n) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (!sys.is_member(n, blocks[i]))
      throw std::invalid_argument("block " + std::to_string(i) + " is not in B_" + std::to_string(n));
  const std::uint64_t tn = sys.t(n), lo = sys.s(n), hi = sys.l(n);
  const Word& tp = sys.tau(n);
  std::vector<Word> cur = blocks;
  std::size_t start = 0;
  CodedShadow out;
  while (true) {
    if (cur.size() - start < tn + 3) break;
    Word w;
    for (std::size_t i = 0; i < tn; ++i) w.insert(w.end(), cur[start + i].begin(), cur[start + i].end());
    w.insert(w.end(), tp.begin(), tp.end());
    // j >= t with |b_1..b_j| <= |w| < |b_1..b_{j+1}|.
    std::uint64_t prefix = w.size() - tp.size();
    std::size_t j = tn;
    while (start + j < cur.size() && prefix + cur[start + j].size() <= w.size()) prefix += cur[start + j++].size();
    if (start + j + 3 > cur.size()) break;
    const Word& straddle = cur[start + j];
    const std::size_t a_len = prefix + straddle.size() - w.size();
    const Word a(straddle.end() - std::ptrdiff_t(a_len), straddle.end());
    const std::uint64_t total = a_len + cur[start + j + 1].size() + cur[start + j + 2].size();
    std::uint64_t parts = 0;
    if (total >= 2 * lo && total <= 2 * hi)
      parts = 2;
    else if (total >= 3 * lo && total <= 3 * hi)
      parts = 3;
    else
      throw std::invalid_argument("no two or three B_" + std::to_string(n) + " words have total length " +
                                  std::to_string(total));
    const auto lens = split_length(total, parts, lo, hi);
    const std::size_t first = start + j + 3 - parts;
    for (std::size_t i = 0; i < parts; ++i) cur[first + i] = sys.word_of_length(n, lens[i]);
    start = first;
    out.z_blocks.push_back(std::move(w));
    ++out.rounds;
  }
  if (out.rounds == 0) throw std::invalid_argument("too few blocks for one round of the shadowing step");

  Word y, z;
  for (const Word& b : blocks) y.insert(y.end(), b.begin(), b.end());
  for (const Word& b : out.z_blocks) z.insert(z.end(), b.begin(), b.end());
  if (z.size() > y.size()) throw VerificationFailure("shadow is longer than the input stream");
  out.prefix_length = z.size();
  for (std::size_t i = 0; i < z.size(); ++i) out.mismatches += y[i] != z[i];
  out.density = make_rational(static_cast<long>(out.mismatches), static_cast<long>(out.prefix_length));
  out.bound = Rational(sys.stats(n).tau_len + 3 * sys.stats(n).l) /
              Rational(sys.stats(n).tau_len + sys.stats(n).s * static_cast<unsigned long>(tn));
  if (out.density > out.bound)
    throw VerificationFailure("shadow density " + to_string(out.density) + " exceeds " + to_string(out.bound));
  return out;
}

ShadowCheck verify_coded_shadow(const CodedSystem& sys, const std::vector<Word>& y_blocks,
                                const std::vector<Word>& z_blocks, std::size_t n) {
  ShadowCheck c;
  Word y, z;
  for (const Word& b : y_blocks) y.insert(y.end(), b.begin(), b.end());
  for (std::size_t i = 0; i < z_blocks.size(); ++i) {
    if (!sys.is_member(n + 1, z_blocks[i])) {
      c.reason = "z block " + std::to_string(i) + " is not in B_" + std::to_string(n + 1);
      return c;
    }
    z.insert(z.end(), z_blocks[i].begin(), z_blocks[i].end());
  }
  if (z.empty() || z.size() > y.size()) {
    c.reason = "z prefix length " + std::to_string(z.size()) + " is not covered by y";
    return c;
  }
  std::uint64_t miss = 0;
  for (std::size_t i = 0; i < z.size(); ++i) miss += y[i] != z[i];
  c.density = make_rational(static_cast<long>(miss), static_cast<long>(z.size()));
  const auto& st = sys.stats(n);
  const Rational bound =
      Rational(st.tau_len + 3 * st.l) / Rational(st.tau_len + st.s * static_cast<unsigned long>(sys.t(n)));
  if (c.density > bound) {
    c.reason = "density " + to_string(c.density) + " exceeds " + to_string(bound);
    return c;
  }
  c.ok = true;
  return c;
}

namespace {

Word concat(const std::vector<Word>& parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// k copies of the shortest canonical member, used as free blocks.
Word fillers(const CodedSystem& sys, std::size_t n, std::uint64_t k) {
  const Word f = sys.word_of_length(n, sys.s(n));
  Word out;
  for (std::uint64_t i = 0; i < k; ++i) out.insert(out.end(), f.begin(), f.end());
  return out;
}

Word blocks_of_lengths(const CodedSystem& sys, std::size_t n, const std::vector<std::uint64_t>& lens) {
  Word out;
  for (std::uint64_t len : lens) {
    const Word b = sys.word_of_length(n, len);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

}  // namespace

ConnectResult coded_connect(const CodedSystem& sys, const Word& u, const Word& v, std::uint64_t m, std::size_t n) {
  if (!sys.is_member(n, u) || !sys.is_member(n, v))
    throw std::invalid_argument("u and v must be members of B_" + std::to_string(n));
  const std::uint64_t s = sys.s(n), l = sys.l(n), t = sys.t(n);
  const Word& tp = sys.tau(n);
  if (m < 2 * s) throw std::invalid_argument("m = " + std::to_string(m) + " is below 2 s(n) = " + std::to_string(2 * s));
  ConnectResult r;
  if (t >= 4 && m <= (t - 2) * l) {
    std::uint64_t j = 2;
    while (j <= t - 2 && !(j * s <= m && m <= j * l)) ++j;
    if (j > t - 2) throw std::invalid_argument("no block count covers m = " + std::to_string(m));
    r.case_used = 1;
    r.w = blocks_of_lengths(sys, n, split_length(m, j, s, l));
    r.certificate.level = n + 1;
    r.certificate.words = {concat({u, r.w, v, fillers(sys, n, t - j - 2), tp})};
    r.certificate.offset = 0;
    return r;
  }
  if (m <= (2 * t - 2) * l + tp.size()) {
    if (m < tp.size() + 2 * s) throw std::invalid_argument("m = " + std::to_string(m) + " is too short for case 2");
    const std::uint64_t rest = m - tp.size();
    std::uint64_t J = 2;
    while (J <= 2 * t - 2 && !(J * s <= rest && rest <= J * l)) ++J;
    if (J > 2 * t - 2) throw std::invalid_argument("no block count covers m = " + std::to_string(m));
    const std::uint64_t j = std::min<std::uint64_t>(t - 1, J - 1), k = J - j;
    const auto lens = split_length(rest, J, s, l);
    const std::vector<std::uint64_t> left(lens.begin(), lens.begin() + std::ptrdiff_t(j));
    const std::vector<std::uint64_t> right(lens.begin() + std::ptrdiff_t(j), lens.end());
    const Word bj = blocks_of_lengths(sys, n, left), bk = blocks_of_lengths(sys, n, right);
    r.case_used = 2;
    r.w = concat({bj, tp, bk});
    const Word pad = fillers(sys, n, t - 1 - j);
    r.certificate.level = n + 1;
    r.certificate.words = {concat({pad, u, bj, tp}), concat({bk, v, fillers(sys, n, t - k - 1), tp})};
    r.certificate.offset = pad.size();
    return r;
  }
  // m > (2t - 2) l + |tau|: lift u and v to B_{n+1} and recurse on m - |tau(n)|.
  const Word pad = fillers(sys, n, t - 1);
  const Word u2 = concat({pad, u, tp});
  const Word v2 = concat({v, pad, tp});
  const std::uint64_t m2 = m - tp.size();
  if (m2 < 2 * sys.s(n + 1))
    throw std::invalid_argument("m - |tau(n)| = " + std::to_string(m2) + " is below 2 s(n+1); t(n) is too small");
  const ConnectResult inner = coded_connect(sys, u2, v2, m2, n + 1);
  r.case_used = 3;
  r.recursion_depth = inner.recursion_depth + 1;
  r.w = concat({tp, inner.w});
  r.certificate = inner.certificate;
  r.certificate.offset += pad.size();
  return r;
}

bool verify_connect(const CodedSystem& sys, const Word& u, const Word& v, std::uint64_t m, const ConnectResult& r) {
  if (r.w.size() != m) return false;
  for (const Word& c : r.certificate.words)
    if (!sys.is_member(r.certificate.level, c)) return false;
  const Word joined = concat(r.certificate.words);
  const Word target = concat({u, r.w, v});
  if (r.certificate.offset + target.size() > joined.size()) return false;
  if (!std::equal(target.begin(), target.end(), joined.begin() + std::ptrdiff_t(r.certificate.offset))) return false;
  return std::search(joined.begin(), joined.end(), target.begin(), target.end()) != joined.end();
}

namespace {

bool contains(const Word& hay, const Word& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

MinimalityWitness coded_minimality_witness(const CodedSystem& sys, std::size_t n, const Word& u,
                                           std::uint64_t samples, std::uint64_t seed) {
  const auto& bn = sys.words(n);
  bool factor = false;
  for (const Word& a : bn) {
    for (const Word& b : bn)
      if (contains(concat({a, b}), u)) {
        factor = true;
        break;
      }
    if (factor) break;
  }
  if (!factor)
    throw std::invalid_argument("u is not a factor of a concatenation of two B_" + std::to_string(n) + " words");
  MinimalityWitness out;
  out.holds = true;
  auto check = [&](const Word& w) {
    ++out.checked;
    if (!contains(w, u)) {
      out.holds = false;
      out.counterexample = w;
    }
    return out.holds;
  };
  if (sys.enumerable(n + 2)) {
    out.exhaustive = true;
    for (const Word& w : sys.words(n + 2))
      if (!check(w)) break;
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i)
      if (!check(sys.random_member(n + 2, rng))) break;
  }
  return out;
}

nlohmann::ordered_json to_json(const CodedLevelStats& st) {
  nlohmann::ordered_json j;
  j["n"] = st.n;
  j["k"] = to_string(st.k);
  j["s"] = to_string(st.s);
  j["l"] = to_string(st.l);
  j["tau_len"] = to_string(st.tau_len);
  return j;
}

nlohmann::ordered_json to_json(const CodedShadow& s) {
  nlohmann::ordered_json j;
  j["rounds"] = s.rounds;
  j["z_blocks"] = s.z_blocks.size();
  j["prefix_length"] = s.prefix_length;
  j["mismatches"] = s.mismatches;
  j["density"] = to_string(s.density);
  j["bound"] = to_string(s.bound);
  j["within_bound"] = s.density <= s.bound;
  return j;
}

nlohmann::ordered_json to_json(const ConnectResult& r, const Alphabet& alphabet) {
  nlohmann::ordered_json j;
  j["m"] = r.w.size();
  j["case"] = r.case_used;
  j["recursion_depth"] = r.recursion_depth;
  j["w"] = format_word(r.w, alphabet);
  nlohmann::ordered_json cert;
  cert["level"] = r.certificate.level;
  cert["offset"] = r.certificate.offset;
  auto words = nlohmann::ordered_json::array();
  for (const Word& w : r.certificate.words) words.push_back(format_word(w, alphabet));
  cert["words"] = std::move(words);
  j["certificate"] = std::move(cert);
  return j;
}

}  // namespace sdyn
