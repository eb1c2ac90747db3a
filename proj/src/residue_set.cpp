#include "explab/residue_set.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace explab {

namespace {

void check_modulus(std::uint32_t n) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument("modulus must be in [2, 2^20], got " +
                                std::to_string(n));
}

}  // namespace

namespace detail {

void or_rotated_words(std::uint64_t* dst, const std::uint64_t* src,
                      std::uint32_t n, std::uint32_t shift) {
  const std::uint32_t k = shift % n;
  const std::size_t nw = (n + 63) / 64;
  if (k == 0) {
    for (std::size_t i = 0; i < nw; ++i) dst[i] |= src[i];
    return;
  }
  // Low part: bits [0, n-k) of src land at [k, n).
  {
    const std::size_t ws = k >> 6;
    const std::uint32_t bs = k & 63;
    for (std::size_t i = 0; i < nw; ++i) {
      const std::uint64_t v = src[i];
      if (!v) continue;
      const std::size_t j = i + ws;
      if (j < nw) dst[j] |= v << bs;
      if (bs && j + 1 < nw) dst[j + 1] |= v >> (64 - bs);
    }
  }
  // Wrap part: bits [n-k, n) of src land at [0, k).
  {
    const std::uint32_t m = n - k;
    const std::size_t ws = m >> 6;
    const std::uint32_t bs = m & 63;
    const std::size_t kw = (static_cast<std::size_t>(k) + 63) / 64;
    for (std::size_t i = 0; i < kw; ++i) {
      std::uint64_t v = src[i + ws] >> bs;
      if (bs && i + ws + 1 < nw) v |= src[i + ws + 1] << (64 - bs);
      dst[i] |= v;
    }
  }
  const std::uint32_t tail = n & 63;
  if (tail) dst[nw - 1] &= (~std::uint64_t{0}) >> (64 - tail);
}

bool words_full(const std::uint64_t* w, std::uint32_t n) {
  const std::size_t nw = (n + 63) / 64;
  for (std::size_t i = 0; i + 1 < nw; ++i)
    if (w[i] != ~std::uint64_t{0}) return false;
  const std::uint32_t tail = n & 63;
  const std::uint64_t mask =
      tail ? (~std::uint64_t{0}) >> (64 - tail) : ~std::uint64_t{0};
  return w[nw - 1] == mask;
}

}  // namespace detail

ResidueSet::ResidueSet(std::uint32_t modulus) : modulus_(modulus) {
  check_modulus(modulus);
  words_.assign((modulus + 63) / 64, 0);
}

ResidueSet ResidueSet::full(std::uint32_t modulus) {
  ResidueSet s(modulus);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.words_.back() &= s.last_word_mask();
  return s;
}

std::size_t ResidueSet::size() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ResidueSet::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool ResidueSet::is_full() const {
  for (std::size_t i = 0; i + 1 < words_.size(); ++i)
    if (words_[i] != ~std::uint64_t{0}) return false;
  return words_.back() == last_word_mask();
}

std::uint32_t ResidueSet::min_element() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i])
      return static_cast<std::uint32_t>(i * 64 + std::countr_zero(words_[i]));
  throw std::logic_error("min_element of empty set");
}

std::vector<std::uint32_t> ResidueSet::elements() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

bool ResidueSet::value_less(const ResidueSet& other) const {
  if (modulus_ != other.modulus_)
    throw std::invalid_argument("value_less across different moduli");
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
  }
  return false;
}

void ResidueSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

void ResidueSet::in_place_union(const ResidueSet& other) {
  if (modulus_ != other.modulus_)
    throw std::invalid_argument("union across different moduli");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

void ResidueSet::in_place_subtract(const ResidueSet& other) {
  if (modulus_ != other.modulus_)
    throw std::invalid_argument("subtract across different moduli");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
}

void ResidueSet::or_rotated(ResidueSet& dst, const ResidueSet& src,
                            std::uint32_t shift) {
  if (dst.modulus_ != src.modulus_)
    throw std::invalid_argument("or_rotated across different moduli");
  detail::or_rotated_words(dst.words_.data(), src.words_.data(), src.modulus_,
                           shift);
}

GeneratorSpec::GeneratorSpec(std::uint32_t n, std::vector<std::uint32_t> elems)
    : modulus(n), elements(std::move(elems)) {
  check_modulus(n);
  if (elements.empty())
    throw std::invalid_argument("generator spec must be nonempty");
  if (!std::is_sorted(elements.begin(), elements.end()) ||
      std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw std::invalid_argument("generator spec elements must be sorted and distinct");
  if (elements.back() >= n)
    throw std::invalid_argument("generator spec element out of range");
}

GeneratorSpec GeneratorSpec::from_set(const ResidueSet& s) {
  return GeneratorSpec(s.modulus(), s.elements());
}

ResidueSet GeneratorSpec::to_set() const {
  ResidueSet s(modulus);
  for (auto e : elements) s.insert(e);
  return s;
}

std::string GeneratorSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) os << ',';
    os << elements[i];
  }
  return os.str();
}

ResidueSet make_set(std::uint32_t n, std::span<const std::int64_t> xs) {
  check_modulus(n);
  if (xs.empty()) throw std::invalid_argument("make_set: empty input");
  ResidueSet s(n);
  const std::int64_t m = static_cast<std::int64_t>(n);
  for (auto x : xs) {
    std::int64_t r = x % m;
    if (r < 0) r += m;
    s.insert(static_cast<std::uint32_t>(r));
  }
  return s;
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("sumset of sets with different moduli");
  // Iterate the smaller operand's elements, OR rotated copies of the other.
  const ResidueSet& small = a.size() <= b.size() ? a : b;
  const ResidueSet& big = a.size() <= b.size() ? b : a;
  ResidueSet out(a.modulus());
  for (auto s : small.elements()) ResidueSet::or_rotated(out, big, s);
  return out;
}

ResidueSet k_fold_sumset(const ResidueSet& s, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("k_fold_sumset: k must be >= 1");
  if (s.empty()) throw std::invalid_argument("k_fold_sumset: empty set");
  const std::uint32_t n = s.modulus();
  // Work with the translate containing 0, so the iterates grow monotonically
  // and stabilize; shift back by k*min at the end. Early exit once full or
  // stable, which bounds the loop by n even for huge k.
  const std::uint32_t m = s.min_element();
  const ResidueSet base = translate(s, n - m);
  const auto elems = base.elements();
  ResidueSet cur = base;
  std::uint64_t done = 1;
  while (done < k && !cur.is_full()) {
    ResidueSet next = cur;
    for (auto e : elems) ResidueSet::or_rotated(next, cur, e);
    if (next == cur) break;  // stable from here on
    cur = std::move(next);
    ++done;
  }
  const std::uint32_t back =
      static_cast<std::uint32_t>((static_cast<std::uint64_t>(m) % n) * (k % n) % n);
  return translate(cur, back);
}

ResidueSet translate(const ResidueSet& s, std::uint32_t x) {
  ResidueSet out(s.modulus());
  ResidueSet::or_rotated(out, s, x % s.modulus());
  return out;
}

ResidueSet scale(const ResidueSet& s, std::uint32_t u) {
  const std::uint32_t n = s.modulus();
  const std::uint32_t r = u % n;
  if (std::gcd(r, n) != 1)
    throw std::invalid_argument("scale: " + std::to_string(u) +
                                " is not a unit mod " + std::to_string(n));
  ResidueSet out(n);
  for (auto e : s.elements())
    out.insert(static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(e) * r % n));
  return out;
}

std::uint32_t element_order(std::uint32_t n, std::uint32_t s) {
  check_modulus(n);
  if (s >= n) throw std::invalid_argument("element_order: residue out of range");
  return n / std::gcd(n, s);
}

bool is_primitive(const ResidueSet& s) {
  if (s.empty()) throw std::invalid_argument("is_primitive: empty set");
  const std::uint32_t n = s.modulus();
  const std::uint32_t m = s.min_element();
  std::uint32_t g = n;
  for (auto e : s.elements()) {
    g = std::gcd(g, e - m);  // e >= m, no wrap
    if (g == 1) return true;
  }
  return g == 1;
}

ResidueSet quotient_set(const ResidueSet& s, std::uint32_t m) {
  const std::uint32_t n = s.modulus();
  if (m < 2 || n % m != 0)
    throw std::invalid_argument("quotient_set: " + std::to_string(m) +
                                " does not divide " + std::to_string(n));
  ResidueSet out(m);
  for (auto e : s.elements()) out.insert(e % m);
  return out;
}

}  // namespace explab
