#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace explab {

namespace detail {

// dst |= src rotated by shift within n bits. Both arrays hold (n+63)/64
// words with the bits above n-1 clear; dst keeps that invariant.
void or_rotated_words(std::uint64_t* dst, const std::uint64_t* src,
                      std::uint32_t n, std::uint32_t shift);

bool words_full(const std::uint64_t* w, std::uint32_t n);

}  // namespace detail

// Largest supported modulus. Membership vectors stay machine-word packed, so
// a single set at the cap costs 128 KiB; everything here is sized for desk
// scale, not cluster scale.
inline constexpr std::uint32_t kMaxModulus = 1u << 20;

// Subset of Z_n as a bit-packed membership vector. Bit i of the word array
// is element i. All operations keep the bits above n-1 zero, which lets
// equality and ordering work directly on the words.
class ResidueSet {
 public:
  explicit ResidueSet(std::uint32_t modulus);

  static ResidueSet full(std::uint32_t modulus);

  std::uint32_t modulus() const { return modulus_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const std::uint64_t> words() const { return words_; }

  bool contains(std::uint32_t r) const {
    return (words_[r >> 6] >> (r & 63)) & 1u;
  }
  void insert(std::uint32_t r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  void erase(std::uint32_t r) { words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }

  std::size_t size() const;
  bool empty() const;
  bool is_full() const;
  std::uint32_t min_element() const;  // pre: not empty
  std::vector<std::uint32_t> elements() const;

  // Membership vector read as an n-bit integer, bit 0 least significant.
  bool value_less(const ResidueSet& other) const;

  bool operator==(const ResidueSet& other) const = default;

  void clear();
  void in_place_union(const ResidueSet& other);
  void in_place_subtract(const ResidueSet& other);

  // dst |= src rotated by shift (element i contributes element (i+shift) mod n).
  static void or_rotated(ResidueSet& dst, const ResidueSet& src, std::uint32_t shift);

 private:
  std::uint32_t modulus_;
  std::vector<std::uint64_t> words_;

  std::uint64_t last_word_mask() const {
    const std::uint32_t rem = modulus_ & 63;
    return rem ? (std::uint64_t{1} << rem) - 1 : ~std::uint64_t{0};
  }
};

// Sorted list of distinct residues plus the modulus; the exchange format for
// results, cache records and the CLI. Construction validates the invariant.
struct GeneratorSpec {
  std::uint32_t modulus = 0;
  std::vector<std::uint32_t> elements;

  GeneratorSpec() = default;
  GeneratorSpec(std::uint32_t n, std::vector<std::uint32_t> elems);

  static GeneratorSpec from_set(const ResidueSet& s);
  ResidueSet to_set() const;

  std::string to_string() const;  // comma separated, e.g. "0,1,12"

  bool operator==(const GeneratorSpec&) const = default;
};

// Reduces arbitrary integers mod n into a set. Throws std::invalid_argument
// for n outside [2, kMaxModulus] or an empty input.
ResidueSet make_set(std::uint32_t n, std::span<const std::int64_t> xs);

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);
ResidueSet k_fold_sumset(const ResidueSet& s, std::uint64_t k);
ResidueSet translate(const ResidueSet& s, std::uint32_t x);
ResidueSet scale(const ResidueSet& s, std::uint32_t u);  // pre: gcd(u, n) = 1

std::uint32_t element_order(std::uint32_t n, std::uint32_t s);

// Primitivity of the circulant with connection set S: translate so the least
// element is 0, then gcd of the elements together with n must be 1.
// A singleton is never primitive for n >= 2.
bool is_primitive(const ResidueSet& s);

// Image of S in Z_m for m | n.
ResidueSet quotient_set(const ResidueSet& s, std::uint32_t m);

}  // namespace explab
