#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pgkit {

// Largest field order the library will tabulate.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 20;

/// Parameters of GF(p^k): characteristic, extension degree and the monic
/// primitive polynomial used to build it. Coefficients are stored lowest
/// degree first, so prim_poly.size() == k + 1 and prim_poly.back() == 1.
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::vector<std::uint32_t> prim_poly;

  std::uint32_t order() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// An element of a GaloisField. `code` packs the polynomial-basis
/// coefficients in base p (coefficient of x^t is digit t). Zero is code 0
/// and one is code 1 in every field.
struct FieldElement {
  std::uint32_t code = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

bool is_prime(std::uint64_t n);

/// Returns (p, k) when q = p^k for a prime p, nothing otherwise.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// True when `poly` (monic, lowest degree first) is primitive over Z_p.
bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> poly);

/// GF(p^k) with dual representation: packed coefficients for addition and
/// discrete-log tables (relative to the root of the primitive polynomial)
/// for multiplication. Immutable after construction.
class GaloisField {
 public:
  /// Builds GF(p^k) from the built-in polynomial table or, failing that, a
  /// lexicographic search verified for primitivity.
  static GaloisField make(std::uint32_t p, std::uint32_t k);

  /// Builds GF(p^k) from an explicit polynomial; throws if it is not
  /// primitive.
  static GaloisField with_polynomial(std::uint32_t p, std::vector<std::uint32_t> poly);

  static FieldSpec default_spec(std::uint32_t p, std::uint32_t k);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t characteristic() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.k; }
  std::uint32_t order() const { return order_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  /// alpha^e for the generator alpha; e is reduced mod (order - 1).
  FieldElement generator_power(std::int64_t e) const;

  /// Discrete log; empty for zero.
  std::optional<std::uint32_t> log(FieldElement a) const;

  std::vector<std::uint32_t> coeffs(FieldElement a) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;

  /// [0, alpha^0, alpha^1, ..., alpha^(s-2)]
  std::vector<FieldElement> elements() const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::int64_t e) const;
  FieldElement frobenius(FieldElement a) const;

  bool contains(FieldElement a) const { return a.code < order_; }

 private:
  GaloisField(FieldSpec spec, std::vector<std::uint32_t> exp_table);

  FieldSpec spec_;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> exp_;  // exp_[e] = code of alpha^e
  std::vector<std::uint32_t> log_;  // log_[code]; log_[0] unused
};

}  // namespace pgkit
