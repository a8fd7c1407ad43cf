#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "selbal/arith.hpp"
#include "selbal/params.hpp"

namespace selbal {

struct Entry {
  std::int64_t index = 0;
  std::int64_t numerator = 0;

  bool operator==(const Entry&) const = default;
};

// A vector of R^n whose components are numerator / p^k. Entries are kept
// sorted by index with no zero numerators.
class ScaledVector {
 public:
  ScaledVector() = default;
  // Duplicate indices are summed; zeros are dropped.
  ScaledVector(std::int64_t dimension, std::int64_t base, int exponent, std::vector<Entry> entries);

  static ScaledVector zero(std::int64_t dimension, std::int64_t base, int exponent) {
    return ScaledVector(dimension, base, exponent, {});
  }

  std::int64_t dimension() const noexcept { return dimension_; }
  std::int64_t base() const noexcept { return base_; }
  int exponent() const noexcept { return exponent_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }

  std::int64_t numerator_at(std::int64_t index) const;

  // Same vector at scale p^new_exponent, new_exponent >= exponent().
  ScaledVector rescaled(int new_exponent) const;

  ScaledVector operator-() const;

  bool operator==(const ScaledVector&) const = default;

 private:
  std::int64_t dimension_ = 0;
  std::int64_t base_ = 2;
  int exponent_ = 0;
  std::vector<Entry> entries_;
};

// Sum at a common scale (the larger exponent). Throws ContractViolation on
// dimension or base mismatch.
ScaledVector operator+(const ScaledVector& a, const ScaledVector& b);

// Σ numerator², i.e. ‖v‖² · p^{2k}. Throws ArithmeticOverflow past 128 bits.
Int128 norm_sq_scaled(const ScaledVector& v);

class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<std::int8_t> coefficients);

  static SignVector zeros(std::size_t m) { return SignVector(std::vector<std::int8_t>(m, 0)); }
  static SignVector unit(std::size_t m, std::size_t i, std::int8_t sign = 1);

  std::size_t size() const noexcept { return coeffs_.size(); }
  std::int8_t operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const std::int8_t> coefficients() const noexcept { return coeffs_; }

  bool nontrivial() const noexcept;
  std::size_t support_size() const noexcept;
  SignVector negated() const;
  // Multiplied by -1 if needed so that the first nonzero coefficient is +1.
  SignVector canonical() const;

  // Lexicographic with -1 < 0 < +1.
  auto operator<=>(const SignVector&) const = default;
  bool operator==(const SignVector&) const = default;

 private:
  std::vector<std::int8_t> coeffs_;
};

// An ordered family of exact unit vectors sharing one (n, p, k).
class UnitVectorFamily {
 public:
  UnitVectorFamily() = default;
  // Vectors are rescaled to the largest exponent. Throws ContractViolation if
  // dimensions or bases differ or a vector is not exactly unit norm.
  UnitVectorFamily(std::int64_t dimension, std::int64_t base, std::vector<ScaledVector> vectors,
                   std::optional<ConstructionParams> provenance = std::nullopt);

  std::int64_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  std::int64_t base() const noexcept { return base_; }
  int exponent() const noexcept { return exponent_; }
  // p^{2k}: the scaled squared norm of a unit vector.
  Int128 scale_sq() const noexcept { return scale_sq_; }

  const std::vector<ScaledVector>& vectors() const noexcept { return vectors_; }
  const ScaledVector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::optional<ConstructionParams>& provenance() const noexcept { return provenance_; }

 private:
  std::int64_t dimension_ = 0;
  std::int64_t base_ = 2;
  int exponent_ = 0;
  Int128 scale_sq_ = 1;
  std::vector<ScaledVector> vectors_;
  std::optional<ConstructionParams> provenance_;
};

// Floating-point unit vectors for inputs that are not p-adic rationals.
// Only the solver engines accept these, always with an explicit tolerance.
struct RealEntry {
  std::int64_t index = 0;
  double value = 0.0;

  bool operator==(const RealEntry&) const = default;
};

class RealFamily {
 public:
  RealFamily() = default;
  // Each vector must have |‖u‖² - 1| <= unit_tolerance.
  RealFamily(std::int64_t dimension, std::vector<std::vector<RealEntry>> vectors,
             double unit_tolerance = 1e-9);

  std::int64_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<std::vector<RealEntry>>& vectors() const noexcept { return vectors_; }
  const std::vector<RealEntry>& operator[](std::size_t i) const { return vectors_[i]; }

 private:
  std::int64_t dimension_ = 0;
  std::vector<std::vector<RealEntry>> vectors_;
};

RealFamily to_real(const UnitVectorFamily& family);

// v = Σ eps_i u_i at the family's scale. Throws ContractViolation on length mismatch.
ScaledVector combine(const UnitVectorFamily& family, const SignVector& eps);

// eps non-trivial and ‖Σ eps_i u_i‖ < 1, decided in exact integers.
bool is_balancing_witness(const UnitVectorFamily& family, const SignVector& eps);

// Little-endian mixed radix: Σ (x_j - 1) L^j for x in [1, L]^d.
std::int64_t coordinate_index(std::span<const std::int64_t> x, std::int64_t L);
// Inverse of coordinate_index.
Point lattice_point(std::int64_t index, std::int64_t L, int d);

}  // namespace selbal
