#pragma once
// Precision schemes and the quantized value type used throughout the
// scheduler datapath. Integer schemes are modeled bit-faithfully as
// unsigned fixed point with saturating arithmetic; fp16 rounds through
// IEEE binary16; fp32 is the full-precision reference scheme and passes
// values through unchanged.

#include <cstdint>
#include <string>

#include "sos/errors.hpp"

namespace sos {

enum class Scheme : std::uint8_t { int4, int8, mixed, fp16, fp32 };
enum class Field : std::uint8_t { weight, alpha, ept, wspt, cost };

enum class Repr : std::uint8_t { fixedpoint, half, single };

struct FieldFormat {
  Repr repr = Repr::fixedpoint;
  std::uint8_t total_bits = 8;
  std::uint8_t frac_bits = 0;

  std::uint64_t max_raw() const {
    return total_bits >= 64 ? ~0ull : (1ull << total_bits) - 1;
  }
  // Largest representable value; the full-machine sentinel cost.
  double max_value() const;

  bool operator==(const FieldFormat&) const = default;
};

// One quantized scalar. For fixed-point reprs the raw payload is
// authoritative and value() == raw / 2^frac_bits; for the float reprs the
// (already rounded) value is authoritative and raw() must not be called.
class Fixed {
 public:
  Fixed() = default;

  static Fixed from_raw(std::uint64_t raw, FieldFormat fmt);
  static Fixed zero(FieldFormat fmt) { return encode(0.0, fmt); }
  // Nearest representable value: round-half-up for fixed point,
  // IEEE nearest-even for fp16, identity for fp32. Saturates at the
  // field maximum; negative inputs are a caller bug.
  static Fixed encode(double value, FieldFormat fmt);

  double value() const { return value_; }
  std::uint64_t raw() const;
  const FieldFormat& format() const { return fmt_; }

  bool operator==(const Fixed&) const = default;

 private:
  double value_ = 0.0;
  std::uint64_t raw_ = 0;
  FieldFormat fmt_{};
};

// max(a - b, 0); both operands must share a format.
Fixed saturating_sub(const Fixed& a, const Fixed& b);
// min(a + b, format maximum); both operands must share a format.
Fixed saturating_add(const Fixed& a, const Fixed& b);
// Same value re-encoded in a wider field (frac_bits preserved).
Fixed widen(const Fixed& v, std::uint8_t total_bits);

// Bit widths for one precision scheme, per field.
struct NumericFormat {
  Scheme scheme = Scheme::fp32;
  std::uint8_t weight_bits = 32;
  std::uint8_t alpha_bits = 32;
  std::uint8_t ept_bits = 32;
  std::uint8_t wspt_bits = 32;
  std::uint8_t cost_bits = 32;
  // Fractional split of the WSPT ratio (and of the cost/sum_l field, which
  // must stay subtract-compatible with it). Integer schemes only.
  std::uint8_t wspt_frac_bits = 0;
  // Fractional split of alpha; alpha lives in (0, 1], so the default keeps
  // one integer bit and makes both 1.0 and 0.5 exact.
  std::uint8_t alpha_frac_bits = 0;

  static NumericFormat make(Scheme s);

  bool is_float() const {
    return scheme == Scheme::fp16 || scheme == Scheme::fp32;
  }
  FieldFormat field_format(Field f) const;
  // Sentinel cost reported for a machine whose virtual schedule is full.
  Fixed cost_sentinel() const;
};

Fixed quantize(double value, const NumericFormat& fmt, Field field);

// 100 * |quantized - reference| / reference. reference must be > 0.
double relative_error(double quantized, double reference);

// Round a double through IEEE binary16 (nearest-even), back to double.
double round_to_half(double v);

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

}  // namespace sos
