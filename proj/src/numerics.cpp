#include "sos/numerics.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace sos {

namespace {

constexpr double kHalfMax = 65504.0;

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

double FieldFormat::max_value() const {
  switch (repr) {
    case Repr::fixedpoint:
      return static_cast<double>(max_raw()) / pow2(frac_bits);
    case Repr::half:
      return kHalfMax;
    case Repr::single:
      return std::numeric_limits<double>::max();
  }
  return 0.0;
}

double round_to_half(double v) {
  // double -> float (nearest) -> binary16 (nearest-even) -> double.
  const float f = static_cast<float>(v);
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(f);
  const std::uint32_t sign = bits >> 31;
  const std::int32_t exp = static_cast<std::int32_t>((bits >> 23) & 0xff) - 127;
  const std::uint32_t mant = bits & 0x7fffffu;

  if (exp == 128) {  // inf or nan propagates
    return static_cast<double>(f);
  }

  std::uint16_t h;
  if (exp > 15) {
    h = static_cast<std::uint16_t>((sign << 15) | 0x7c00);  // overflow -> inf
  } else if (exp >= -14) {
    // Normal half: keep 10 mantissa bits, round to nearest even on bit 13.
    std::uint32_t keep = mant >> 13;
    const std::uint32_t rem = mant & 0x1fffu;
    if (rem > 0x1000u || (rem == 0x1000u && (keep & 1u))) ++keep;
    std::uint32_t e = static_cast<std::uint32_t>(exp + 15);
    if (keep == 0x400u) {  // mantissa carry
      keep = 0;
      ++e;
    }
    if (e >= 31) {
      h = static_cast<std::uint16_t>((sign << 15) | 0x7c00);
    } else {
      h = static_cast<std::uint16_t>((sign << 15) | (e << 10) | keep);
    }
  } else if (exp >= -24) {
    // Subnormal half.
    const std::uint32_t m = mant | 0x800000u;
    const int shift = -exp - 14 + 13;
    std::uint32_t rounded = m >> shift;
    const std::uint32_t rem = m & ((1u << shift) - 1);
    const std::uint32_t halfway = 1u << (shift - 1);
    if (rem > halfway || (rem == halfway && (rounded & 1u))) ++rounded;
    h = static_cast<std::uint16_t>((sign << 15) | rounded);
  } else {
    h = static_cast<std::uint16_t>(sign << 15);  // underflow to zero
  }

  // Expand back to double.
  const std::uint32_t hs = h >> 15;
  const std::uint32_t he = (h >> 10) & 0x1f;
  const std::uint32_t hm = h & 0x3ff;
  double out;
  if (he == 0) {
    out = static_cast<double>(hm) * pow2(-24);
  } else if (he == 31) {
    out = hm ? std::numeric_limits<double>::quiet_NaN()
             : std::numeric_limits<double>::infinity();
  } else {
    out = (1.0 + static_cast<double>(hm) * pow2(-10)) *
          pow2(static_cast<int>(he) - 15);
  }
  return hs ? -out : out;
}

Fixed Fixed::from_raw(std::uint64_t raw, FieldFormat fmt) {
  if (fmt.repr != Repr::fixedpoint) {
    throw InvariantError("Fixed::from_raw: raw payloads are fixed-point only");
  }
  if (raw > fmt.max_raw()) {
    throw InvariantError("Fixed::from_raw: raw exceeds field width");
  }
  Fixed out;
  out.fmt_ = fmt;
  out.raw_ = raw;
  out.value_ = static_cast<double>(raw) / pow2(fmt.frac_bits);
  return out;
}

Fixed Fixed::encode(double value, FieldFormat fmt) {
  if (!(value >= 0.0)) {
    throw InvariantError("Fixed::encode: negative or NaN input");
  }
  Fixed out;
  out.fmt_ = fmt;
  switch (fmt.repr) {
    case Repr::fixedpoint: {
      const double scaled = std::floor(value * pow2(fmt.frac_bits) + 0.5);
      const double cap = static_cast<double>(fmt.max_raw());
      out.raw_ = static_cast<std::uint64_t>(scaled < cap ? scaled : cap);
      out.value_ = static_cast<double>(out.raw_) / pow2(fmt.frac_bits);
      break;
    }
    case Repr::half: {
      double v = round_to_half(value);
      if (v > kHalfMax) v = kHalfMax;  // saturate instead of inf
      out.value_ = v;
      break;
    }
    case Repr::single:
      out.value_ = value;  // reference scheme: identity
      break;
  }
  return out;
}

std::uint64_t Fixed::raw() const {
  if (fmt_.repr != Repr::fixedpoint) {
    throw InvariantError("Fixed::raw: no raw payload for float reprs");
  }
  return raw_;
}

namespace {

void require_same_format(const Fixed& a, const Fixed& b, const char* op) {
  if (!(a.format() == b.format())) {
    throw InvariantError(std::string(op) + ": format mismatch");
  }
}

}  // namespace

Fixed saturating_sub(const Fixed& a, const Fixed& b) {
  require_same_format(a, b, "saturating_sub");
  const FieldFormat& fmt = a.format();
  if (fmt.repr == Repr::fixedpoint) {
    const std::uint64_t ar = a.raw(), br = b.raw();
    return Fixed::from_raw(ar > br ? ar - br : 0, fmt);
  }
  const double d = a.value() - b.value();
  return Fixed::encode(d > 0.0 ? d : 0.0, fmt);
}

Fixed saturating_add(const Fixed& a, const Fixed& b) {
  require_same_format(a, b, "saturating_add");
  const FieldFormat& fmt = a.format();
  if (fmt.repr == Repr::fixedpoint) {
    const std::uint64_t sum = a.raw() + b.raw();  // widths <= 32 bits: no wrap
    return Fixed::from_raw(sum > fmt.max_raw() ? fmt.max_raw() : sum, fmt);
  }
  return Fixed::encode(a.value() + b.value(), fmt);
}

Fixed widen(const Fixed& v, std::uint8_t total_bits) {
  FieldFormat fmt = v.format();
  if (fmt.repr != Repr::fixedpoint) return v;
  if (total_bits < fmt.total_bits) {
    throw InvariantError("widen: target narrower than source");
  }
  fmt.total_bits = total_bits;
  return Fixed::from_raw(v.raw(), fmt);
}

NumericFormat NumericFormat::make(Scheme s) {
  NumericFormat f;
  f.scheme = s;
  switch (s) {
    case Scheme::int4:
      f.weight_bits = f.alpha_bits = f.ept_bits = f.wspt_bits = 4;
      f.cost_bits = 8;
      f.wspt_frac_bits = 2;  // UQ2.2
      f.alpha_frac_bits = 3;  // UQ1.3
      break;
    case Scheme::int8:
      f.weight_bits = f.alpha_bits = f.ept_bits = f.wspt_bits = 8;
      f.cost_bits = 16;
      f.wspt_frac_bits = 3;  // UQ5.3
      f.alpha_frac_bits = 7;  // UQ1.7
      break;
    case Scheme::mixed:
      f.weight_bits = f.alpha_bits = 4;
      f.ept_bits = f.wspt_bits = 8;
      f.cost_bits = 16;
      f.wspt_frac_bits = 3;
      f.alpha_frac_bits = 3;
      break;
    case Scheme::fp16:
      f.weight_bits = f.alpha_bits = f.ept_bits = f.wspt_bits = f.cost_bits = 16;
      f.wspt_frac_bits = 0;
      f.alpha_frac_bits = 0;
      break;
    case Scheme::fp32:
      f.weight_bits = f.alpha_bits = f.ept_bits = f.wspt_bits = f.cost_bits = 32;
      f.wspt_frac_bits = 0;
      f.alpha_frac_bits = 0;
      break;
  }
  return f;
}

FieldFormat NumericFormat::field_format(Field f) const {
  FieldFormat ff;
  ff.repr = scheme == Scheme::fp16   ? Repr::half
            : scheme == Scheme::fp32 ? Repr::single
                                     : Repr::fixedpoint;
  switch (f) {
    case Field::weight:
      ff.total_bits = weight_bits;
      ff.frac_bits = 0;
      break;
    case Field::alpha:
      ff.total_bits = alpha_bits;
      ff.frac_bits = is_float() ? 0 : alpha_frac_bits;
      break;
    case Field::ept:
      ff.total_bits = ept_bits;
      ff.frac_bits = 0;
      break;
    case Field::wspt:
      ff.total_bits = wspt_bits;
      ff.frac_bits = is_float() ? 0 : wspt_frac_bits;
      break;
    case Field::cost:
      ff.total_bits = cost_bits;
      // sum_l is decremented by the stored WSPT, so the cost field keeps the
      // same fractional split.
      ff.frac_bits = is_float() ? 0 : wspt_frac_bits;
      break;
  }
  return ff;
}

Fixed NumericFormat::cost_sentinel() const {
  const FieldFormat ff = field_format(Field::cost);
  if (ff.repr == Repr::fixedpoint) return Fixed::from_raw(ff.max_raw(), ff);
  return Fixed::encode(ff.max_value(), ff);
}

Fixed quantize(double value, const NumericFormat& fmt, Field field) {
  return Fixed::encode(value, fmt.field_format(field));
}

double relative_error(double quantized, double reference) {
  if (!(reference > 0.0)) {
    throw InvariantError("relative_error: reference must be positive");
  }
  return 100.0 * std::abs(quantized - reference) / reference;
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "int4") return Scheme::int4;
  if (s == "int8") return Scheme::int8;
  if (s == "mixed") return Scheme::mixed;
  if (s == "fp16") return Scheme::fp16;
  if (s == "fp32") return Scheme::fp32;
  throw ConfigError("unknown precision scheme: " + s);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::int4: return "int4";
    case Scheme::int8: return "int8";
    case Scheme::mixed: return "mixed";
    case Scheme::fp16: return "fp16";
    case Scheme::fp32: return "fp32";
  }
  return "?";
}

}  // namespace sos
