#include "stabkit/bitset.hpp"
#include "stabkit/error.hpp"
#include "stabkit/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace stabkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::CrossGroupElement: return "CrossGroupElement";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::PairOutsideCarrier: return "PairOutsideCarrier";
    case ErrorKind::EmptyCarrier: return "EmptyCarrier";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::ArityUnsupported: return "ArityUnsupported";
    case ErrorKind::NonAbelianGroup: return "NonAbelianGroup";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {
std::string describe_witness(const std::string& axiom, const std::vector<std::size_t>& witness) {
  std::string s = axiom + " fails at (";
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(witness[i]);
  }
  return s + ")";
}
}  // namespace

AxiomViolation::AxiomViolation(std::string axiom, std::vector<std::size_t> witness)
    : Error(ErrorKind::AxiomViolation, describe_witness(axiom, witness)),
      axiom_(std::move(axiom)),
      witness_(std::move(witness)) {}

Bitset Bitset::from_indices(std::size_t size, std::span<const std::size_t> indices) {
  Bitset b(size);
  for (std::size_t i : indices) {
    if (i >= size) throw Error(ErrorKind::IndexOutOfRange, "bit " + std::to_string(i) + " >= " + std::to_string(size));
    b.set(i);
  }
  return b;
}

std::string Bitset::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out((size_ + 3) / 4, '0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t bit = 4 * i;
    const unsigned nibble = static_cast<unsigned>((words_[bit / kWordBits] >> (bit % kWordBits)) & 0xFU);
    out[i] = digits[nibble];
  }
  return out;
}

Bitset Bitset::from_hex(std::size_t size, std::string_view hex) {
  if (hex.size() != (size + 3) / 4)
    throw Error(ErrorKind::Parse, "hex row has " + std::to_string(hex.size()) + " digits, expected " +
                                      std::to_string((size + 3) / 4));
  Bitset b(size);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = hex[i];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a' + 10);
    else
      throw Error(ErrorKind::Parse, std::string("invalid hex digit '") + c + "'");
    for (unsigned t = 0; t < 4; ++t) {
      if (!((v >> t) & 1U)) continue;
      const std::size_t bit = 4 * i + t;
      if (bit >= size) throw Error(ErrorKind::Parse, "hex row sets a padding bit");
      b.set(bit);
    }
  }
  return b;
}

bool member_lex_less(const Bitset& a, const Bitset& b) {
  const auto x = a.indices();
  const auto y = b.indices();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw fail();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  BigInt num = 0;
  BigInt den = 1;
  bool digits = false;
  bool point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !point) {
      point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    digits = true;
    num = num * 10 + (c - '0');
    if (point) den *= 10;
  }
  if (!digits) throw fail();
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt ceil(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (q * den < num) ++q;
  return q;
}

namespace {
constexpr int kDyadicBits = 40;

Rational dyadic(double scaled) {
  if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18)
    throw Error(ErrorKind::Overflow, "value out of range for dyadic rounding");
  return Rational(BigInt(static_cast<long long>(scaled)), BigInt(1) << kDyadicBits);
}
}  // namespace

Rational rational_below(double x) { return dyadic(std::floor(std::ldexp(x, kDyadicBits))); }
Rational rational_above(double x) { return dyadic(std::ceil(std::ldexp(x, kDyadicBits))); }

}  // namespace stabkit
