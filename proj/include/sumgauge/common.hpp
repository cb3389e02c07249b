#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sumgauge {

inline constexpr const char* kVersion = "0.1.0";

// Anything wrong with user-supplied data or configuration. The CLI maps
// this to exit code 2; everything else that escapes is an internal error.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Which side(s) of the samples a corpus statistic is computed over.
enum class Scope { kDocuments, kSummaries, kBoth };

const char* to_string(Scope scope);
std::optional<Scope> scope_from_string(std::string_view name);

// Unit used when gamma values cross an interface (files, flags, display).
// Internally gamma is always a fraction on [0,1].
enum class GammaUnit { kFraction, kPercent };

const char* to_string(GammaUnit unit);
std::optional<GammaUnit> gamma_unit_from_string(std::string_view name);

inline double gamma_to_fraction(double value, GammaUnit unit) {
  return unit == GammaUnit::kPercent ? value / 100.0 : value;
}

inline double gamma_from_fraction(double fraction, GammaUnit unit) {
  return unit == GammaUnit::kPercent ? fraction * 100.0 : fraction;
}

}  // namespace sumgauge
