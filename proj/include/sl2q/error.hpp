#ifndef SL2Q_ERROR_HPP
#define SL2Q_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sl2q {

/// All library errors carry a stable machine-readable category string,
/// surfaced as-is by the CLI under --json.
class Error : public std::runtime_error {
public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const { return category_; }

private:
  std::string category_;
};

namespace errc {
inline constexpr const char* division_by_zero = "division_by_zero";
inline constexpr const char* zero_element = "zero_element";
inline constexpr const char* ambient_mismatch = "ambient_mismatch";
inline constexpr const char* side_mismatch = "side_mismatch";
inline constexpr const char* singular_matrix = "singular_matrix";
inline constexpr const char* not_an_automorphism = "not_an_automorphism";
inline constexpr const char* unverified_triple = "unverified_triple";
inline constexpr const char* shape_mismatch = "shape_mismatch";
inline constexpr const char* degree_cap = "degree_cap";
inline constexpr const char* internal = "internal_error";
inline constexpr const char* syntax = "syntax_error";
inline constexpr const char* bad_argument = "bad_argument";
}  // namespace errc

[[noreturn]] inline void fail(const char* category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace sl2q

#endif
