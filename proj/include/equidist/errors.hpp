#pragma once

#include <stdexcept>
#include <string>

namespace equidist {

// Every failure mode the library reports, one code each; the CLI maps
// codes onto exit statuses and machine-readable error objects.
enum class errc {
  parse,
  invalid_spec,
  missing_level,
  exactness_unavailable,
  out_of_window,
  coprimality,
  strategy_unavailable,
  arity,
  empty_input,
  invalid_partition,
  invalid_chain,
  degenerate_block,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::parse: return "parse";
    case errc::invalid_spec: return "invalid-spec";
    case errc::missing_level: return "missing-level";
    case errc::exactness_unavailable: return "exactness-unavailable";
    case errc::out_of_window: return "out-of-window";
    case errc::coprimality: return "coprimality";
    case errc::strategy_unavailable: return "strategy-unavailable";
    case errc::arity: return "arity";
    case errc::empty_input: return "empty-input";
    case errc::invalid_partition: return "invalid-partition";
    case errc::invalid_chain: return "invalid-chain";
    case errc::degenerate_block: return "degenerate-block";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message, std::string field = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        field_(std::move(field)) {}

  errc code() const { return code_; }
  // Offending input field, when known (parse errors).
  const std::string& field() const { return field_; }

 private:
  errc code_;
  std::string field_;
};

}  // namespace equidist
