#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ggp {

enum class ErrorKind {
  DefectClassMismatch,
  RankOverflow,
  SignMismatch,
  InapplicableTwist,
  NotCuspidalSupport,
  CaseMismatch,
  RankOrder,
  MultipleNonzero,
  NotUnipotent,
  RankMismatch,
  ParseError,
  NormalizationError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this one type; the kind is
// what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  // byte offset into the parsed text, ParseError only
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> offset_;
};

}  // namespace ggp
