#include "ggp/error.hpp"

namespace ggp {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::DefectClassMismatch: return "DefectClassMismatch";
    case ErrorKind::RankOverflow: return "RankOverflow";
    case ErrorKind::SignMismatch: return "SignMismatch";
    case ErrorKind::InapplicableTwist: return "InapplicableTwist";
    case ErrorKind::NotCuspidalSupport: return "NotCuspidalSupport";
    case ErrorKind::CaseMismatch: return "CaseMismatch";
    case ErrorKind::RankOrder: return "RankOrder";
    case ErrorKind::MultipleNonzero: return "MultipleNonzero";
    case ErrorKind::NotUnipotent: return "NotUnipotent";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NormalizationError: return "NormalizationError";
  }
  return "Unknown";
}

static std::string decorate(ErrorKind kind, const std::string& message,
                            std::optional<std::size_t> offset)
{
  std::string s(to_string(kind));
  s += ": ";
  s += message;
  if (offset) s += " (at byte " + std::to_string(*offset) + ")";
  return s;
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> offset)
    : std::runtime_error(decorate(kind, message, offset)),
      kind_(kind),
      offset_(offset)
{
}

}  // namespace ggp
