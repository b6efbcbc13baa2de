#include "trustrecon/errors.hpp"

namespace trustrecon {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::header: return "malformed header";
        case ParseErrorKind::field_count: return "wrong field count";
        case ParseErrorKind::non_numeric: return "non-numeric field";
        case ParseErrorKind::out_of_range: return "value out of range";
        case ParseErrorKind::duplicate_step: return "duplicate time step";
        case ParseErrorKind::missing_step: return "missing time step";
    }
    return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t row, const std::string& reason)
    : std::runtime_error("row " + std::to_string(row) + ": " + to_string(kind) + ": " + reason),
      kind_(kind),
      row_(row) {}

}  // namespace trustrecon
