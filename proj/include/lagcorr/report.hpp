#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lagcorr/error.hpp"

namespace lagcorr {

struct Field {
    std::string key;
    std::string value;
};

/// Result of one script statement.
struct ReportEntry {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string command;
    std::optional<ErrorKind> error;
    std::string message;              // set when error is
    std::vector<Field> fields;        // machine format, in order
    std::vector<std::string> text;    // human format, first line is the summary
};

struct Report {
    std::vector<ReportEntry> entries;

    /// 1 if any entry failed with SyntaxError or UnknownName, else 0.
    int exit_code() const;
};

/// One line per entry:
///   line=3 col=1 cmd=compose status=ok transverse=true ...
///   line=4 col=9 cmd=lag status=error kind=TypeMismatch msg="..."
/// Values containing spaces, quotes, '=' or nothing at all are double-quoted
/// with backslash escapes.
std::string render_machine(const Report& report);

std::string render_text(const Report& report);

std::string quote_value(const std::string& value);

}  // namespace lagcorr
