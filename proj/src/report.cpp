#include "lagcorr/report.hpp"

namespace lagcorr {

int Report::exit_code() const {
    for (const auto& e : entries) {
        if (e.error && (*e.error == ErrorKind::SyntaxError || *e.error == ErrorKind::UnknownName)) return 1;
    }
    return 0;
}

std::string quote_value(const std::string& value) {
    bool plain = !value.empty();
    for (char c : value) {
        if (c == ' ' || c == '"' || c == '=' || c == '\\' || c == '\t' || c == '\n') plain = false;
    }
    if (plain) return value;
    std::string out = "\"";
    for (char c : value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string render_machine(const Report& report) {
    std::string out;
    for (const auto& e : report.entries) {
        out += "line=" + std::to_string(e.line) + " col=" + std::to_string(e.column) + " cmd=" + quote_value(e.command);
        if (e.error) {
            out += " status=error kind=" + std::string(to_string(*e.error)) + " msg=" + quote_value(e.message);
        } else {
            out += " status=ok";
        }
        for (const auto& f : e.fields) out += " " + f.key + "=" + quote_value(f.value);
        out += '\n';
    }
    return out;
}

std::string render_text(const Report& report) {
    std::string out;
    for (const auto& e : report.entries) {
        if (e.error) {
            out += "[" + std::to_string(e.line) + ":" + std::to_string(e.column) + "] " + e.command + ": error " +
                   std::string(to_string(*e.error)) + ": " + e.message + "\n";
            continue;
        }
        out += "[" + std::to_string(e.line) + "] " + e.command;
        if (!e.text.empty()) out += ": " + e.text.front();
        out += '\n';
        for (std::size_t i = 1; i < e.text.size(); ++i) out += "    " + e.text[i] + "\n";
    }
    return out;
}

}  // namespace lagcorr
