#pragma once

#include <stdexcept>
#include <string>

namespace deccsp {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

struct SemanticsError : std::runtime_error {
    enum class Kind {
        UnboundDataVariable,
        UnboundProcessVariable,
        DivisionByZero,
        UnsynchronizedInputWithoutDomain,
        ChannelEnumerationOverflow,
        UnknownProcessName,
    };
    Kind error_kind;
    std::string subject;

    SemanticsError(Kind k, std::string subject_, const std::string& msg)
        : std::runtime_error(msg), error_kind(k), subject(std::move(subject_)) {}
};

// A step error wrapped with the label path that reached it.
struct ExplorerError : std::runtime_error {
    std::string path;
    ExplorerError(std::string path_, const std::string& inner)
        : std::runtime_error(inner + " (reached via: " + path_ + ")"),
          path(std::move(path_)) {}
};

}  // namespace deccsp
