#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace s2l {

// 1-based source position; {0,0} means "no location".
struct SourceLoc {
    int line = 0;
    int col = 0;
    bool valid() const { return line > 0; }
    std::string str() const {
        return valid() ? std::to_string(line) + ":" + std::to_string(col) : std::string("?");
    }
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed source text (SIMP+ or .lctrs); carries a position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourceLoc loc)
        : Error(loc.str() + ": " + msg), loc_(loc) {}
    SourceLoc loc() const { return loc_; }

private:
    SourceLoc loc_;
};

// Runtime evaluation failure: overflow, unbound variable, ill-sorted term.
class EvalError : public Error {
public:
    using Error::Error;
};

// Rewrite engine failure: ambiguous redex, unsupported rule shape.
class EngineError : public Error {
public:
    using Error::Error;
};

// One finding from a static check (program validation, system validation).
struct Diagnostic {
    std::string message;
    SourceLoc loc;
};

inline std::string diagnostics_to_string(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
        if (d.loc.valid()) {
            out += d.loc.str() + ": ";
        }
        out += d.message;
        out += '\n';
    }
    return out;
}

} // namespace s2l
