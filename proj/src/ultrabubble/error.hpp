#ifndef ULTRABUBBLE_ERROR_HPP
#define ULTRABUBBLE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ultrabubble {

enum class ErrorKind {
    io,
    parse,
    reference,
    structure,
    rooting,
    guard,
    argument,
};

/// Every failure raised by the core carries a kind so the C layer and the
/// CLI can map it onto a status / exit code without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_ERROR_HPP
