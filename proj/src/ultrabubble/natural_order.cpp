#include "ultrabubble/natural_order.hpp"

#include "ultrabubble/error.hpp"

#include <cctype>

namespace ultrabubble {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::reference: return "reference";
    case ErrorKind::structure: return "structure";
    case ErrorKind::rooting: return "rooting";
    case ErrorKind::guard: return "guard";
    case ErrorKind::argument: return "argument";
    }
    return "unknown";
}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

int natural_compare(std::string_view a, std::string_view b) noexcept {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            size_t i_end = i, j_end = j;
            while (i_end < a.size() && is_digit(a[i_end])) ++i_end;
            while (j_end < b.size() && is_digit(b[j_end])) ++j_end;
            // strip leading zeros for the value comparison
            size_t i_nz = i, j_nz = j;
            while (i_nz + 1 < i_end && a[i_nz] == '0') ++i_nz;
            while (j_nz + 1 < j_end && b[j_nz] == '0') ++j_nz;
            size_t a_len = i_end - i_nz, b_len = j_end - j_nz;
            if (a_len != b_len) return a_len < b_len ? -1 : 1;
            int c = a.substr(i_nz, a_len).compare(b.substr(j_nz, b_len));
            if (c != 0) return c < 0 ? -1 : 1;
            if (i_end - i != j_end - j) return (i_end - i) < (j_end - j) ? -1 : 1;
            i = i_end;
            j = j_end;
        } else {
            if (a[i] != b[j]) {
                return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
            }
            ++i;
            ++j;
        }
    }
    if (i == a.size() && j == b.size()) return 0;
    return i == a.size() ? -1 : 1;
}

}  // namespace ultrabubble
