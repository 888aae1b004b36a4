#ifndef ULTRABUBBLE_NATURAL_ORDER_HPP
#define ULTRABUBBLE_NATURAL_ORDER_HPP

#include <string_view>

namespace ultrabubble {

// Digit runs compare by numeric value, everything else bytewise, so that
// "2_R" < "10_L" and "1_L" < "1_R". Ties on value ("01" vs "1") fall back to
// the shorter run first, keeping the order total.
int natural_compare(std::string_view a, std::string_view b) noexcept;

struct NaturalLess {
    bool operator()(std::string_view a, std::string_view b) const noexcept {
        return natural_compare(a, b) < 0;
    }
};

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_NATURAL_ORDER_HPP
