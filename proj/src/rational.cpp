#include "tetkit/rational.hpp"

#include <cctype>

namespace tetkit {

std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::optional<Rat> parse_rat(const std::string& raw) {
    size_t a = raw.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return std::nullopt;
    std::string s = raw.substr(a, raw.find_last_not_of(" \t\r\n") - a + 1);
    size_t i = 0;
    auto read_int = [&](Int& out) -> bool {
        bool negative = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) return false;
        out = Int(s.substr(start, i - start));
        if (negative) out = -out;
        return true;
    };
    Int num, den = 1;
    if (!read_int(num)) return std::nullopt;
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (!read_int(den) || den == 0) return std::nullopt;
    }
    if (i != s.size()) return std::nullopt;
    return Rat(num, den);
}

}  // namespace tetkit
