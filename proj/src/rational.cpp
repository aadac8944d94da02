#include "dgva/rational.hpp"

namespace dgva {

Rat binom(long long m, long long i) {
    if (i < 0) return 0;
    Int num = 1, den = 1;
    for (long long k = 0; k < i; ++k) {
        num *= Int(m - k);
        den *= Int(k + 1);
    }
    return Rat(num, den);
}

Rat rat_binom(const Rat& m, long long i) {
    Rat num = 1;
    for (long long k = 0; k < i; ++k) num *= (m - k);
    Rat den = 1;
    for (long long k = 2; k <= i; ++k) den *= k;
    return num / den;
}

std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::optional<Rat> rat_parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        s.remove_prefix(1);
    }
    std::string_view num = s, den = "1";
    if (auto p = s.find('/'); p != std::string_view::npos) {
        num = s.substr(0, p);
        den = s.substr(p + 1);
    }
    if (!digits(num) || !digits(den)) return std::nullopt;
    Int n{std::string(num)};
    Int d{std::string(den)};
    if (d == 0) return std::nullopt;
    if (neg) n = -n;
    return Rat(n, d);
}

} // namespace dgva
