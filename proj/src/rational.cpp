#include "ietmix/rational.hpp"

#include <cctype>
#include <cmath>

namespace ietmix {

Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

Rat snap_double(double x, bool* snapped) {
    if (!std::isfinite(x)) throw std::domain_error("snap_double: non-finite input");
    const double scaled = x * 1e12;
    const double rounded = std::nearbyint(scaled);
    Rat exact(x);  // binary64 is exactly a rational with power-of-two denominator
    Rat snap(Int(static_cast<long long>(rounded)), kSnapDenominator);
    if (snapped) *snapped = (snap != exact);
    return snap;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text, bool* snapped) {
    if (snapped) *snapped = false;
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input '" + text + "'");

    Rat value;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw std::invalid_argument("parse_rational: malformed fraction '" + text + "'");
        Int qq(q);
        if (qq == 0) throw std::domain_error("parse_rational: zero denominator in '" + text + "'");
        value = Rat(Int(p), qq);
    } else {
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            if (!all_digits(s)) throw std::invalid_argument("parse_rational: malformed integer '" + text + "'");
            value = Rat(Int(s));
        } else {
            std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
            if (ip.empty()) ip = "0";
            if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
                throw std::invalid_argument("parse_rational: malformed decimal '" + text + "'");
            if (fp.size() > 12) {
                // keep 13 digits, round to 12: denominator stays <= 10^12
                bool exact_tail = true;
                for (size_t i = 12; i < fp.size(); ++i)
                    if (fp[i] != '0') exact_tail = false;
                Int scaled(ip + fp.substr(0, 12));
                Int next_digit(fp.substr(12, 1));
                if (next_digit >= 5) ++scaled;
                if (!exact_tail && snapped) *snapped = true;
                value = Rat(scaled, kSnapDenominator);
            } else {
                Int scale = 1;
                for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
                value = Rat(Int(ip) * scale + (fp.empty() ? Int(0) : Int(fp)), scale);
            }
        }
    }
    return neg ? Rat(-value) : value;
}

std::string rational_to_string(const Rat& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

}  // namespace ietmix
