#include "disk_squeeze/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace disk_squeeze::cli {

namespace {

std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty() || !(std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '-' || s.front() == '.')) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.back() != 'i') {
        const auto re = parse_real(text);
        return re ? std::optional<Complex>(Complex(*re, 0.0)) : std::nullopt;
    }
    const std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        if (!body.empty() && body.front() == '+') return std::nullopt;
        const auto im = parse_real(body);
        return im ? std::optional<Complex>(Complex(0.0, *im)) : std::nullopt;
    }
    const auto re = parse_real(body.substr(0, split));
    const std::string_view imag = body.substr(split);
    if (!re || (imag.size() > 1 && (imag[1] == '+' || imag[1] == '-'))) return std::nullopt;
    const auto im = parse_real(imag);
    if (!im) return std::nullopt;
    return Complex(*re, *im);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DISK_SQUEEZE_SEED")) {
        const std::string_view s(env);
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && end == s.data() + s.size() && !s.empty()) return v;
    }
    return 1;
}

}  // namespace disk_squeeze::cli
