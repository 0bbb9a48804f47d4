#pragma once

#include <charconv>
#include <limits>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "mpers/errors.hpp"

namespace mpers::detail {

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(s.substr(start)));
            return out;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

inline double parse_double(std::string_view s)
{
    s = trim(s);
    if (s == "inf" || s == "+inf")
        return std::numeric_limits<double>::infinity();
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidInput("not a number: '" + std::string(s) + "'");
    return v;
}

template <class Int>
Int parse_int(std::string_view s)
{
    s = trim(s);
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidInput("not an integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace mpers::detail
