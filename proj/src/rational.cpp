// Copyright 2026 The frustbench Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "frustbench/rational.hpp"

#include <cctype>
#include <charconv>

namespace frustbench {

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw std::invalid_argument("Rational::parse: bad integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

Rational Rational::parse(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (auto slash = s.find('/'); slash != std::string_view::npos)
        return {parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1))};
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return {parse_int(s)};
    const bool neg = !s.empty() && s.front() == '-';
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("Rational::parse: too many decimals");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (f < 0) throw std::invalid_argument("Rational::parse: bad decimal");
    std::int64_t num = (w < 0 ? -w : w) * den + f;
    return {neg ? -num : num, den};
}

}  // namespace frustbench
