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

#include "frustbench/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frustbench {

Schedule::Schedule(std::vector<SchedulePoint> points, bool allow_non_monotone) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("schedule needs at least two points");
    if (points_.front().fraction != 0.0 || points_.back().fraction != 1.0)
        throw std::invalid_argument("schedule fractions must run from 0 to 1");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].fraction > points_[i - 1].fraction))
            throw std::invalid_argument("schedule fractions must be strictly increasing");
        if (!allow_non_monotone && (points_[i].A > points_[i - 1].A || points_[i].B < points_[i - 1].B))
            throw std::invalid_argument("schedule A must be non-increasing and B non-decreasing");
    }
}

Schedule Schedule::linear() { return Schedule({{0.0, 1.0, 0.0}, {1.0, 0.0, 1.0}}); }

Schedule Schedule::parse(std::string_view text, bool allow_non_monotone) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<SchedulePoint> pts;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        SchedulePoint p{};
        if (!(ls >> p.fraction)) continue;
        if (!(ls >> p.A >> p.B)) throw std::invalid_argument("schedule line needs 'fraction A B': " + line);
        pts.push_back(p);
    }
    return Schedule(std::move(pts), allow_non_monotone);
}

Schedule Schedule::load(const std::string& path, bool allow_non_monotone) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), allow_non_monotone);
}

SchedulePoint Schedule::at(double s) const {
    s = std::clamp(s, 0.0, 1.0);
    auto hi = std::lower_bound(points_.begin(), points_.end(), s,
                               [](const SchedulePoint& p, double x) { return p.fraction < x; });
    if (hi == points_.begin()) return points_.front();
    auto lo = hi - 1;
    const double w = (s - lo->fraction) / (hi->fraction - lo->fraction);
    return {s, lo->A + w * (hi->A - lo->A), lo->B + w * (hi->B - lo->B)};
}

std::string Schedule::str() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto& p : points_) out << p.fraction << ' ' << p.A << ' ' << p.B << '\n';
    return out.str();
}

}  // namespace frustbench
