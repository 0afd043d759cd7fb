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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace frustbench {

struct SchedulePoint {
    double fraction;  ///< t / t_a
    double A;         ///< transverse-field amplitude
    double B;         ///< problem-Hamiltonian amplitude
};

/// Piecewise-linear annealing schedule A(s), B(s) for s in [0, 1].
class Schedule {
  public:
    /// Validates: at least two points, fractions strictly increasing from 0 to
    /// 1, A non-increasing and B non-decreasing (unless allow_non_monotone).
    explicit Schedule(std::vector<SchedulePoint> points, bool allow_non_monotone = false);

    /// A falls linearly from 1 to 0 while B rises from 0 to 1.
    static Schedule linear();
    /// One "fraction A B" triple per line; '#' starts a comment.
    static Schedule parse(std::string_view text, bool allow_non_monotone = false);
    static Schedule load(const std::string& path, bool allow_non_monotone = false);

    double A(double s) const { return at(s).A; }
    double B(double s) const { return at(s).B; }
    SchedulePoint at(double s) const;

    const std::vector<SchedulePoint>& points() const { return points_; }
    std::string str() const;

  private:
    std::vector<SchedulePoint> points_;
};

}  // namespace frustbench
