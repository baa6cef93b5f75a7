#ifndef DIOPH_LADDER_HPP
#define DIOPH_LADDER_HPP

// Interval ladders I_j = [g_j, h_j] partitioning digit positions, and the
// schedules that say which part owns each interval.

#include <cstddef>
#include <string>
#include <vector>

#include "dioph/numeric.hpp"

namespace dioph {

enum class ScheduleKind { alternating, mod_k_plus_1, liouville };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

/// Who is forced on an interval. `owner` is the part (0 or 1) whose digits
/// are prescribed there; `target` is 0 for the zero target or s >= 1 for the
/// s-th inhomogeneous target. `ratio_index` selects nu0 or nu1.
struct Role {
  int owner = 0;
  int target = 0;
  int ratio_index = 0;

  friend bool operator==(const Role&, const Role&) = default;
};

struct Schedule {
  ScheduleKind kind = ScheduleKind::alternating;
  int k = 1;                 // number of targets (mod_k_plus_1, liouville)
  bool swap_parts = false;   // alternating only: exchange the two owners
  bool targeted = false;     // alternating only: owner 1 tracks target 1

  Role role(std::size_t j) const;
  std::size_t period() const;  // 0 for the aperiodic liouville schedule
};

/// phi(j) for j >= 1: the enumeration 1; 1,2; 1,2,3; ... folded into 1..k.
int liouville_phi(std::size_t j, int k);

struct Interval {
  std::size_t j = 0;
  std::size_t g = 0;
  std::size_t h = 0;
  Role role;

  std::size_t length() const { return h - g + 1; }
};

struct IntervalLadder {
  std::size_t M = 8;
  Schedule schedule;
  ExactRational nu0 = 2;
  ExactRational nu1 = 2;
  ExactRational growth = 0;  // liouville: nu_j = nu_parity + growth * j
  ExactRational Lambda = 4;
  std::vector<Interval> intervals;

  std::size_t h_last() const { return intervals.empty() ? 0 : intervals.back().h; }
  /// Expansion ratio used to close interval j.
  ExactRational ratio(std::size_t j) const;
  /// Index of the interval containing 1-based position pos.
  std::size_t interval_of(std::size_t pos) const;
};

/// Builds g_0 = 1, h_0 = M, g_{j+1} = h_j + 1, h_j = floor(nu_j g_j), stopping
/// at the first h_j >= depth_budget. Throws std::invalid_argument for nu <= 1,
/// M < 1 or depth_budget <= M.
IntervalLadder build_ladder(std::size_t M, const Schedule& schedule,
                            const ExactRational& nu0, const ExactRational& nu1,
                            std::size_t depth_budget,
                            const ExactRational& growth = 0);

}  // namespace dioph

#endif
