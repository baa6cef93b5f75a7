#include "dioph/ladder.hpp"

#include <algorithm>
#include <stdexcept>

namespace dioph {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::alternating: return "alternating";
    case ScheduleKind::mod_k_plus_1: return "mod_k_plus_1";
    case ScheduleKind::liouville: return "liouville";
  }
  return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "alternating") return ScheduleKind::alternating;
  if (name == "mod_k_plus_1") return ScheduleKind::mod_k_plus_1;
  if (name == "liouville") return ScheduleKind::liouville;
  throw std::invalid_argument("unknown schedule kind '" + name + "'");
}

int liouville_phi(std::size_t j, int k) {
  // Block r of the enumeration is 1..r; locate j inside it.
  std::size_t r = 1;
  std::size_t v = j;
  while (v > r) {
    v -= r;
    ++r;
  }
  return static_cast<int>((v - 1) % static_cast<std::size_t>(k)) + 1;
}

Role Schedule::role(std::size_t j) const {
  switch (kind) {
    case ScheduleKind::alternating: {
      const int parity = static_cast<int>(j % 2);
      const int owner = swap_parts ? 1 - parity : parity;
      return {owner, (targeted && owner == 1) ? 1 : 0, parity};
    }
    case ScheduleKind::mod_k_plus_1: {
      const std::size_t r = j % static_cast<std::size_t>(k + 1);
      if (r == 0) return {0, 0, 0};
      return {1, static_cast<int>(r), 1};
    }
    case ScheduleKind::liouville: {
      if (j == 0) return {0, 0, 0};
      const int parity = static_cast<int>(j % 2);
      return {parity, liouville_phi(j, k), parity};
    }
  }
  return {};
}

std::size_t Schedule::period() const {
  switch (kind) {
    case ScheduleKind::alternating: return 2;
    case ScheduleKind::mod_k_plus_1: return static_cast<std::size_t>(k + 1);
    case ScheduleKind::liouville: return 0;
  }
  return 0;
}

ExactRational IntervalLadder::ratio(std::size_t j) const {
  const Role r = schedule.role(j);
  ExactRational nu = r.ratio_index == 0 ? nu0 : nu1;
  if (schedule.kind == ScheduleKind::liouville)
    nu += growth * static_cast<unsigned long>(j);
  return nu;
}

std::size_t IntervalLadder::interval_of(std::size_t pos) const {
  const auto it = std::lower_bound(
      intervals.begin(), intervals.end(), pos,
      [](const Interval& iv, std::size_t p) { return iv.h < p; });
  if (pos < 1 || it == intervals.end())
    throw std::out_of_range("position " + std::to_string(pos) + " outside the ladder");
  return it->j;
}

IntervalLadder build_ladder(std::size_t M, const Schedule& schedule,
                            const ExactRational& nu0, const ExactRational& nu1,
                            std::size_t depth_budget, const ExactRational& growth) {
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  if (nu0 <= 1 || nu1 <= 1)
    throw std::invalid_argument("nu0 and nu1 must exceed 1 (ladders must expand)");
  if (growth < 0) throw std::invalid_argument("growth must be non-negative");
  if (depth_budget <= M)
    throw std::invalid_argument("depth budget must exceed M");
  if (schedule.k < 1) throw std::invalid_argument("schedule needs k >= 1");

  IntervalLadder ladder;
  ladder.M = M;
  ladder.schedule = schedule;
  ladder.nu0 = nu0;
  ladder.nu1 = nu1;
  ladder.growth = growth;
  switch (schedule.kind) {
    case ScheduleKind::alternating:
    case ScheduleKind::liouville:
      ladder.Lambda = nu0 * nu1;
      break;
    case ScheduleKind::mod_k_plus_1: {
      ladder.Lambda = nu0;
      for (int s = 0; s < schedule.k; ++s) ladder.Lambda *= nu1;
      break;
    }
  }

  ladder.intervals.push_back({0, 1, M, schedule.role(0)});
  while (ladder.intervals.back().h < depth_budget) {
    const std::size_t j = ladder.intervals.size();
    const std::size_t g = ladder.intervals.back().h + 1;
    const BigInt h = floor_of(ladder.ratio(j) * static_cast<unsigned long>(g));
    // floor(nu g) >= g always; a one-digit interval still advances.
    ladder.intervals.push_back({j, g, std::max<std::size_t>(g, h.get_ui()),
                                schedule.role(j)});
  }
  return ladder;
}

}  // namespace dioph
