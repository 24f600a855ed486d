#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace schemaforge {

/// Raised when a configured resource bound (critical-instance size, chase
/// steps, rewriting depth, wall-clock deadline) is exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public BudgetExceeded {
 public:
  TimeoutError() : BudgetExceeded("wall-clock budget exceeded") {}
};

struct Limits {
  using Clock = std::chrono::steady_clock;

  std::optional<Clock::time_point> deadline;
  std::size_t critical_triple_budget = 10'000'000;
  /// 0 selects 10 * (|I| + |E|)^2.
  std::size_t chase_step_bound = 0;
  std::size_t rewrite_depth = 16;

  static Limits with_timeout(std::chrono::milliseconds budget) {
    Limits l;
    l.deadline = Clock::now() + budget;
    return l;
  }

  void check_deadline() const {
    if (deadline && Clock::now() > *deadline) throw TimeoutError();
  }
};

/// Amortizes deadline checks inside hot loops.
class DeadlineTicker {
 public:
  explicit DeadlineTicker(const Limits* limits) : limits_(limits) {}

  void tick() {
    if (limits_ && limits_->deadline && (++count_ & 0x3ff) == 0) limits_->check_deadline();
  }

 private:
  const Limits* limits_;
  std::size_t count_ = 0;
};

}  // namespace schemaforge
