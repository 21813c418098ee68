#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hat {

struct TimeoutError : std::runtime_error {
  TimeoutError() : std::runtime_error("deadline exceeded") {}
};

// Cooperative deadline. check() is cheap enough to call at every search node;
// it reads the clock on the first call and then every 16 calls.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(double seconds)
      : at_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}

  static Deadline never() { return Deadline(); }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  // Seconds left, or nullopt for a deadline that never expires.
  std::optional<double> remaining() const {
    if (!at_) return std::nullopt;
    return std::chrono::duration<double>(*at_ - Clock::now()).count();
  }

  void check() {
    if (!at_ || (ticks_++ & 0xf) != 0) return;
    if (Clock::now() >= *at_) throw TimeoutError();
  }

 private:
  std::optional<Clock::time_point> at_;
  std::uint32_t ticks_ = 0;
};

enum class Status { Proved, Refuted, Timeout, GaveUp };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Proved: return "Proved";
    case Status::Refuted: return "Refuted";
    case Status::Timeout: return "Timeout";
    case Status::GaveUp: return "GaveUp";
  }
  return "?";
}

struct Stats {
  std::uint64_t inferences = 0;
  int rounds = 0;
};

}  // namespace hat
