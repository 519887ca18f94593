#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hymc {

/// Input could not be parsed; position is 1-based (0 = unknown).
struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(pos_msg(msg, line_, col_)), line(line_), col(col_) {}

  static std::string pos_msg(const std::string& msg, int line, int col) {
    if (line <= 0) return msg;
    return msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")";
  }
};

/// A constructed object violates a stated invariant (unbound variable,
/// non-total system, undeclared proposition, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A construction exceeded a configured state/size cap.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wall-clock deadline exceeded.
struct TimeoutError : std::runtime_error {
  TimeoutError() : std::runtime_error("timeout") {}
};

/// An external tool failed, timed out, or produced unparseable output.
/// Never conflated with a verdict.
struct ExternalToolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance exceeds the reference oracle's enforced bounds.
struct OracleBoundsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wall-clock deadline checked at state-expansion granularity.
class Deadline {
 public:
  Deadline() = default;
  static Deadline never() { return Deadline(); }
  static Deadline after_seconds(double secs) {
    Deadline d;
    d.armed_ = true;
    d.at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(secs));
    return d;
  }
  bool expired() const {
    return armed_ && std::chrono::steady_clock::now() >= at_;
  }
  void check() const {
    if (expired()) throw TimeoutError();
  }

 private:
  bool armed_ = false;
  std::chrono::steady_clock::time_point at_{};
};

/// Resource budget threaded through automaton constructions.
struct Limits {
  std::size_t state_cap = 1000000;
  Deadline deadline = Deadline::never();

  void check_states(std::size_t n, const char* what) const {
    if (n > state_cap)
      throw ResourceLimitError(std::string(what) + ": state cap exceeded (" +
                               std::to_string(n) + " > " + std::to_string(state_cap) + ")");
  }
};

/// Stopwatch for per-stage statistics.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace hymc
