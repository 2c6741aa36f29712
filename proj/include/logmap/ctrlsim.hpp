#pragma once

// Cycle-level model of the control unit: the idle / op / done_it / done_all
// state machine, the 11-bit iteration counter and the X_n register with its
// input multiplexing.
//
// Timing model (one row per rising edge):
//  * idle      X_n follows x0, counter = 0, ready = 0. start = 1 moves to op.
//  * op        The UOML works for `uoml_latency` cycles. On completion X_n loads
//              the UOML output, counter increments and the machine enters
//              done_it with o_done high for that single cycle. If counter has
//              already reached it_max, op moves to done_all instead.
//  * done_it   Always returns to op, which restarts the UOML.
//  * done_all  done_all is high for this one cycle, then back to idle. The
//              hardware's half-cycle pulse becomes a full cycle here.
// Reset is sampled at the clock edge and forces idle.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logmap/errors.hpp"
#include "logmap/fixq16.hpp"
#include "logmap/uoml.hpp"

namespace logmap {

inline constexpr std::uint32_t kCounterBits = 11;
inline constexpr std::uint32_t kCounterMax = (1u << kCounterBits) - 1;  // 2047
inline constexpr std::uint32_t kDefaultUomlLatency = 4;

enum class FsmState : std::uint8_t { Idle, Op, DoneIt, DoneAll };

constexpr std::string_view state_name(FsmState s) noexcept {
  switch (s) {
    case FsmState::Idle: return "idle";
    case FsmState::Op: return "op";
    case FsmState::DoneIt: return "done_it";
    case FsmState::DoneAll: return "done_all";
  }
  return "?";
}

/// `params.n_iter` is ignored by the simulator; the iteration count is it_max.
struct SimConfig {
  MapParams params;
  std::uint32_t it_max = 0;
  std::uint32_t uoml_latency = kDefaultUomlLatency;
};

inline void validate(const SimConfig& config) {
  if (config.it_max > kCounterMax) {
    throw ConfigError("it_max = " + std::to_string(config.it_max) +
                      " exceeds the 11-bit iteration counter (max 2047)");
  }
  if (config.uoml_latency == 0) throw ConfigError("uoml_latency must be at least 1 cycle");
  validate(config.params);
}

struct SimState {
  FsmState fsm = FsmState::Idle;
  std::uint32_t counter = 0;
  Fix32 x_reg;
  bool ready = false;
  bool done_pulse = false;  // o_done
  bool done_all = false;
  std::uint32_t uoml_elapsed = 0;  // cycles spent in the current UOML pass
  StepResult uoml_out{};           // last completed UOML pass
  std::uint64_t cycle = 0;
};

/// Power-on / reset state.
inline SimState initial_state(const SimConfig& config) {
  SimState s;
  s.x_reg = config.params.x0;
  return s;
}

/// Next-state function. Pure: the same inputs always give the same state.
inline SimState fsm_step(const SimState& state, bool start, const SimConfig& config,
                         bool reset = false) {
  if (reset) {
    SimState s = initial_state(config);
    s.cycle = state.cycle + 1;
    return s;
  }

  SimState next = state;
  next.cycle = state.cycle + 1;
  next.done_pulse = false;
  next.done_all = false;

  switch (state.fsm) {
    case FsmState::Idle:
      next.counter = 0;
      next.x_reg = config.params.x0;
      next.uoml_elapsed = 0;
      next.ready = start;
      if (start) next.fsm = FsmState::Op;
      break;

    case FsmState::Op:
      if (state.counter == config.it_max) {
        next.fsm = FsmState::DoneAll;
        next.ready = false;
        next.done_all = true;
        break;
      }
      next.uoml_elapsed = state.uoml_elapsed + 1;
      if (next.uoml_elapsed >= config.uoml_latency) {
        next.uoml_out = iterate_once(state.x_reg, config.params.r, config.params.mode);
        next.x_reg = next.uoml_out.value;
        next.counter = (state.counter + 1) & kCounterMax;
        next.done_pulse = true;
        next.uoml_elapsed = 0;
        next.fsm = FsmState::DoneIt;
      }
      break;

    case FsmState::DoneIt:
      next.uoml_elapsed = 0;
      next.fsm = FsmState::Op;
      break;

    case FsmState::DoneAll:
      next = initial_state(config);
      next.cycle = state.cycle + 1;
      break;
  }
  return next;
}

/// One row of the per-cycle signal trace.
struct TraceEvent {
  std::uint64_t cycle = 0;
  FsmState fsm = FsmState::Idle;
  std::uint32_t counter = 0;
  bool ready = false;
  bool o_done = false;
  bool done_all = false;
  Fix32 x_reg;
  bool o_over = false;
  bool o_under = false;

  static TraceEvent from(const SimState& s) {
    return TraceEvent{s.cycle,     s.fsm,   s.counter,           s.ready,
                      s.done_pulse, s.done_all, s.x_reg, s.uoml_out.overflow,
                      s.uoml_out.underflow};
  }

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Stateful wrapper for driving the machine cycle by cycle (tests, reset
/// injection). Records every cycle, including the initial state at cycle 0.
class Simulator {
 public:
  explicit Simulator(SimConfig config) : config_(std::move(config)) {
    validate(config_);
    state_ = initial_state(config_);
    trace_.push_back(TraceEvent::from(state_));
  }

  const SimState& step(bool start, bool reset = false) {
    state_ = fsm_step(state_, start, config_, reset);
    trace_.push_back(TraceEvent::from(state_));
    return state_;
  }

  const SimState& state() const noexcept { return state_; }
  const SimConfig& config() const noexcept { return config_; }
  const std::vector<TraceEvent>& trace() const noexcept { return trace_; }

 private:
  SimConfig config_;
  SimState state_;
  std::vector<TraceEvent> trace_;
};

struct SimResult {
  Orbit orbit;
  std::vector<TraceEvent> trace;
};

/// Pulses start at cycle 0 and clocks the machine until it returns to idle
/// after done_all. The orbit is x0 followed by every X_n load.
inline SimResult run_sim(const SimConfig& config) {
  Simulator sim(config);

  MapParams params = config.params;
  params.n_iter = config.it_max;
  Orbit orbit{params, {}};
  orbit.records.reserve(config.it_max + 1);
  orbit.records.push_back(IterationRecord{0, config.params.x0, false, false, {}, {}});

  const std::uint64_t cycle_limit =
      4 + static_cast<std::uint64_t>(config.it_max) * (config.uoml_latency + 1);
  bool finished = false;
  while (!finished) {
    const SimState& s = sim.step(sim.state().cycle == 0);
    if (s.done_pulse) {
      orbit.records.push_back(IterationRecord{s.counter, s.x_reg, s.uoml_out.overflow,
                                              s.uoml_out.underflow, s.uoml_out.stage_rx,
                                              s.uoml_out.stage_final});
    }
    finished = s.fsm == FsmState::Idle && sim.trace().size() > 2;
    if (s.cycle > cycle_limit) {
      throw ConfigError("simulation did not reach done_all within " + std::to_string(cycle_limit) +
                        " cycles");
    }
  }
  return SimResult{std::move(orbit), sim.trace()};
}

}  // namespace logmap
