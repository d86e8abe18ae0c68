#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "agmec/mec/channel.hpp"

namespace agmec::mec {

// FIFO task queue: carried bits (left over from earlier slots) are served
// before fresh bits (produced during the previous slot).
struct TaskQueue {
  Bits carried = 0;
  Bits fresh = 0;

  Bits total() const { return carried + fresh; }
  friend bool operator==(const TaskQueue&, const TaskQueue&) = default;
};

struct Processor {
  double freq_hz = 0;        // f
  double kappa = 0;          // effective switched capacitance
  double cycles_per_bit = 0; // c
  double slot_s = 0;         // tau

  // Whole bits that fit in one slot: floor(f tau / c).
  Bits capacity_bits() const;
  double seconds_for(Bits bits) const;
  // kappa f^3 t
  double energy_for(double seconds) const;
};

struct LocalStep {
  double t_cp = 0;
  double energy_j = 0;
  Bits processed = 0;
  TaskQueue queue;  // carried = new backlog, fresh = 0
};

LocalStep local_process_step(const TaskQueue& queue, const Processor& cpu);

struct Arrival {
  std::size_t ue = 0;
  Bits bits = 0;
};

struct ServerCharge {
  std::size_t ue = 0;
  double t_cp = 0;      // slot time until this UE's bits are done (tau if unfinished)
  double energy_j = 0;  // only the processing time not already charged to earlier arrivals
};

struct ServerStep {
  std::vector<ServerCharge> charges;  // same order as arrivals
  Bits processed = 0;
  TaskQueue queue;
};

// Serves the carried backlog first, then each arrival in ascending UE order,
// all inside one tau budget. With a single arrival this is exactly the
// single-UE edge-server recursion. Throws ContractViolation on unsorted input.
ServerStep server_process_step(const TaskQueue& queue, std::span<const Arrival> arrivals,
                               const Processor& cpu);

}  // namespace agmec::mec
