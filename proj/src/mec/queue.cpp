#include "agmec/mec/queue.hpp"

#include <algorithm>
#include <cmath>

#include "agmec/errors.hpp"

namespace agmec::mec {

Bits Processor::capacity_bits() const {
  return static_cast<Bits>(std::floor(freq_hz * slot_s / cycles_per_bit));
}

double Processor::seconds_for(Bits bits) const {
  return cycles_per_bit * static_cast<double>(bits) / freq_hz;
}

double Processor::energy_for(double seconds) const {
  return kappa * freq_hz * freq_hz * freq_hz * seconds;
}

LocalStep local_process_step(const TaskQueue& queue, const Processor& cpu) {
  if (queue.carried < 0 || queue.fresh < 0) throw ContractViolation("negative queue length");
  LocalStep out;
  const Bits buffered = queue.total();
  const Bits cap = cpu.capacity_bits();
  if (buffered <= cap) {
    out.t_cp = cpu.seconds_for(buffered);
    out.processed = buffered;
  } else {
    out.t_cp = cpu.slot_s;
    out.processed = cap;
  }
  out.queue.carried = buffered - out.processed;
  out.energy_j = cpu.energy_for(out.t_cp);
  return out;
}

ServerStep server_process_step(const TaskQueue& queue, std::span<const Arrival> arrivals,
                               const Processor& cpu) {
  if (queue.carried < 0 || queue.fresh < 0) throw ContractViolation("negative queue length");
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    if (arrivals[i].bits < 0) throw ContractViolation("negative arrival");
    if (i > 0 && arrivals[i].ue <= arrivals[i - 1].ue)
      throw ContractViolation("server arrivals must be sorted by ascending UE index");
  }

  ServerStep out;
  const Bits cap = cpu.capacity_bits();
  const Bits ahead = queue.total();
  Bits consumed = std::min(ahead, cap);
  bool saturated = ahead > cap;

  double charged = 0;
  Bits total_in = ahead;
  for (const auto& a : arrivals) {
    total_in += a.bits;
    ServerCharge ch;
    ch.ue = a.ue;
    if (!saturated && consumed + a.bits <= cap) {
      consumed += a.bits;
      ch.t_cp = std::min(cpu.slot_s, cpu.seconds_for(consumed));
    } else {
      consumed = cap;
      saturated = true;
      ch.t_cp = cpu.slot_s;
    }
    ch.energy_j = cpu.energy_for(ch.t_cp - charged);
    charged = ch.t_cp;
    out.charges.push_back(ch);
  }

  out.processed = std::min(total_in, cap);
  out.queue.carried = total_in - out.processed;
  return out;
}

}  // namespace agmec::mec
