#pragma once

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vric/sm/messages.hpp"

namespace vric::sm {

struct UnknownSubscriber : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// In-process message bus emulating the E2 interface between agents and the
// near-RT RIC. Time is virtual: an envelope published with delivery_tick = t
// becomes visible to polls with up_to_tick >= t. Poll order is deterministic:
// (delivery_tick, sender id, send order). Each subscriber consumes every
// envelope exactly once.
//
// publish/poll are safe to call from multiple threads; the reference harness
// drives everything single-threaded in lockstep.
class MessageBus {
 public:
  void add_subscriber(const std::string& name);

  [[nodiscard]] std::uint64_t now() const;
  void advance_to(std::uint64_t tick);

  // Requires env.delivery_tick >= now(); publishing into the past is a
  // programming error.
  void publish(BusEnvelope env);

  // Returns every not-yet-consumed envelope with delivery_tick <= up_to_tick,
  // sorted by (delivery_tick, sender, send order), and marks them consumed
  // for this subscriber.
  std::vector<BusEnvelope> poll(const std::string& subscriber,
                                std::uint64_t up_to_tick);

 private:
  struct Stored {
    BusEnvelope env;
    std::uint64_t send_seq;
  };

  mutable std::mutex mu_;
  std::uint64_t now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::vector<Stored> log_;
  std::unordered_map<std::string, std::vector<bool>> consumed_;
};

}  // namespace vric::sm
