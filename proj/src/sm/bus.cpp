#include "vric/sm/bus.hpp"

#include <algorithm>
#include <tuple>

namespace vric::sm {

void MessageBus::add_subscriber(const std::string& name) {
  std::lock_guard lock(mu_);
  consumed_.try_emplace(name);
}

std::uint64_t MessageBus::now() const {
  std::lock_guard lock(mu_);
  return now_;
}

void MessageBus::advance_to(std::uint64_t tick) {
  std::lock_guard lock(mu_);
  now_ = std::max(now_, tick);
}

void MessageBus::publish(BusEnvelope env) {
  std::lock_guard lock(mu_);
  if (env.delivery_tick < now_) {
    throw std::invalid_argument("publish: delivery_tick " +
                                std::to_string(env.delivery_tick) +
                                " is before current tick " +
                                std::to_string(now_));
  }
  log_.push_back(Stored{std::move(env), next_seq_++});
}

std::vector<BusEnvelope> MessageBus::poll(const std::string& subscriber,
                                          std::uint64_t up_to_tick) {
  std::lock_guard lock(mu_);
  auto it = consumed_.find(subscriber);
  if (it == consumed_.end()) {
    throw UnknownSubscriber("no such subscriber: " + subscriber);
  }
  std::vector<bool>& seen = it->second;
  seen.resize(log_.size(), false);

  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < log_.size(); ++i) {
    if (!seen[i] && log_[i].env.delivery_tick <= up_to_tick) {
      ready.push_back(i);
    }
  }
  std::sort(ready.begin(), ready.end(), [this](std::size_t a, std::size_t b) {
    const Stored& sa = log_[a];
    const Stored& sb = log_[b];
    return std::tie(sa.env.delivery_tick, sa.env.sender, sa.send_seq) <
           std::tie(sb.env.delivery_tick, sb.env.sender, sb.send_seq);
  });

  std::vector<BusEnvelope> out;
  out.reserve(ready.size());
  for (std::size_t i : ready) {
    seen[i] = true;
    out.push_back(log_[i].env);
  }
  return out;
}

}  // namespace vric::sm
