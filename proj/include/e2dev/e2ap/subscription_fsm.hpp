#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace e2dev::e2ap {

enum class SubscriptionState { Idle, Pending, Active, Deleting, Closed };

enum class SubscriptionEvent {
  SendSubReq,
  RecvSubRespAdmitted,
  RecvSubRespNoneAdmitted,
  RecvSubFail,
  RecvIndication,
  SendDelReq,
  RecvDelResp,
  PeerDisconnect,
};

inline constexpr SubscriptionEvent kAllSubscriptionEvents[] = {
    SubscriptionEvent::SendSubReq,     SubscriptionEvent::RecvSubRespAdmitted,
    SubscriptionEvent::RecvSubRespNoneAdmitted, SubscriptionEvent::RecvSubFail,
    SubscriptionEvent::RecvIndication, SubscriptionEvent::SendDelReq,
    SubscriptionEvent::RecvDelResp,    SubscriptionEvent::PeerDisconnect,
};

enum class FsmAction {
  EmitSubscriptionRequest,  // frame type 4
  NotifyAdmitted,
  NotifyRefused,
  Deliver,
  EmitDeleteRequest,        // frame type 8
  NotifyDeleted,
  NotifyClosed,
  ProtocolViolation,
};

struct Transition {
  SubscriptionState next;
  std::vector<FsmAction> actions;
};

const char* to_string(SubscriptionState s);
const char* to_string(SubscriptionEvent e);

// Pure transition table. Indications are delivered in Active and in Deleting
// (late indications racing a delete). Closed is absorbing. Any pair not in the
// table yields ProtocolViolation with the state unchanged.
Transition subscription_transition(SubscriptionState state, SubscriptionEvent event);

enum class SnVerdict : std::uint8_t { ok = 0, gap = 1, duplicate = 2 };
const char* to_string(SnVerdict v);

// First expected sequence number is 0. Only `ok` advances the tracker.
class SequenceTracker {
 public:
  SnVerdict validate(std::uint32_t sn);
  std::optional<std::uint32_t> last() const { return last_; }

 private:
  std::optional<std::uint32_t> last_;
};

/// One subscription's protocol state: the FSM plus its sequence tracker.
class SubscriptionFsm {
 public:
  SubscriptionState state() const { return state_; }

  Transition apply(SubscriptionEvent event);

  // Validates the sequence number of an indication; call only when `apply`
  // returned Deliver.
  SnVerdict validate_sn(std::uint32_t sn) { return sn_.validate(sn); }

 private:
  SubscriptionState state_ = SubscriptionState::Idle;
  SequenceTracker sn_;
};

}  // namespace e2dev::e2ap
