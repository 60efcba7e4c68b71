#include "e2dev/e2ap/subscription_fsm.hpp"

namespace e2dev::e2ap {

using S = SubscriptionState;
using E = SubscriptionEvent;
using A = FsmAction;

const char* to_string(SubscriptionState s) {
  switch (s) {
    case S::Idle: return "Idle";
    case S::Pending: return "Pending";
    case S::Active: return "Active";
    case S::Deleting: return "Deleting";
    case S::Closed: return "Closed";
  }
  return "?";
}

const char* to_string(SubscriptionEvent e) {
  switch (e) {
    case E::SendSubReq: return "SendSubReq";
    case E::RecvSubRespAdmitted: return "RecvSubResp(admitted)";
    case E::RecvSubRespNoneAdmitted: return "RecvSubResp(none)";
    case E::RecvSubFail: return "RecvSubFail";
    case E::RecvIndication: return "RecvIndication";
    case E::SendDelReq: return "SendDelReq";
    case E::RecvDelResp: return "RecvDelResp";
    case E::PeerDisconnect: return "PeerDisconnect";
  }
  return "?";
}

const char* to_string(SnVerdict v) {
  switch (v) {
    case SnVerdict::ok: return "ok";
    case SnVerdict::gap: return "gap";
    case SnVerdict::duplicate: return "duplicate";
  }
  return "?";
}

Transition subscription_transition(SubscriptionState state, SubscriptionEvent event) {
  if (state == S::Closed) {
    if (event == E::PeerDisconnect) return {S::Closed, {}};
    return {S::Closed, {A::ProtocolViolation}};
  }
  if (event == E::PeerDisconnect) return {S::Closed, {A::NotifyClosed}};

  switch (state) {
    case S::Idle:
      if (event == E::SendSubReq) return {S::Pending, {A::EmitSubscriptionRequest}};
      break;
    case S::Pending:
      if (event == E::RecvSubRespAdmitted) return {S::Active, {A::NotifyAdmitted}};
      if (event == E::RecvSubRespNoneAdmitted || event == E::RecvSubFail) {
        return {S::Closed, {A::NotifyRefused}};
      }
      break;
    case S::Active:
      if (event == E::RecvIndication) return {S::Active, {A::Deliver}};
      if (event == E::SendDelReq) return {S::Deleting, {A::EmitDeleteRequest}};
      break;
    case S::Deleting:
      if (event == E::RecvIndication) return {S::Deleting, {A::Deliver}};
      if (event == E::RecvDelResp) return {S::Closed, {A::NotifyDeleted}};
      break;
    case S::Closed:
      break;
  }
  return {state, {A::ProtocolViolation}};
}

SnVerdict SequenceTracker::validate(std::uint32_t sn) {
  const std::uint64_t expected = last_ ? std::uint64_t{*last_} + 1 : 0;
  if (sn == expected) {
    last_ = sn;
    return SnVerdict::ok;
  }
  if (last_ && sn <= *last_) return SnVerdict::duplicate;
  return SnVerdict::gap;
}

Transition SubscriptionFsm::apply(SubscriptionEvent event) {
  auto t = subscription_transition(state_, event);
  state_ = t.next;
  return t;
}

}  // namespace e2dev::e2ap
