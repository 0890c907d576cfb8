#include "deliver/coordination.hpp"

#include <string>

#include "deliver/error.hpp"

namespace deliver {

std::string_view to_string(FsmState s) noexcept {
  switch (s) {
    case FsmState::Idle: return "Idle";
    case FsmState::Navigate: return "Navigate";
    case FsmState::Pickup: return "Pickup";
    case FsmState::Relay: return "Relay";
    case FsmState::Deliver: return "Deliver";
  }
  return "?";
}

std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::Initiator: return "initiator";
    case Role::Intermediate: return "intermediate";
    case Role::Final: return "final";
    case Role::Bystander: return "bystander";
  }
  return "?";
}

std::string_view to_string(StatusLed led) noexcept {
  switch (led) {
    case StatusLed::Off: return "off";
    case StatusLed::Green: return "green";
    case StatusLed::Blue: return "blue";
  }
  return "?";
}

std::string_view to_string(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::HandoffReady: return "HandoffReady";
    case MessageKind::HandoffAck: return "HandoffAck";
    case MessageKind::TaskComplete: return "TaskComplete";
  }
  return "?";
}

namespace {

[[noreturn]] void illegal(const RobotFsm& fsm, std::string_view what) {
  throw Error(Errc::IllegalTransition, "robot " + std::to_string(index_of(fsm.robot_id)) + " in " +
                                           std::string(to_string(fsm.state)) + ": " + std::string(what));
}

const Waypoint& front(const RobotFsm& fsm, std::string_view what) {
  if (fsm.waypoints.empty()) illegal(fsm, std::string(what) + " with no waypoint left");
  return fsm.waypoints.front();
}

void pop_front(RobotFsm& fsm) { fsm.waypoints.erase(fsm.waypoints.begin()); }

HandoffMessage make_message(const RobotFsm& fsm, MessageKind kind, RobotId to, Point at, int tick,
                            StatusLed led) {
  return {kind, fsm.task_id, fsm.robot_id, to, at, tick, led};
}

// Receiver takes possession and acknowledges the sender.
HandoffMessage accept_handoff(RobotFsm& fsm, RobotId sender, Point at, int tick) {
  pop_front(fsm);
  fsm.carrying = fsm.item;
  fsm.status_led = StatusLed::Green;
  fsm.awaiting_at.reset();
  fsm.pending_ready.reset();
  return make_message(fsm, MessageKind::HandoffAck, sender, at, tick, StatusLed::Green);
}

struct Stepper {
  const RobotFsm& before;
  FsmStep& out;

  void operator()(const event::AssignSegment& e) const {
    RobotFsm& fsm = out.fsm;
    if (fsm.state != FsmState::Idle) illegal(before, "AssignSegment");
    if (e.role == Role::Bystander || e.waypoints.empty()) illegal(before, "empty segment assignment");
    fsm.state = FsmState::Navigate;
    fsm.role = e.role;
    fsm.task_id = e.task_id;
    fsm.item = e.item;
    fsm.waypoints = e.waypoints;
    fsm.awaiting_at.reset();
    fsm.pending_ready.reset();
  }

  void operator()(const event::ArrivedWaypoint& e) const {
    RobotFsm& fsm = out.fsm;
    if (fsm.state != FsmState::Navigate || fsm.awaiting_at) illegal(before, "ArrivedWaypoint");
    const Waypoint& wp = front(fsm, "ArrivedWaypoint");
    switch (wp.kind) {
      case WaypointKind::Pickup:
        if (fsm.carrying) illegal(before, "pickup while already carrying");
        fsm.state = FsmState::Pickup;
        return;
      case WaypointKind::OutgoingTransfer:
        if (!fsm.carrying) illegal(before, "outgoing transfer without the item");
        fsm.state = FsmState::Relay;
        fsm.status_led = StatusLed::Blue;
        out.messages.push_back(
            make_message(fsm, MessageKind::HandoffReady, wp.peer, e.at, e.tick, StatusLed::Blue));
        return;
      case WaypointKind::IncomingTransfer:
        if (fsm.carrying) illegal(before, "incoming transfer while carrying");
        if (fsm.pending_ready) {
          out.messages.push_back(accept_handoff(fsm, wp.peer, e.at, e.tick));
        } else {
          fsm.awaiting_at = e.at;
        }
        return;
      case WaypointKind::Drop:
        if (!fsm.carrying) illegal(before, "drop without the item");
        fsm.state = FsmState::Deliver;
        return;
    }
  }

  void operator()(const event::PickupDone&) const {
    RobotFsm& fsm = out.fsm;
    if (fsm.state != FsmState::Pickup) illegal(before, "PickupDone");
    pop_front(fsm);
    fsm.state = FsmState::Navigate;
    fsm.carrying = fsm.item;
    fsm.status_led = StatusLed::Green;
  }

  void operator()(const event::MessageReceived& e) const {
    RobotFsm& fsm = out.fsm;
    const HandoffMessage& msg = e.message;
    if (msg.to != fsm.robot_id || msg.task_id != fsm.task_id) illegal(before, "misaddressed message");

    if (msg.kind == MessageKind::HandoffAck && fsm.state == FsmState::Relay) {
      const Waypoint& wp = front(fsm, "HandoffAck");
      if (wp.kind != WaypointKind::OutgoingTransfer || wp.peer != msg.from) {
        illegal(before, "HandoffAck from an unexpected robot");
      }
      pop_front(fsm);
      fsm.state = FsmState::Idle;
      fsm.carrying.reset();
      fsm.status_led = StatusLed::Off;
      return;
    }
    if (msg.kind == MessageKind::HandoffReady && fsm.state == FsmState::Navigate) {
      const Waypoint& wp = front(fsm, "HandoffReady");
      if (wp.kind != WaypointKind::IncomingTransfer || wp.peer != msg.from || fsm.pending_ready) {
        illegal(before, "unexpected HandoffReady");
      }
      if (fsm.awaiting_at) {
        out.messages.push_back(accept_handoff(fsm, msg.from, *fsm.awaiting_at, e.tick));
      } else {
        fsm.pending_ready = msg;
      }
      return;
    }
    illegal(before, std::string(to_string(msg.kind)));
  }

  void operator()(const event::DropDone& e) const {
    RobotFsm& fsm = out.fsm;
    if (fsm.state != FsmState::Deliver) illegal(before, "DropDone");
    pop_front(fsm);
    fsm.state = FsmState::Idle;
    fsm.carrying.reset();
    fsm.status_led = StatusLed::Off;
    out.messages.push_back(
        make_message(fsm, MessageKind::TaskComplete, kCoordinator, e.at, e.tick, StatusLed::Off));
  }
};

}  // namespace

FsmStep fsm_step(const RobotFsm& fsm, const FsmEvent& event) {
  FsmStep out{fsm, {}};
  std::visit(Stepper{fsm, out}, event);
  return out;
}

MessageBus::MessageBus(int delay_ticks) : delay_(delay_ticks) {
  if (delay_ticks < 0) throw Error(Errc::InvalidConfig, "message delay must be non-negative");
}

void MessageBus::send(const HandoffMessage& message) {
  queue_.push_back({message.tick + delay_, message});
}

std::vector<HandoffMessage> MessageBus::poll(RobotId robot, int tick) {
  std::vector<HandoffMessage> out;
  for (auto it = queue_.begin(); it != queue_.end();) {
    if (it->message.to == robot && it->deliver_at <= tick) {
      out.push_back(it->message);
      it = queue_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

}  // namespace deliver
