#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deliver/geometry.hpp"

namespace deliver {

enum class FsmState { Idle, Navigate, Pickup, Relay, Deliver };
enum class Role { Initiator, Intermediate, Final, Bystander };
enum class StatusLed { Off, Green, Blue };
enum class MessageKind { HandoffReady, HandoffAck, TaskComplete };
enum class WaypointKind { Pickup, IncomingTransfer, OutgoingTransfer, Drop };

/// Addressee of TaskComplete.
inline constexpr RobotId kCoordinator{0xFFFFFFFFu};

std::string_view to_string(FsmState s) noexcept;
std::string_view to_string(Role r) noexcept;
std::string_view to_string(StatusLed led) noexcept;
std::string_view to_string(MessageKind kind) noexcept;

struct Waypoint {
  Point at;
  WaypointKind kind = WaypointKind::Pickup;
  RobotId peer{};  // sender for incoming transfers, receiver for outgoing ones

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

struct HandoffMessage {
  MessageKind kind = MessageKind::HandoffReady;
  int task_id = 0;
  RobotId from{};
  RobotId to{};
  Point at;
  int tick = 0;
  StatusLed status_led = StatusLed::Off;

  friend bool operator==(const HandoffMessage&, const HandoffMessage&) = default;
};

struct RobotFsm {
  RobotId robot_id{};
  FsmState state = FsmState::Idle;
  Role role = Role::Bystander;
  std::vector<Waypoint> waypoints;  // remaining, front first
  std::optional<std::string> carrying;
  StatusLed status_led = StatusLed::Off;
  int task_id = 0;
  std::string item;
  // Receiver side of a handoff: where it arrived and waits, or the ready
  // signal that beat it there.
  std::optional<Point> awaiting_at;
  std::optional<HandoffMessage> pending_ready;

  friend bool operator==(const RobotFsm&, const RobotFsm&) = default;
};

namespace event {
struct AssignSegment {
  int tick = 0;
  int task_id = 0;
  Role role = Role::Initiator;
  std::string item;
  std::vector<Waypoint> waypoints;
};
struct ArrivedWaypoint {
  int tick = 0;
  Point at;  // where the robot actually is
};
struct PickupDone {
  int tick = 0;
};
struct MessageReceived {
  int tick = 0;
  HandoffMessage message;
};
struct DropDone {
  int tick = 0;
  Point at;
};
}  // namespace event

using FsmEvent = std::variant<event::AssignSegment, event::ArrivedWaypoint, event::PickupDone,
                              event::MessageReceived, event::DropDone>;

struct FsmStep {
  RobotFsm fsm;
  std::vector<HandoffMessage> messages;
};

/// Pure transition function. Throws IllegalTransition for events the
/// current state does not accept.
///
///   Idle     + AssignSegment                      -> Navigate
///   Navigate + ArrivedWaypoint (pickup)           -> Pickup
///   Pickup   + PickupDone                         -> Navigate, carrying
///   Navigate + ArrivedWaypoint (outgoing)         -> Relay, emits HandoffReady
///   Relay    + HandoffAck                         -> Idle, carrying cleared
///   Navigate + ArrivedWaypoint (incoming)         -> Navigate, awaiting (or acks a buffered ready)
///   Navigate + HandoffReady                       -> Navigate, emits HandoffAck if awaiting
///   Navigate + ArrivedWaypoint (drop)             -> Deliver
///   Deliver  + DropDone                           -> Idle, emits TaskComplete
FsmStep fsm_step(const RobotFsm& fsm, const FsmEvent& event);

/// Reliable FIFO bus with a fixed delivery delay in ticks.
class MessageBus {
 public:
  explicit MessageBus(int delay_ticks = 0);

  /// Deliverable to message.to at message.tick + delay.
  void send(const HandoffMessage& message);
  /// Every deliverable message for `robot`, in send order, each exactly once.
  std::vector<HandoffMessage> poll(RobotId robot, int tick);

  [[nodiscard]] std::size_t pending() const noexcept { return queue_.size(); }
  [[nodiscard]] int delay() const noexcept { return delay_; }

 private:
  struct Envelope {
    int deliver_at;
    HandoffMessage message;
  };
  int delay_;
  std::deque<Envelope> queue_;
};

}  // namespace deliver
