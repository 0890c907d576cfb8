#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include <httplib.h>

#include "deliver/error.hpp"
#include "deliver/nlu.hpp"

using namespace deliver;
using namespace std::chrono_literals;

namespace {

Errc parse_error(std::string_view text) {
  try {
    (void)parse_command(text, default_home_map());
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return Errc::InvalidConfig;
}

}  // namespace

TEST(Grammar, ReferenceCommand) {
  const TaskSpec t = parse_command("Bring me a glass of water from the kitchen to the bedroom.", default_home_map());
  EXPECT_EQ(t.item, "glass of water");
  EXPECT_EQ(t.pickup, (Point{3.5, 16.5}));
  EXPECT_EQ(t.drop, (Point{16.5, 16.5}));
  EXPECT_EQ(t.pickup_zone, "kitchen");
  EXPECT_EQ(t.drop_zone, "bedroom");
}

TEST(Grammar, MultiWordZonesAndFillers) {
  const TaskSpec t = parse_command("Could you please carry the box to... no: carry box from Storage Area to Living Area",
                                   default_home_map());
  // First "from", last "to": the item swallows the false start.
  EXPECT_EQ(t.pickup_zone, "storage area");
  EXPECT_EQ(t.drop_zone, "living area");
}

TEST(Grammar, ItemMayContainTo) {
  const TaskSpec t = parse_command("take the note to mom from the kitchen to the bathroom", default_home_map());
  EXPECT_EQ(t.item, "note to mom");
  EXPECT_EQ(t.drop_zone, "bathroom");
}

TEST(Grammar, ErrorCodes) {
  EXPECT_EQ(parse_error(""), Errc::UnparsableCommand);
  EXPECT_EQ(parse_error("dance from the kitchen to the bedroom"), Errc::UnparsableCommand);
  EXPECT_EQ(parse_error("bring water to the bedroom"), Errc::UnparsableCommand);
  EXPECT_EQ(parse_error("bring water from the kitchen"), Errc::UnparsableCommand);
  EXPECT_EQ(parse_error("bring from the kitchen to the bedroom"), Errc::UnparsableCommand);
  EXPECT_EQ(parse_error("bring water from the kitchen to"), Errc::UnparsableCommand);
  EXPECT_EQ(parse_error("bring water from the attic to the bedroom"), Errc::UnknownZone);
  EXPECT_EQ(parse_error("bring water from the kitchen to the garage"), Errc::UnknownZone);
  EXPECT_EQ(parse_error("bring water from the kitchen to the KITCHEN"), Errc::SameZone);
}

TEST(InterpreterConfig, Validation) {
  InterpreterConfig c;
  EXPECT_NO_THROW(c.validate());
  c.mode = InterpreterMode::External;
  EXPECT_THROW(c.validate(), Error);
  c.endpoint = "http://127.0.0.1:1/x";
  EXPECT_NO_THROW(c.validate());
  c.timeout = 0ms;
  EXPECT_THROW(c.validate(), Error);
}

TEST(ValidateTask, RejectsOutsideAndEqual) {
  const Workspace ws = unit_grid_workspace(20, 20);
  EXPECT_THROW(validate_task(TaskSpec{{1, 1}, {21, 1}, "x", "", "", ""}, ws), Error);
  EXPECT_THROW(validate_task(TaskSpec{{1, 1}, {1, 1}, "x", "", "", ""}, ws), Error);
  EXPECT_NO_THROW(validate_task(TaskSpec{{1, 1}, {2, 1}, "x", "", "", ""}, ws));
}

class ExternalInterpreter : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/ok", [](const httplib::Request& req, httplib::Response& res) {
      last_body() = req.body;
      res.set_content(R"({"pickup":"Kitchen","drop":"bedroom","item":"A Glass of Water"})", "application/json");
    });
    server_.Post("/attic", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"pickup":"Attic","drop":"bedroom","item":"box"})", "application/json");
    });
    server_.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"pickup": 3})", "application/json");
    });
    server_.Post("/error", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    server_.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(600ms);
      res.set_content(R"({"pickup":"Kitchen","drop":"Bedroom","item":"late"})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  InterpreterConfig config(const std::string& path, bool fallback) const {
    InterpreterConfig c;
    c.mode = InterpreterMode::External;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_) + path;
    c.fallback = fallback;
    c.timeout = 200ms;
    return c;
  }

  static std::string& last_body() {
    static std::string body;
    return body;
  }

  static constexpr const char* kCommand = "bring me the remote from the living area to the bathroom";

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ExternalInterpreter, UsesEndpointAnswer) {
  const TaskSpec t = interpret(kCommand, default_home_map(), config("/ok", false));
  EXPECT_EQ(t.pickup_zone, "kitchen");
  EXPECT_EQ(t.drop_zone, "bedroom");
  EXPECT_EQ(t.item, "glass of water");
  EXPECT_NE(last_body().find("\"zones\""), std::string::npos);
  EXPECT_NE(last_body().find("living area"), std::string::npos);
}

TEST_F(ExternalInterpreter, UnknownZoneFromEndpointIsAnError) {
  for (bool fallback : {false, true}) {
    try {
      (void)interpret(kCommand, default_home_map(), config("/attic", fallback));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UnknownZone);
    }
  }
}

TEST_F(ExternalInterpreter, MalformedResponse) {
  try {
    (void)interpret(kCommand, default_home_map(), config("/garbage", false));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedResponse);
  }
  const TaskSpec t = interpret(kCommand, default_home_map(), config("/garbage", true));
  EXPECT_EQ(t.pickup_zone, "living area");
}

TEST_F(ExternalInterpreter, ServerErrorAndTimeout) {
  for (const char* path : {"/error", "/slow"}) {
    try {
      (void)interpret(kCommand, default_home_map(), config(path, false));
      FAIL() << path;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::EndpointUnreachable) << path;
    }
    const TaskSpec t = interpret(kCommand, default_home_map(), config(path, true));
    EXPECT_EQ(t.drop_zone, "bathroom") << path;
  }
}

TEST(ExternalInterpreterOffline, UnreachableFallsBack) {
  InterpreterConfig c;
  c.mode = InterpreterMode::External;
  c.endpoint = "http://127.0.0.1:9/parse";  // discard port, nothing listens
  c.timeout = 200ms;
  c.fallback = true;
  EXPECT_EQ(interpret("take the mug from the kitchen to the bedroom", default_home_map(), c).item, "mug");
  c.fallback = false;
  try {
    (void)interpret("take the mug from the kitchen to the bedroom", default_home_map(), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EndpointUnreachable);
  }
}
