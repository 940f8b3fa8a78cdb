#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cayscheme/runner.hpp"

using namespace cayscheme;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cfg(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig base(const std::string& command, const std::string& group = "") {
  RunConfig cfg;
  cfg.command = command;
  cfg.group_source = group;
  return cfg;
}

}  // namespace

TEST_CASE("eigen command emits the order-21 fixture") {
  RunConfig cfg = base("eigen", "builtin:semidirect(7,3,2)");
  cfg.format = "json";
  RunResult r = run_cfg(cfg);
  REQUIRE(r.code == kExitOk);
  json doc = json::parse(r.out);
  CHECK(doc["P"] == json::parse("[[1,6,14],[1,6,-7],[1,-1,0]]"));
  CHECK(doc["multiplicities"] == json::parse("[1,2,18]"));
  CHECK(doc["frame_quotient"] == "21609");
}

TEST_CASE("verify-odd exit codes") {
  RunResult pass = run_cfg(base("verify-odd", "builtin:cyclic(9)"));
  CHECK(pass.code == kExitOk);
  CHECK(pass.out.find("3/3") != std::string::npos);

  RunResult even = run_cfg(base("verify-odd", "builtin:cyclic(4)"));
  CHECK(even.code == kExitConfig);
}

TEST_CASE("verify-gs and quotient-check succeed on cyclic(9)") {
  CHECK(run_cfg(base("verify-gs", "builtin:cyclic(9)")).code == kExitOk);
  CHECK(run_cfg(base("quotient-check", "builtin:cyclic(9)")).code == kExitOk);
}

TEST_CASE("describe-group and classes") {
  RunResult r = run_cfg(base("describe-group", "builtin:heisenberg(3)"));
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("order 27") != std::string::npos);
  CHECK(r.out.find("non-abelian") != std::string::npos);

  RunConfig cfg = base("classes", "builtin:cyclic(9)");
  cfg.format = "json";
  RunResult c = run_cfg(cfg);
  REQUIRE(c.code == kExitOk);
  json doc = json::parse(c.out);
  CHECK(doc["pc"] == json::parse("[[0],[3,6],[1,2,4,5,7,8]]"));
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run_cfg(base("eigen", "builtin:nonsense(3)")).code == kExitConfig);
  CHECK(run_cfg(base("eigen", "/tmp/missing-group-file.json")).code == kExitConfig);
  CHECK(run_cfg(base("bogus-command", "builtin:cyclic(3)")).code == kExitConfig);
  RunConfig sweep = base("sweep");
  sweep.order_lo = 9;
  sweep.order_hi = 3;
  CHECK(run_cfg(sweep).code == kExitConfig);
}

TEST_CASE("sweep over small odd orders passes") {
  RunConfig cfg = base("sweep");
  cfg.order_lo = 3;
  cfg.order_hi = 9;
  cfg.odd_only = true;
  cfg.format = "json";
  RunResult r = run_cfg(cfg);
  REQUIRE(r.code == kExitOk);
  json doc = json::parse(r.out);
  CHECK(doc["all_ok"] == true);
  CHECK(doc["groups"].size() == 5);  // 3, 5, 7, 9, 3x3
}

TEST_CASE("json reports are byte-identical across runs with a fixed seed") {
  for (const char* command : {"eigen", "frame-quotient", "quotient-check", "verify-odd"}) {
    CAPTURE(command);
    RunConfig cfg = base(command, "builtin:semidirect(7,3,2)");
    cfg.format = "json";
    cfg.seed = 42;
    RunResult a = run_cfg(cfg);
    RunResult b = run_cfg(cfg);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  RunConfig sweep = base("sweep");
  sweep.order_lo = 3;
  sweep.order_hi = 15;
  sweep.odd_only = true;
  sweep.format = "json";
  sweep.seed = 42;
  RunResult a = run_cfg(sweep);
  RunResult b = run_cfg(sweep);
  CHECK(a.out == b.out);
}

TEST_CASE("plain frame-quotient output names both schemes") {
  RunResult r = run_cfg(base("frame-quotient", "builtin:semidirect(7,3,2)"));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("22235661") != std::string::npos);
  CHECK(r.out.find("21609") != std::string::npos);
  CHECK(r.out.find("odd") != std::string::npos);
}
