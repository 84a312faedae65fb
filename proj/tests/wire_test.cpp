#include <doctest.h>

#include <sys/socket.h>
#include <unistd.h>

#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "viewscout/errors.hpp"
#include "viewscout/rng.hpp"
#include "viewscout/wire.hpp"

using namespace viewscout;

namespace {

struct SocketPair {
  int a = -1;
  int b = -1;

  SocketPair() {
    int fds[2];
    REQUIRE(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0);
    a = fds[0];
    b = fds[1];
  }
  ~SocketPair() {
    close_a();
    close_b();
  }
  void close_a() {
    if (a != -1) ::close(a);
    a = -1;
  }
  void close_b() {
    if (b != -1) ::close(b);
    b = -1;
  }
};

wire::ScoreRequest random_request(Rng& rng) {
  wire::ScoreRequest req;
  req.request_id = rng.next_u64();
  const int m = 1 + static_cast<int>(rng.next_u64() % 7);
  for (int i = 0; i < m; ++i) {
    CameraPose pose;
    pose.position = {rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    Vec3 d{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (d.norm() < 1e-3) d = {1.0, 0.0, 0.0};
    pose.direction = d.normalized();
    pose.fov_degrees = static_cast<double>(static_cast<float>(rng.uniform(1.0, 179.0)));
    req.poses.push_back(pose);
  }
  return req;
}

}  // namespace

TEST_CASE("request bytes are pinned little-endian") {
  wire::ScoreRequest req;
  req.request_id = 0x0102030405060708ULL;
  req.poses.push_back(CameraPose{{1.0, 2.0, 3.0}, {0.0, 1.0, 0.0}, 60.0});

  const std::vector<std::uint8_t> bytes = wire::encode_request(req);
  const std::vector<std::uint8_t> expected = {
      0x01, 0x00,                                      // version
      0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01,  // request id
      0x01, 0x00, 0x00, 0x00,                          // pose count
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xf0, 0x3f,  // position.x = 1.0
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x40,  // position.y = 2.0
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x08, 0x40,  // position.z = 3.0
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // direction.x = 0.0
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xf0, 0x3f,  // direction.y = 1.0
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // direction.z = 0.0
      0x00, 0x00, 0x70, 0x42,                          // fov = 60.0f
  };
  CHECK(bytes == expected);
  CHECK(bytes.size() == wire::kRequestHeaderBytes + wire::kPoseBytes);
}

TEST_CASE("response bytes are pinned little-endian") {
  wire::ScoreResponse resp;
  resp.request_id = 0x00000000deadbeefULL;
  resp.status = wire::Status::kOk;
  resp.scores = {0.0f, 1.0f, 0.5f};

  const std::vector<std::uint8_t> bytes = wire::encode_response(resp);
  const std::vector<std::uint8_t> expected = {
      0x01, 0x00,                                      // version
      0xef, 0xbe, 0xad, 0xde, 0x00, 0x00, 0x00, 0x00,  // request id
      0x00,                                            // status ok
      0x03, 0x00, 0x00, 0x00,                          // score count
      0x00, 0x00, 0x00, 0x00,                          // 0.0f
      0x00, 0x00, 0x80, 0x3f,                          // 1.0f
      0x00, 0x00, 0x00, 0x3f,                          // 0.5f
  };
  CHECK(bytes == expected);
}

TEST_CASE("requests roundtrip through encode and decode") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const wire::ScoreRequest req = random_request(rng);
    const wire::ScoreRequest back = wire::decode_request(wire::encode_request(req));
    CHECK(back.protocol_version == wire::kProtocolVersion);
    CHECK(back.request_id == req.request_id);
    REQUIRE(back.poses.size() == req.poses.size());
    for (std::size_t i = 0; i < req.poses.size(); ++i) {
      CHECK(back.poses[i] == req.poses[i]);
    }
  }
}

TEST_CASE("responses roundtrip through encode and decode") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    wire::ScoreResponse resp;
    resp.request_id = rng.next_u64();
    const std::uint64_t kind = rng.next_u64() % 3;
    resp.status = static_cast<wire::Status>(kind);
    if (resp.status == wire::Status::kOk) {
      const int n = static_cast<int>(rng.next_u64() % 40);
      for (int i = 0; i < n; ++i) resp.scores.push_back(static_cast<float>(rng.next_double()));
    }
    const wire::ScoreResponse back = wire::decode_response(wire::encode_response(resp));
    CHECK(back.request_id == resp.request_id);
    CHECK(back.status == resp.status);
    CHECK(back.scores == resp.scores);
  }
}

TEST_CASE("decode_request rejects malformed payloads") {
  wire::ScoreRequest good;
  good.request_id = 7;
  good.poses.push_back(CameraPose{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 60.0});
  const std::vector<std::uint8_t> bytes = wire::encode_request(good);
  CHECK_NOTHROW((void)wire::decode_request(bytes));

  SUBCASE("truncated header") {
    const std::vector<std::uint8_t> shorter(bytes.begin(), bytes.begin() + 13);
    CHECK_THROWS_AS((void)wire::decode_request(shorter), ProtocolError);
  }
  SUBCASE("wrong version") {
    std::vector<std::uint8_t> bad = bytes;
    bad[0] = 0x02;
    CHECK_THROWS_AS((void)wire::decode_request(bad), ProtocolError);
  }
  SUBCASE("zero poses") {
    std::vector<std::uint8_t> bad(bytes.begin(), bytes.begin() + 14);
    bad[10] = 0x00;
    CHECK_THROWS_AS((void)wire::decode_request(bad), ProtocolError);
  }
  SUBCASE("length disagrees with the pose count") {
    std::vector<std::uint8_t> extra = bytes;
    extra.push_back(0x00);
    CHECK_THROWS_AS((void)wire::decode_request(extra), ProtocolError);
    const std::vector<std::uint8_t> missing(bytes.begin(), bytes.end() - 1);
    CHECK_THROWS_AS((void)wire::decode_request(missing), ProtocolError);
    std::vector<std::uint8_t> overdeclared = bytes;
    overdeclared[10] = 0x02;
    CHECK_THROWS_AS((void)wire::decode_request(overdeclared), ProtocolError);
  }
  SUBCASE("non-unit direction") {
    wire::ScoreRequest bad = good;
    bad.poses[0].direction = {0.0, 0.5, 0.0};
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
    bad.poses[0].direction = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
  }
  SUBCASE("non-finite position") {
    wire::ScoreRequest bad = good;
    bad.poses[0].position.x = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
    bad.poses[0].position.x = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
  }
  SUBCASE("fov out of range") {
    wire::ScoreRequest bad = good;
    bad.poses[0].fov_degrees = 0.0;
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
    bad.poses[0].fov_degrees = 180.0;
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
    bad.poses[0].fov_degrees = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)wire::decode_request(wire::encode_request(bad)), ProtocolError);
  }
}

TEST_CASE("decode_response rejects malformed payloads") {
  wire::ScoreResponse good;
  good.request_id = 9;
  good.scores = {0.25f};
  const std::vector<std::uint8_t> bytes = wire::encode_response(good);
  CHECK_NOTHROW((void)wire::decode_response(bytes));

  SUBCASE("truncated header") {
    const std::vector<std::uint8_t> shorter(bytes.begin(), bytes.begin() + 14);
    CHECK_THROWS_AS((void)wire::decode_response(shorter), ProtocolError);
  }
  SUBCASE("wrong version") {
    std::vector<std::uint8_t> bad = bytes;
    bad[0] = 0x00;
    CHECK_THROWS_AS((void)wire::decode_response(bad), ProtocolError);
  }
  SUBCASE("unknown status") {
    std::vector<std::uint8_t> bad = bytes;
    bad[10] = 0x03;
    CHECK_THROWS_AS((void)wire::decode_response(bad), ProtocolError);
  }
  SUBCASE("length disagrees with the score count") {
    std::vector<std::uint8_t> extra = bytes;
    extra.push_back(0x00);
    CHECK_THROWS_AS((void)wire::decode_response(extra), ProtocolError);
    std::vector<std::uint8_t> overdeclared = bytes;
    overdeclared[11] = 0x02;
    CHECK_THROWS_AS((void)wire::decode_response(overdeclared), ProtocolError);
  }
}

TEST_CASE("peek_request_id reads damaged requests") {
  wire::ScoreRequest req;
  req.request_id = 0xfeedfacecafebeefULL;
  req.poses.push_back(CameraPose{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 60.0});
  std::vector<std::uint8_t> bytes = wire::encode_request(req);
  bytes[0] = 0x09;  // break the version; the id must still be readable
  CHECK(wire::peek_request_id(bytes) == req.request_id);

  const std::vector<std::uint8_t> only_id(bytes.begin(), bytes.begin() + 10);
  CHECK(wire::peek_request_id(only_id) == req.request_id);
  const std::vector<std::uint8_t> too_short(bytes.begin(), bytes.begin() + 9);
  CHECK(wire::peek_request_id(too_short) == 0);
}

TEST_CASE("frames roundtrip over a stream socket") {
  SocketPair sp;
  Rng rng(43);

  std::vector<std::vector<std::uint8_t>> frames;
  frames.push_back({});  // empty payloads are legal frames
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint8_t> payload(rng.next_u64() % 2000);
    for (std::uint8_t& b : payload) b = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
    frames.push_back(std::move(payload));
  }

  for (const auto& f : frames) wire::write_frame(sp.a, f);
  for (const auto& f : frames) {
    const auto got = wire::read_frame(sp.b);
    REQUIRE(got.has_value());
    CHECK(*got == f);
  }
}

TEST_CASE("clean end-of-stream reads as nullopt") {
  SocketPair sp;
  wire::write_frame(sp.a, std::vector<std::uint8_t>{1, 2, 3});
  sp.close_a();

  const auto first = wire::read_frame(sp.b);
  REQUIRE(first.has_value());
  CHECK(*first == std::vector<std::uint8_t>{1, 2, 3});
  CHECK_FALSE(wire::read_frame(sp.b).has_value());
}

TEST_CASE("a mid-frame close is a protocol error") {
  SocketPair sp;
  const std::vector<std::uint8_t> partial = {0x0a, 0x00, 0x00, 0x00, 0x01, 0x02, 0x03};
  REQUIRE(::write(sp.a, partial.data(), partial.size()) == static_cast<ssize_t>(partial.size()));
  sp.close_a();
  CHECK_THROWS_AS((void)wire::read_frame(sp.b), ProtocolError);
}

TEST_CASE("oversized frames are drained and the stream stays usable") {
  SocketPair sp;
  const std::size_t oversized = static_cast<std::size_t>(wire::kMaxFrameBytes) + 5;

  std::thread writer([&] {
    const std::vector<std::uint8_t> huge(oversized, 0xab);
    wire::write_frame(sp.a, huge);
    wire::write_frame(sp.a, std::vector<std::uint8_t>{9, 9, 9});
  });

  CHECK_THROWS_AS((void)wire::read_frame(sp.b), wire::FrameTooLargeError);
  const auto next = wire::read_frame(sp.b);
  writer.join();
  REQUIRE(next.has_value());
  CHECK(*next == std::vector<std::uint8_t>{9, 9, 9});
}
