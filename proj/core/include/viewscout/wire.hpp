#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "viewscout/errors.hpp"
#include "viewscout/geometry.hpp"

namespace viewscout::wire {

// Scoring runs as a request/response protocol over a stream socket. Each
// frame is a u32 little-endian payload length followed by the payload.
//
// Request payload (all fields little-endian):
//   u16  protocol_version
//   u64  request_id
//   u32  pose_count m                  (m >= 1)
//   m x  { f64 position[3], f64 direction[3], f32 fov_degrees }
//
// Response payload:
//   u16  protocol_version
//   u64  request_id                    (echoed from the request)
//   u8   status                        (0 ok, 1 bad request, 2 scorer error)
//   u32  score_count                   (pose_count on status 0, else 0)
//   score_count x f32 score            (each in [0, 1])

inline constexpr std::uint16_t kProtocolVersion = 1;
inline constexpr std::size_t kRequestHeaderBytes = 2 + 8 + 4;
inline constexpr std::size_t kPoseBytes = 3 * 8 + 3 * 8 + 4;
inline constexpr std::size_t kResponseHeaderBytes = 2 + 8 + 1 + 4;
inline constexpr std::uint32_t kMaxFrameBytes = 1u << 24;
inline constexpr double kDirectionUnitTolerance = 1e-6;

enum class Status : std::uint8_t { kOk = 0, kBadRequest = 1, kScorerError = 2 };

struct ScoreRequest {
  std::uint16_t protocol_version = kProtocolVersion;
  std::uint64_t request_id = 0;
  std::vector<CameraPose> poses;
};

struct ScoreResponse {
  std::uint16_t protocol_version = kProtocolVersion;
  std::uint64_t request_id = 0;
  Status status = Status::kOk;
  std::vector<float> scores;
};

std::vector<std::uint8_t> encode_request(const ScoreRequest& request);
std::vector<std::uint8_t> encode_response(const ScoreResponse& response);

// Throw ProtocolError on any malformed payload: size inconsistent with the
// declared pose count, unsupported version, zero poses, non-unit directions,
// or out-of-range fov.
ScoreRequest decode_request(std::span<const std::uint8_t> payload);
ScoreResponse decode_response(std::span<const std::uint8_t> payload);

// Request id from a payload too damaged to decode; 0 when even the header is
// incomplete. Lets error responses still echo the id where possible.
std::uint64_t peek_request_id(std::span<const std::uint8_t> payload);

// A frame whose declared length exceeds kMaxFrameBytes. The payload has been
// drained from the socket, so the connection is still usable.
struct FrameTooLargeError : ProtocolError {
  using ProtocolError::ProtocolError;
};

// Blocking framed I/O on a connected stream socket. read_frame returns
// nullopt on clean end-of-stream, throws FrameTooLargeError for oversized
// frames (after draining them) and ProtocolError on I/O failure.
void write_frame(int fd, std::span<const std::uint8_t> payload);
std::optional<std::vector<std::uint8_t>> read_frame(int fd);

}  // namespace viewscout::wire
