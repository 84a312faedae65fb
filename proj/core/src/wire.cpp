#include "viewscout/wire.hpp"

#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <string>

namespace viewscout::wire {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[at + static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[at + static_cast<std::size_t>(i)];
  return v;
}

float get_f32(std::span<const std::uint8_t> b, std::size_t at) { return std::bit_cast<float>(get_u32(b, at)); }

double get_f64(std::span<const std::uint8_t> b, std::size_t at) { return std::bit_cast<double>(get_u64(b, at)); }

void read_exact(int fd, std::uint8_t* buffer, std::size_t count, bool& clean_eof) {
  std::size_t done = 0;
  clean_eof = false;
  while (done < count) {
    const ssize_t got = ::read(fd, buffer + done, count - done);
    if (got == 0) {
      if (done == 0) {
        clean_eof = true;
        return;
      }
      throw ProtocolError("connection closed mid-frame");
    }
    if (got < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("socket read failed: ") + std::strerror(errno));
    }
    done += static_cast<std::size_t>(got);
  }
}

}  // namespace

std::vector<std::uint8_t> encode_request(const ScoreRequest& request) {
  std::vector<std::uint8_t> out;
  out.reserve(kRequestHeaderBytes + request.poses.size() * kPoseBytes);
  put_u16(out, request.protocol_version);
  put_u64(out, request.request_id);
  put_u32(out, static_cast<std::uint32_t>(request.poses.size()));
  for (const CameraPose& pose : request.poses) {
    put_f64(out, pose.position.x);
    put_f64(out, pose.position.y);
    put_f64(out, pose.position.z);
    put_f64(out, pose.direction.x);
    put_f64(out, pose.direction.y);
    put_f64(out, pose.direction.z);
    put_f32(out, static_cast<float>(pose.fov_degrees));
  }
  return out;
}

std::vector<std::uint8_t> encode_response(const ScoreResponse& response) {
  std::vector<std::uint8_t> out;
  out.reserve(kResponseHeaderBytes + response.scores.size() * 4);
  put_u16(out, response.protocol_version);
  put_u64(out, response.request_id);
  out.push_back(static_cast<std::uint8_t>(response.status));
  put_u32(out, static_cast<std::uint32_t>(response.scores.size()));
  for (float s : response.scores) put_f32(out, s);
  return out;
}

ScoreRequest decode_request(std::span<const std::uint8_t> payload) {
  if (payload.size() < kRequestHeaderBytes) throw ProtocolError("request shorter than its header");
  ScoreRequest req;
  req.protocol_version = get_u16(payload, 0);
  req.request_id = get_u64(payload, 2);
  if (req.protocol_version != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version " + std::to_string(req.protocol_version));
  }
  const std::uint32_t pose_count = get_u32(payload, 10);
  if (pose_count == 0) throw ProtocolError("request carries no poses");
  if (payload.size() != kRequestHeaderBytes + static_cast<std::size_t>(pose_count) * kPoseBytes) {
    throw ProtocolError("request length does not match its pose count");
  }
  req.poses.reserve(pose_count);
  std::size_t at = kRequestHeaderBytes;
  for (std::uint32_t i = 0; i < pose_count; ++i) {
    CameraPose pose;
    pose.position = {get_f64(payload, at), get_f64(payload, at + 8), get_f64(payload, at + 16)};
    pose.direction = {get_f64(payload, at + 24), get_f64(payload, at + 32), get_f64(payload, at + 40)};
    pose.fov_degrees = static_cast<double>(get_f32(payload, at + 48));
    at += kPoseBytes;
    if (!std::isfinite(pose.position.x) || !std::isfinite(pose.position.y) || !std::isfinite(pose.position.z)) {
      throw ProtocolError("pose position is not finite");
    }
    const double norm = pose.direction.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kDirectionUnitTolerance) {
      throw ProtocolError("pose direction is not a unit vector");
    }
    if (!(pose.fov_degrees > 0.0 && pose.fov_degrees < 180.0)) {
      throw ProtocolError("pose fov outside (0, 180) degrees");
    }
    req.poses.push_back(pose);
  }
  return req;
}

ScoreResponse decode_response(std::span<const std::uint8_t> payload) {
  if (payload.size() < kResponseHeaderBytes) throw ProtocolError("response shorter than its header");
  ScoreResponse resp;
  resp.protocol_version = get_u16(payload, 0);
  resp.request_id = get_u64(payload, 2);
  if (resp.protocol_version != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version " + std::to_string(resp.protocol_version));
  }
  const std::uint8_t raw_status = payload[10];
  if (raw_status > 2) throw ProtocolError("unknown response status " + std::to_string(raw_status));
  resp.status = static_cast<Status>(raw_status);
  const std::uint32_t score_count = get_u32(payload, 11);
  if (payload.size() != kResponseHeaderBytes + static_cast<std::size_t>(score_count) * 4) {
    throw ProtocolError("response length does not match its score count");
  }
  resp.scores.reserve(score_count);
  for (std::uint32_t i = 0; i < score_count; ++i) {
    resp.scores.push_back(get_f32(payload, kResponseHeaderBytes + static_cast<std::size_t>(i) * 4));
  }
  return resp;
}

std::uint64_t peek_request_id(std::span<const std::uint8_t> payload) {
  if (payload.size() < 10) return 0;
  return get_u64(payload, 2);
}

void write_frame(int fd, std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> framed;
  framed.reserve(4 + payload.size());
  put_u32(framed, static_cast<std::uint32_t>(payload.size()));
  framed.insert(framed.end(), payload.begin(), payload.end());

  std::size_t done = 0;
  while (done < framed.size()) {
    const ssize_t sent = ::write(fd, framed.data() + done, framed.size() - done);
    if (sent < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("socket write failed: ") + std::strerror(errno));
    }
    done += static_cast<std::size_t>(sent);
  }
}

std::optional<std::vector<std::uint8_t>> read_frame(int fd) {
  std::uint8_t header[4];
  bool clean_eof = false;
  read_exact(fd, header, 4, clean_eof);
  if (clean_eof) return std::nullopt;
  const std::uint32_t length = get_u32(std::span<const std::uint8_t>(header, 4), 0);
  if (length > kMaxFrameBytes) {
    // Drain the oversized payload so the stream stays framed.
    std::uint8_t sink[4096];
    std::uint64_t remaining = length;
    while (remaining > 0) {
      const std::size_t chunk = remaining < sizeof(sink) ? static_cast<std::size_t>(remaining) : sizeof(sink);
      bool eof = false;
      read_exact(fd, sink, chunk, eof);
      if (eof) throw ProtocolError("connection closed mid-frame");
      remaining -= chunk;
    }
    throw FrameTooLargeError("frame of " + std::to_string(length) + " bytes exceeds the limit");
  }
  std::vector<std::uint8_t> payload(length);
  if (length > 0) {
    bool eof = false;
    read_exact(fd, payload.data(), payload.size(), eof);
    if (eof) throw ProtocolError("connection closed mid-frame");
  }
  return payload;
}

}  // namespace viewscout::wire
