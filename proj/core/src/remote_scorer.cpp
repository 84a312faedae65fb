#include "viewscout/remote_scorer.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

#include "viewscout/errors.hpp"
#include "viewscout/wire.hpp"

namespace viewscout {

RemoteScorer::RemoteScorer(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* results = nullptr;
  const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &results);
  if (rc != 0) throw ProtocolError("cannot resolve " + host + ": " + ::gai_strerror(rc));

  std::string last_error = "no addresses";
  for (addrinfo* entry = results; entry != nullptr; entry = entry->ai_next) {
    const int fd = ::socket(entry->ai_family, entry->ai_socktype, entry->ai_protocol);
    if (fd < 0) {
      last_error = std::strerror(errno);
      continue;
    }
    if (::connect(fd, entry->ai_addr, entry->ai_addrlen) == 0) {
      fd_ = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(results);
  if (fd_ < 0) throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port) + ": " + last_error);
}

RemoteScorer::~RemoteScorer() {
  if (fd_ >= 0) ::close(fd_);
}

std::vector<double> RemoteScorer::score_batch(const std::vector<CameraPose>& poses) {
  if (poses.empty()) throw ScorerError("empty pose batch");

  wire::ScoreRequest request;
  request.request_id = next_request_id_++;
  request.poses = poses;

  wire::write_frame(fd_, wire::encode_request(request));
  const std::optional<std::vector<std::uint8_t>> frame = wire::read_frame(fd_);
  if (!frame) throw ProtocolError("server closed the connection before responding");

  const wire::ScoreResponse response = wire::decode_response(*frame);
  if (response.request_id != request.request_id) {
    throw ProtocolError("response id does not match the request");
  }
  if (response.status == wire::Status::kBadRequest) {
    throw ScorerError("server rejected the request as malformed");
  }
  if (response.status == wire::Status::kScorerError) {
    throw ScorerError("server-side scorer failed");
  }
  if (response.scores.size() != poses.size()) {
    throw ProtocolError("response score count does not match the batch");
  }

  std::vector<double> scores;
  scores.reserve(response.scores.size());
  for (float s : response.scores) {
    if (!(s >= 0.0f && s <= 1.0f)) throw ScorerError("remote score outside [0, 1]");
    scores.push_back(static_cast<double>(s));
  }
  return scores;
}

}  // namespace viewscout
