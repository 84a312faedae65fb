#include "viewscout/score_server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <string>
#include <utility>

#include "viewscout/errors.hpp"
#include "viewscout/wire.hpp"

namespace viewscout {

ScoreServer::ScoreServer(std::shared_ptr<Scorer> scorer) : scorer_(std::move(scorer)) {
  if (!scorer_) throw ConfigError("ScoreServer needs a scorer");
}

ScoreServer::~ScoreServer() { stop(); }

void ScoreServer::start(std::uint16_t port) {
  if (running_.load()) throw ProtocolError("server already running");

  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw ProtocolError(std::string("socket failed: ") + std::strerror(errno));

  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ProtocolError("bind failed: " + why);
  }
  if (::listen(listen_fd_, 16) < 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ProtocolError("listen failed: " + why);
  }

  sockaddr_in bound{};
  socklen_t bound_len = sizeof(bound);
  if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &bound_len) < 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ProtocolError("getsockname failed: " + why);
  }
  port_ = ntohs(bound.sin_port);

  {
    std::lock_guard<std::mutex> lock(lifecycle_mutex_);
    accept_done_ = false;
  }
  running_.store(true);
  accept_thread_ = std::thread(&ScoreServer::accept_loop, this);
}

void ScoreServer::serve() {
  std::unique_lock<std::mutex> lock(lifecycle_mutex_);
  accept_done_cv_.wait(lock, [this] { return accept_done_; });
}

void ScoreServer::stop() {
  // Sole joiner of the accept and worker threads.  serve() waits on the
  // accept-done signal instead of joining, so two threads can never race a
  // join on the same std::thread.
  std::lock_guard<std::mutex> stop_lock(stop_mutex_);
  if (running_.exchange(false)) {
    if (listen_fd_ >= 0) {
      ::shutdown(listen_fd_, SHUT_RDWR);
      ::close(listen_fd_);
      listen_fd_ = -1;
    }
    std::lock_guard<std::mutex> lock(workers_mutex_);
    for (int fd : connection_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  if (accept_thread_.joinable() && accept_thread_.get_id() != std::this_thread::get_id()) {
    accept_thread_.join();
  }
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(workers_mutex_);
    workers.swap(workers_);
  }
  for (std::thread& worker : workers) {
    if (worker.joinable()) worker.join();
  }
}

void ScoreServer::accept_loop() {
  while (running_.load()) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;  // listening socket closed by stop()
    }
    std::lock_guard<std::mutex> lock(workers_mutex_);
    if (!running_.load()) {
      ::close(fd);
      break;
    }
    connection_fds_.push_back(fd);
    workers_.emplace_back(&ScoreServer::handle_connection, this, fd);
  }
  {
    std::lock_guard<std::mutex> lock(lifecycle_mutex_);
    accept_done_ = true;
  }
  accept_done_cv_.notify_all();
}

void ScoreServer::handle_connection(int fd) {
  while (running_.load()) {
    std::optional<std::vector<std::uint8_t>> frame;
    try {
      frame = wire::read_frame(fd);
    } catch (const ProtocolError&) {
      break;  // unframeable stream: oversized frame, mid-frame EOF, or socket error
    }
    if (!frame) break;  // client closed cleanly

    wire::ScoreResponse response;
    response.request_id = wire::peek_request_id(*frame);
    try {
      const wire::ScoreRequest request = wire::decode_request(*frame);
      response.request_id = request.request_id;
      const std::vector<double> scores = scorer_->score_batch(request.poses);
      if (scores.size() != request.poses.size()) {
        response.status = wire::Status::kScorerError;
      } else {
        response.status = wire::Status::kOk;
        response.scores.reserve(scores.size());
        for (double s : scores) response.scores.push_back(static_cast<float>(s));
      }
    } catch (const ProtocolError&) {
      response.status = wire::Status::kBadRequest;
      response.scores.clear();
    } catch (const std::exception&) {
      response.status = wire::Status::kScorerError;
      response.scores.clear();
    }

    try {
      wire::write_frame(fd, wire::encode_response(response));
    } catch (const ProtocolError&) {
      break;
    }
  }
  {
    // Drop the fd from the shutdown list before closing it, so a stop() that
    // runs after the kernel recycles the descriptor number cannot shut down
    // an unrelated socket.
    std::lock_guard<std::mutex> lock(workers_mutex_);
    connection_fds_.erase(std::remove(connection_fds_.begin(), connection_fds_.end(), fd),
                          connection_fds_.end());
  }
  ::close(fd);
}

}  // namespace viewscout
