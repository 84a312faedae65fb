#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "viewscout/scorers.hpp"

namespace viewscout {

// TCP front end that exposes a Scorer over the length-prefixed wire protocol.
//
// One accept thread hands each connection to its own worker thread.  A
// connection is served in lockstep: read one request frame, score it, write
// one response frame.  Malformed requests produce a bad-request response and
// the connection stays open; scorer exceptions produce a scorer-error
// response.  Only an unframeable stream (oversized frame, mid-frame EOF,
// socket error) tears the connection down.
class ScoreServer {
 public:
  // The server shares the scorer across connections, so the scorer must
  // tolerate concurrent score_batch calls.
  explicit ScoreServer(std::shared_ptr<Scorer> scorer);
  ~ScoreServer();

  ScoreServer(const ScoreServer&) = delete;
  ScoreServer& operator=(const ScoreServer&) = delete;

  // Binds 127.0.0.1:port and starts the accept loop.  Port 0 picks a free
  // ephemeral port; port() reports the actual one.  Throws ProtocolError if
  // the socket cannot be set up.
  void start(std::uint16_t port);

  // Blocks until the accept loop exits, normally because another thread
  // called stop().  Returns immediately if the server is not running.
  void serve();

  // Closes the listening socket and all live connections, then joins the
  // accept and worker threads.  Safe to call more than once and from
  // concurrent threads; stop() is the only place that joins.
  void stop();

  std::uint16_t port() const { return port_; }
  bool running() const { return running_.load(); }

 private:
  void accept_loop();
  void handle_connection(int fd);

  std::shared_ptr<Scorer> scorer_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::thread accept_thread_;
  std::mutex stop_mutex_;
  std::mutex lifecycle_mutex_;
  std::condition_variable accept_done_cv_;
  bool accept_done_ = true;  // guarded by lifecycle_mutex_
  std::mutex workers_mutex_;
  std::vector<std::thread> workers_;
  std::vector<int> connection_fds_;
};

}  // namespace viewscout
