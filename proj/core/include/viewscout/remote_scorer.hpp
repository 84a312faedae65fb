#pragma once

#include <cstdint>
#include <string>

#include "viewscout/scorers.hpp"

namespace viewscout {

// Scorer that forwards batches to a ScoreServer over one TCP connection.
//
// Calls are lockstep (one request in flight), matching the server's
// per-connection contract.  Not safe for concurrent use from multiple
// threads.  Throws ScorerError when the server reports a failure and
// ProtocolError when the stream itself breaks.
class RemoteScorer : public Scorer {
 public:
  RemoteScorer(const std::string& host, std::uint16_t port);
  ~RemoteScorer() override;

  RemoteScorer(const RemoteScorer&) = delete;
  RemoteScorer& operator=(const RemoteScorer&) = delete;

  std::vector<double> score_batch(const std::vector<CameraPose>& poses) override;

 private:
  int fd_ = -1;
  std::uint64_t next_request_id_ = 1;
};

}  // namespace viewscout
