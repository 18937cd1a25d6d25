#pragma once

// Plain TCP transport: one connection is one gateway session, one line in,
// one line out.

#include <atomic>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <thread>

#include "slicebroker/gateway.hpp"

namespace slicebroker {

class TcpServer {
 public:
  /// Binds 127.0.0.1:`port` (0 picks an ephemeral port). Throws BIND_FAILED.
  TcpServer(Gateway& gateway, std::uint16_t port, const std::string& host = "127.0.0.1");
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  /// Stops accepting, shuts down open connections and joins all threads.
  void stop();

 private:
  void accept_loop();
  void serve_connection(int fd);

  Gateway& gateway_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex conns_mutex_;
  std::list<std::thread> workers_;
  std::list<int> open_fds_;
};

/// Blocking line client.
class TcpClient {
 public:
  /// Throws IO_ERROR when the connection cannot be made.
  TcpClient(const std::string& host, std::uint16_t port);
  ~TcpClient();
  TcpClient(const TcpClient&) = delete;
  TcpClient& operator=(const TcpClient&) = delete;

  void send_line(const std::string& line);
  /// Throws IO_ERROR when the peer closes before a full line arrives.
  std::string recv_line();

  /// Encodes `body` with the next sequence number and waits for the reply.
  Message call(MessageBody body);

 private:
  int fd_ = -1;
  std::string buffer_;
  std::int64_t next_seq_ = 1;
};

}  // namespace slicebroker
