// Copyright 2026 The Shadowcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHADOWCAST_SERVER_HPP_
#define SHADOWCAST_SERVER_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace shadowcast {

inline constexpr std::string_view kDefaultBind = "127.0.0.1:8765";

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8765;  // 0 picks an ephemeral port
  std::optional<double> tick_rate;
  std::filesystem::path base_dir;
  bool handle_signals = false;  // stop on SIGINT / SIGTERM
};

// Splits "host:port". Throws ValidationError on a malformed address.
std::pair<std::string, unsigned short> parse_bind(std::string_view bind);

// WebSocket session service, one Session per connection. All connections
// share one I/O thread, so a session's messages and ticks never interleave.
class Server {
 public:
  // Binds immediately; throws Error if the address is unavailable.
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  // Serves until stop(). Call from one thread.
  void run();
  // Safe from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace shadowcast

#endif  // SHADOWCAST_SERVER_HPP_
