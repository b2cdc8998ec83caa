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

#include "shadowcast/server.hpp"

#include <charconv>
#include <chrono>
#include <csignal>
#include <deque>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "shadowcast/errors.hpp"
#include "shadowcast/session.hpp"

namespace shadowcast {
namespace {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using Clock = std::chrono::steady_clock;

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, std::string id, SessionOptions options)
      : ws_(std::move(socket)),
        timer_(ws_.get_executor()),
        session_(std::move(id), std::move(options)) {}

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(
        [self = shared_from_this()](beast::error_code ec) {
          if (!ec) self->read();
        });
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                        std::size_t) {
      self->on_read(ec);
    });
  }

  void on_read(beast::error_code ec) {
    if (ec) {
      close();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    const bool was_initialized = session_.initialized();
    for (std::string& reply : session_.handle(text)) send(std::move(reply));
    if (!was_initialized && session_.initialized()) {
      period_ = std::chrono::duration_cast<Clock::duration>(
          std::chrono::duration<double>(1.0 / session_.tick_rate()));
      deadline_ = Clock::now() + period_;
      schedule();
    }
    read();
  }

  void schedule() {
    timer_.expires_at(deadline_);
    timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
      if (ec || self->closed_) return;
      for (std::string& msg : self->session_.tick()) self->send(std::move(msg));
      self->deadline_ += self->period_;
      self->schedule();
    });
  }

  void send(std::string msg) {
    if (closed_) return;
    outbox_.push_back(std::move(msg));
    if (outbox_.size() == 1) write();
  }

  void write() {
    ws_.text(true);
    ws_.async_write(net::buffer(outbox_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) {
                        self->close();
                        return;
                      }
                      self->outbox_.pop_front();
                      if (!self->outbox_.empty()) self->write();
                    });
  }

  void close() {
    closed_ = true;
    timer_.cancel();
    outbox_.clear();
  }

  websocket::stream<beast::tcp_stream> ws_;
  net::steady_timer timer_;
  beast::flat_buffer buffer_;
  Session session_;
  std::deque<std::string> outbox_;
  Clock::duration period_{};
  Clock::time_point deadline_{};
  bool closed_ = false;
};

}  // namespace

std::pair<std::string, unsigned short> parse_bind(std::string_view bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ValidationError("bind address must be host:port, got '" +
                          std::string(bind) + "'");
  const std::string_view port_text = bind.substr(colon + 1);
  unsigned port = 0;
  const auto [end, ec] =
      std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || end != port_text.data() + port_text.size() ||
      port > 65535)
    throw ValidationError("bad port in bind address '" + std::string(bind) + "'");
  return {std::string(bind.substr(0, colon)), static_cast<unsigned short>(port)};
}

struct Server::Impl {
  explicit Impl(ServerOptions opts)
      : options(std::move(opts)), acceptor(ioc), signals(ioc) {
    beast::error_code ec;
    const auto address = net::ip::make_address(options.address, ec);
    if (ec) throw ValidationError("bad bind host '" + options.address + "'");
    const tcp::endpoint endpoint(address, options.port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec)
      throw Error("cannot listen on " + options.address + ":" +
                  std::to_string(options.port) + ": " + ec.message());
  }

  void accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec,
                                                        tcp::socket socket) {
      if (ec) return;
      SessionOptions session{options.tick_rate, options.base_dir};
      std::make_shared<Connection>(std::move(socket),
                                   "s" + std::to_string(++sessions), session)
          ->start();
      accept();
    });
  }

  ServerOptions options;
  net::io_context ioc{1};
  tcp::acceptor acceptor;
  net::signal_set signals;
  std::uint64_t sessions = 0;
};

Server::Server(ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() = default;

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  if (impl_->options.handle_signals) {
    impl_->signals.add(SIGINT);
    impl_->signals.add(SIGTERM);
    impl_->signals.async_wait([this](beast::error_code, int) { stop(); });
  }
  impl_->accept();
  impl_->ioc.run();
}

void Server::stop() {
  net::post(impl_->ioc, [impl = impl_.get()] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    impl->signals.cancel(ignored);
    impl->ioc.stop();
  });
}

}  // namespace shadowcast
