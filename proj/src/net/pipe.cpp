#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>

#include "e2dev/common/error.hpp"
#include "e2dev/net/stream.hpp"
#include "net_internal.hpp"

namespace e2dev::net {

namespace {

struct Channel {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> data;
  bool closed = false;

  void close() {
    {
      std::lock_guard lk(mu);
      closed = true;
    }
    cv.notify_all();
  }
};

class PipeEnd final : public ByteStream {
 public:
  PipeEnd(std::shared_ptr<Channel> in, std::shared_ptr<Channel> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~PipeEnd() override { shutdown(); }

  void write(std::span<const std::uint8_t> bytes) override {
    {
      std::lock_guard lk(out_->mu);
      if (out_->closed) throw TransportError("pipe closed");
      out_->data.insert(out_->data.end(), bytes.begin(), bytes.end());
    }
    out_->cv.notify_all();
  }

  std::size_t read(std::span<std::uint8_t> buf) override {
    std::unique_lock lk(in_->mu);
    in_->cv.wait(lk, [&] { return !in_->data.empty() || in_->closed; });
    const std::size_t n = std::min(buf.size(), in_->data.size());
    std::copy_n(in_->data.begin(), n, buf.begin());
    in_->data.erase(in_->data.begin(), in_->data.begin() + static_cast<std::ptrdiff_t>(n));
    return n;
  }

  void shutdown() override {
    in_->close();
    out_->close();
  }

 private:
  std::shared_ptr<Channel> in_;
  std::shared_ptr<Channel> out_;
};

class InprocListener final : public Listener, public std::enable_shared_from_this<InprocListener> {
 public:
  explicit InprocListener(std::string name) : name_(std::move(name)) {}

  std::unique_ptr<ByteStream> accept() override {
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] { return !pending_.empty() || closed_; });
    if (pending_.empty()) return nullptr;
    auto s = std::move(pending_.front());
    pending_.pop_front();
    return s;
  }

  void close() override;

  std::string endpoint() const override { return "inproc://" + name_; }

  std::unique_ptr<ByteStream> enqueue() {
    auto [client, server] = make_pipe();
    {
      std::lock_guard lk(mu_);
      if (closed_) throw TransportError("connection refused: " + endpoint());
      pending_.push_back(std::move(server));
    }
    cv_.notify_all();
    return std::move(client);
  }

 private:
  std::string name_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::unique_ptr<ByteStream>> pending_;
  bool closed_ = false;
};

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, std::weak_ptr<InprocListener>>& registry() {
  static std::map<std::string, std::weak_ptr<InprocListener>> r;
  return r;
}

void InprocListener::close() {
  {
    std::lock_guard lk(mu_);
    if (closed_) return;
    closed_ = true;
    pending_.clear();
  }
  cv_.notify_all();
  std::lock_guard lk(registry_mutex());
  auto it = registry().find(name_);
  if (it != registry().end() && it->second.lock().get() == this) registry().erase(it);
}

// Keeps the shared listener alive for as long as the caller holds it.
class InprocListenerHandle final : public Listener {
 public:
  explicit InprocListenerHandle(std::shared_ptr<InprocListener> l) : l_(std::move(l)) {}
  ~InprocListenerHandle() override { l_->close(); }
  std::unique_ptr<ByteStream> accept() override { return l_->accept(); }
  void close() override { l_->close(); }
  std::string endpoint() const override { return l_->endpoint(); }

 private:
  std::shared_ptr<InprocListener> l_;
};

}  // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make_pipe() {
  auto ab = std::make_shared<Channel>();
  auto ba = std::make_shared<Channel>();
  return {std::make_unique<PipeEnd>(ba, ab), std::make_unique<PipeEnd>(ab, ba)};
}

namespace detail {

std::unique_ptr<Listener> listen_inproc(const std::string& name) {
  auto l = std::make_shared<InprocListener>(name);
  std::lock_guard lk(registry_mutex());
  auto& slot = registry()[name];
  if (slot.lock()) throw TransportError("address in use: inproc://" + name);
  slot = l;
  return std::make_unique<InprocListenerHandle>(std::move(l));
}

std::unique_ptr<ByteStream> connect_inproc(const std::string& name) {
  std::shared_ptr<InprocListener> l;
  {
    std::lock_guard lk(registry_mutex());
    auto it = registry().find(name);
    if (it != registry().end()) l = it->second.lock();
  }
  if (!l) throw TransportError("connection refused: inproc://" + name);
  return l->enqueue();
}

}  // namespace detail

}  // namespace e2dev::net
