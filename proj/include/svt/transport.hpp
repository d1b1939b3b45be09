#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace svt {

enum class MessageType : std::uint8_t { Hello = 1, Bundle = 2, Ack = 3, Report = 4, Bye = 5 };

const char* message_type_name(MessageType type);

/// Frame layout: type (u8), body length (u32 little-endian), body.
inline constexpr std::size_t kMessageHeaderBytes = 5;
inline constexpr std::uint32_t kMaxMessageBody = 1u << 30;

struct Message {
    MessageType type = MessageType::Hello;
    std::vector<std::uint8_t> body;

    static Message text(MessageType type, const std::string& body);
    std::string body_text() const { return {body.begin(), body.end()}; }
};

std::vector<std::uint8_t> encode_message(const Message& message);

/// Parses one message from the front of `bytes`. Returns nullopt while the
/// message is incomplete; throws ProtocolError for unknown types or
/// oversized bodies.
std::optional<Message> decode_message(std::span<const std::uint8_t> bytes, std::size_t& consumed);

/// Owning TCP stream carrying framed messages.
class Connection {
public:
    explicit Connection(int fd) : fd_(fd) {}
    ~Connection();
    Connection(Connection&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    Connection& operator=(Connection&& other) noexcept;
    Connection(const Connection&) = delete;
    Connection& operator=(const Connection&) = delete;

    static Connection connect(const std::string& host, std::uint16_t port);

    void send(const Message& message);
    void send_bytes(std::span<const std::uint8_t> bytes);
    Message receive();
    /// Half-closes the write side.
    void finish_writes();

private:
    void read_exact(std::uint8_t* dst, std::size_t n);

    int fd_ = -1;
};

class Listener {
public:
    /// Port 0 binds an ephemeral port; see port().
    Listener(const std::string& host, std::uint16_t port);
    ~Listener();
    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;

    std::uint16_t port() const { return port_; }
    /// Blocks for the next client; nullopt once the listener is closed.
    std::optional<Connection> accept();
    /// Unblocks a pending accept(). Safe to call from another thread.
    void close();

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

}  // namespace svt
