#include "svt/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "svt/error.hpp"

namespace svt {

const char* message_type_name(MessageType type) {
    switch (type) {
        case MessageType::Hello: return "HELLO";
        case MessageType::Bundle: return "BUNDLE";
        case MessageType::Ack: return "ACK";
        case MessageType::Report: return "REPORT";
        case MessageType::Bye: return "BYE";
    }
    return "UNKNOWN";
}

Message Message::text(MessageType type, const std::string& body) {
    return Message{type, std::vector<std::uint8_t>(body.begin(), body.end())};
}

namespace {

MessageType checked_type(std::uint8_t b) {
    if (b < 1 || b > 5) throw ProtocolError("unknown message type " + std::to_string(b));
    return static_cast<MessageType>(b);
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string sys_error(const std::string& what) { return what + ": " + std::strerror(errno); }

}  // namespace

std::vector<std::uint8_t> encode_message(const Message& message) {
    if (message.body.size() > kMaxMessageBody) throw ProtocolError("message body too large");
    std::vector<std::uint8_t> out;
    out.reserve(kMessageHeaderBytes + message.body.size());
    out.push_back(static_cast<std::uint8_t>(message.type));
    const auto n = static_cast<std::uint32_t>(message.body.size());
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
    out.insert(out.end(), message.body.begin(), message.body.end());
    return out;
}

std::optional<Message> decode_message(std::span<const std::uint8_t> bytes, std::size_t& consumed) {
    consumed = 0;
    if (bytes.empty()) return std::nullopt;
    const MessageType type = checked_type(bytes[0]);
    if (bytes.size() < kMessageHeaderBytes) return std::nullopt;
    const std::uint32_t length = read_u32(bytes.data() + 1);
    if (length > kMaxMessageBody) throw ProtocolError("message body length " + std::to_string(length) + " too large");
    if (bytes.size() - kMessageHeaderBytes < length) return std::nullopt;
    consumed = kMessageHeaderBytes + length;
    auto body = bytes.subspan(kMessageHeaderBytes, length);
    return Message{type, std::vector<std::uint8_t>(body.begin(), body.end())};
}

Connection::~Connection() {
    if (fd_ >= 0) ::close(fd_);
}

Connection& Connection::operator=(Connection&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

Connection Connection::connect(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    const std::string service = std::to_string(port);
    if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &found); rc != 0) {
        throw ProtocolError("cannot resolve " + host + ": " + ::gai_strerror(rc));
    }
    int fd = -1;
    for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(found);
    if (fd < 0) throw ProtocolError(sys_error("cannot connect to " + host + ":" + service));
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return Connection(fd);
}

void Connection::send_bytes(std::span<const std::uint8_t> bytes) {
    std::size_t off = 0;
    while (off < bytes.size()) {
        const ssize_t n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(sys_error("send failed"));
        }
        off += static_cast<std::size_t>(n);
    }
}

void Connection::send(const Message& message) { send_bytes(encode_message(message)); }

void Connection::read_exact(std::uint8_t* dst, std::size_t n) {
    std::size_t off = 0;
    while (off < n) {
        const ssize_t got = ::recv(fd_, dst + off, n - off, 0);
        if (got < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(sys_error("receive failed"));
        }
        if (got == 0) {
            throw ProtocolError("connection closed after " + std::to_string(off) + " of " + std::to_string(n) +
                                " expected bytes");
        }
        off += static_cast<std::size_t>(got);
    }
}

Message Connection::receive() {
    std::uint8_t header[kMessageHeaderBytes];
    read_exact(header, sizeof(header));
    Message message;
    message.type = checked_type(header[0]);
    const std::uint32_t length = read_u32(header + 1);
    if (length > kMaxMessageBody) throw ProtocolError("message body length " + std::to_string(length) + " too large");
    message.body.resize(length);
    if (length > 0) read_exact(message.body.data(), length);
    return message;
}

void Connection::finish_writes() {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
}

Listener::Listener(const std::string& host, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw ProtocolError(sys_error("socket"));
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    const std::string bind_host = host.empty() || host == "localhost" ? "127.0.0.1" : host;
    if (::inet_pton(AF_INET, bind_host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        throw ProtocolError("listen address must be an IPv4 literal: " + host);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd_, 16) != 0) {
        const std::string msg = sys_error("cannot listen on " + bind_host + ":" + std::to_string(port));
        ::close(fd_);
        throw ProtocolError(msg);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

Listener::~Listener() {
    close();
    if (fd_ >= 0) ::close(fd_);
}

std::optional<Connection> Listener::accept() {
    while (true) {
        const int client = ::accept(fd_, nullptr, nullptr);
        if (client >= 0) return Connection(client);
        if (errno == EINTR) continue;
        return std::nullopt;
    }
}

void Listener::close() {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

}  // namespace svt
