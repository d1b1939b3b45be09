#include <gtest/gtest.h>

#include <thread>

#include "svt/error.hpp"
#include "svt/transport.hpp"

using namespace svt;

TEST(Transport, EncodeLayout) {
    const auto bytes = encode_message(Message::text(MessageType::Report, "hi"));
    EXPECT_EQ(bytes, (std::vector<std::uint8_t>{4, 2, 0, 0, 0, 'h', 'i'}));
}

TEST(Transport, DecodeIncrementally) {
    const auto bytes = encode_message(Message::text(MessageType::Bundle, "abcdef"));
    std::size_t used = 0;
    for (std::size_t n = 0; n < bytes.size(); ++n) {
        EXPECT_FALSE(decode_message(std::span(bytes).first(n), used).has_value());
    }
    const auto m = decode_message(bytes, used);
    ASSERT_TRUE(m);
    EXPECT_EQ(used, bytes.size());
    EXPECT_EQ(m->type, MessageType::Bundle);
    EXPECT_EQ(m->body_text(), "abcdef");
}

TEST(Transport, RejectsUnknownTypeAndOversize) {
    std::size_t used = 0;
    const std::vector<std::uint8_t> unknown = {9, 0, 0, 0, 0};
    EXPECT_THROW(decode_message(unknown, used), ProtocolError);
    const std::vector<std::uint8_t> zero = {0, 0, 0, 0, 0};
    EXPECT_THROW(decode_message(zero, used), ProtocolError);
    const std::vector<std::uint8_t> huge = {2, 0xff, 0xff, 0xff, 0xff};
    EXPECT_THROW(decode_message(huge, used), ProtocolError);
}

TEST(Transport, LoopbackExchange) {
    Listener listener("127.0.0.1", 0);
    ASSERT_NE(listener.port(), 0);
    std::thread server([&] {
        auto conn = listener.accept();
        ASSERT_TRUE(conn);
        Message m = conn->receive();
        m.type = MessageType::Ack;
        conn->send(m);
    });
    Connection c = Connection::connect("127.0.0.1", listener.port());
    std::vector<std::uint8_t> big(1 << 20);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<std::uint8_t>(i * 31);
    c.send(Message{MessageType::Bundle, big});
    const Message reply = c.receive();
    server.join();
    EXPECT_EQ(reply.type, MessageType::Ack);
    EXPECT_EQ(reply.body, big);
}

TEST(Transport, EarlyCloseIsProtocolError) {
    Listener listener("127.0.0.1", 0);
    std::thread server([&] {
        auto conn = listener.accept();
        const std::vector<std::uint8_t> partial = {2, 100, 0, 0, 0, 1, 2};
        conn->send_bytes(partial);
    });
    Connection c = Connection::connect("127.0.0.1", listener.port());
    server.join();
    EXPECT_THROW(c.receive(), ProtocolError);
}

TEST(Transport, ConnectFailure) {
    std::uint16_t port;
    {
        Listener l("127.0.0.1", 0);
        port = l.port();
    }
    EXPECT_THROW(Connection::connect("127.0.0.1", port), Error);
}

TEST(Transport, CloseUnblocksAccept) {
    Listener l("127.0.0.1", 0);
    std::thread t([&] { EXPECT_FALSE(l.accept().has_value()); });
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    l.close();
    t.join();
}
