#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "rsma/scenario.hpp"

namespace rsma {

/// Message s_kj: user k, split j in {0, 1}.
struct MessageId {
    std::size_t user = 0;
    std::size_t split = 0;

    friend bool operator==(const MessageId&, const MessageId&) = default;
};

/// SIC decoding order over the 2K split messages. Messages decoded later act as
/// interference for those decoded earlier.
class DecodingOrder {
public:
    /// `sequence` lists the messages from first-decoded to last-decoded and must
    /// contain every (user, split) pair exactly once.
    explicit DecodingOrder(std::vector<MessageId> sequence);

    /// Builds an order from per-message user labels: the first occurrence of
    /// user k is split 0, the second is split 1. Always canonical.
    static DecodingOrder from_user_sequence(const std::vector<std::size_t>& users);

    [[nodiscard]] std::size_t users() const noexcept { return sequence_.size() / 2; }
    [[nodiscard]] const std::vector<MessageId>& sequence() const noexcept { return sequence_; }

    /// 1-based decoding rank of message (k, j).
    [[nodiscard]] std::size_t rank(std::size_t k, std::size_t j) const { return ranks_.at(2 * k + j); }

    /// Split 0 of every user is decoded before its split 1.
    [[nodiscard]] bool is_canonical() const;

    /// e.g. "s21,s11,s22,s12" with 1-based user and split labels.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const DecodingOrder& a, const DecodingOrder& b) { return a.sequence_ == b.sequence_; }

private:
    std::vector<MessageId> sequence_;
    std::vector<std::size_t> ranks_;
};

/// Per-user two-message transmit powers in watts.
struct PowerSplit {
    std::vector<std::array<double, 2>> p;

    PowerSplit() = default;
    explicit PowerSplit(std::size_t k_users) : p(k_users, {0.0, 0.0}) {}

    [[nodiscard]] std::size_t users() const noexcept { return p.size(); }
    [[nodiscard]] double total(std::size_t k) const { return p.at(k)[0] + p.at(k)[1]; }

    /// Nonnegative with every row within its budget (plus `slack` watts).
    [[nodiscard]] bool feasible(const Scenario& s, double slack = 1e-12) const;
};

/// Rate of message (k, j) under SIC: B log2(1 + h_k p_kj / (I + sigma^2 B)),
/// I summing the received power of every message with a strictly later rank.
[[nodiscard]] double message_rate(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers,
                                  std::size_t k, std::size_t j);

/// Sum of both message rates of user k.
[[nodiscard]] double user_rate(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers,
                               std::size_t k);

/// All per-user rates.
[[nodiscard]] std::vector<double> user_rates(const Scenario& s, const DecodingOrder& order,
                                             const PowerSplit& powers);

/// Every canonical order of 2K messages, (2K)!/2^K of them, in lexicographic
/// order of the user-label sequence. Limited to K <= 4.
[[nodiscard]] std::vector<DecodingOrder> enumerate_orders(std::size_t k_users);

inline constexpr std::size_t kMaxOrderSearchUsers = 4;

}  // namespace rsma
