#include "rsma/messages.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsma {

DecodingOrder::DecodingOrder(std::vector<MessageId> sequence) : sequence_(std::move(sequence)) {
    if (sequence_.empty() || sequence_.size() % 2 != 0) {
        throw std::invalid_argument("decoding order needs 2K messages");
    }
    const std::size_t k_users = sequence_.size() / 2;
    ranks_.assign(sequence_.size(), 0);
    for (std::size_t pos = 0; pos < sequence_.size(); ++pos) {
        const auto& m = sequence_[pos];
        if (m.user >= k_users || m.split > 1) {
            throw std::invalid_argument("decoding order references an unknown message");
        }
        auto& slot = ranks_[2 * m.user + m.split];
        if (slot != 0) {
            throw std::invalid_argument("decoding order lists a message twice");
        }
        slot = pos + 1;
    }
}

DecodingOrder DecodingOrder::from_user_sequence(const std::vector<std::size_t>& users) {
    std::vector<MessageId> seq;
    seq.reserve(users.size());
    std::vector<std::size_t> seen(users.size(), 0);
    for (std::size_t u : users) {
        if (u >= users.size() / 2) {
            throw std::invalid_argument("user label out of range");
        }
        if (seen[u] > 1) {
            throw std::invalid_argument("user label appears more than twice");
        }
        seq.push_back({u, seen[u]++});
    }
    return DecodingOrder(std::move(seq));
}

bool DecodingOrder::is_canonical() const {
    for (std::size_t k = 0; k < users(); ++k) {
        if (rank(k, 0) > rank(k, 1)) {
            return false;
        }
    }
    return true;
}

std::string DecodingOrder::to_string() const {
    std::string out;
    for (const auto& m : sequence_) {
        if (!out.empty()) {
            out += ',';
        }
        out += 's' + std::to_string(m.user + 1) + std::to_string(m.split + 1);
    }
    return out;
}

bool PowerSplit::feasible(const Scenario& s, double slack) const {
    if (p.size() != s.size()) {
        return false;
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k][0] < 0.0 || p[k][1] < 0.0 || total(k) > s.user(k).p_max + slack) {
            return false;
        }
    }
    return true;
}

namespace {

void check_shapes(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers) {
    if (order.users() != s.size() || powers.users() != s.size()) {
        throw std::invalid_argument("order, powers and scenario disagree on the user count");
    }
}

}  // namespace

double message_rate(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers, std::size_t k,
                    std::size_t j) {
    check_shapes(s, order, powers);
    if (k >= s.size() || j > 1) {
        throw std::invalid_argument("message index out of range");
    }
    const std::size_t own = order.rank(k, j);
    double interference = 0.0;
    for (const auto& m : order.sequence()) {
        if (order.rank(m.user, m.split) > own) {
            interference += s.user(m.user).h * powers.p[m.user][m.split];
        }
    }
    const double signal = s.user(k).h * powers.p[k][j];
    return s.bandwidth_hz() * std::log2(1.0 + signal / (interference + s.noise_power()));
}

double user_rate(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers, std::size_t k) {
    return message_rate(s, order, powers, k, 0) + message_rate(s, order, powers, k, 1);
}

std::vector<double> user_rates(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers) {
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        out[k] = user_rate(s, order, powers, k);
    }
    return out;
}

std::vector<DecodingOrder> enumerate_orders(std::size_t k_users) {
    if (k_users == 0) {
        throw std::invalid_argument("enumerate_orders: need at least one user");
    }
    if (k_users > kMaxOrderSearchUsers) {
        throw std::invalid_argument("enumerate_orders: exhaustive order search is limited to K <= 4");
    }
    // Multiset permutations of {0,0,1,1,...}; the first occurrence of a label is
    // split 0, so every sequence is canonical and each class appears once.
    std::vector<std::size_t> labels;
    for (std::size_t k = 0; k < k_users; ++k) {
        labels.push_back(k);
        labels.push_back(k);
    }
    std::vector<DecodingOrder> out;
    do {
        out.push_back(DecodingOrder::from_user_sequence(labels));
    } while (std::next_permutation(labels.begin(), labels.end()));
    return out;
}

}  // namespace rsma
