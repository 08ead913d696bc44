#pragma once

#include <vector>

#include "sgsim/errors.hpp"
#include "sgsim/power_grid.hpp"
#include "sgsim/social_graph.hpp"

namespace sgsim {

/// Bijective partial map between demand buses and social users.
class Coupling {
public:
    Coupling() = default;
    Coupling(int bus_count, int user_count) { resize(bus_count, user_count); }

    void resize(int bus_count, int user_count) {
        user_of_bus_.assign(static_cast<std::size_t>(bus_count), -1);
        bus_of_user_.assign(static_cast<std::size_t>(user_count), -1);
    }

    void link(BusId bus, UserId user) {
        if (bus < 0 || static_cast<std::size_t>(bus) >= user_of_bus_.size() ||
            user < 0 || static_cast<std::size_t>(user) >= bus_of_user_.size())
            throw ValidationError("coupling pair out of range");
        if (user_of_bus_[static_cast<std::size_t>(bus)] >= 0 ||
            bus_of_user_[static_cast<std::size_t>(user)] >= 0)
            throw ValidationError("coupling must be injective in both directions");
        user_of_bus_[static_cast<std::size_t>(bus)] = user;
        bus_of_user_[static_cast<std::size_t>(user)] = bus;
    }

    bool bus_is_linked(BusId bus) const {
        return bus >= 0 && static_cast<std::size_t>(bus) < user_of_bus_.size() &&
               user_of_bus_[static_cast<std::size_t>(bus)] >= 0;
    }

    bool user_is_linked(UserId user) const {
        return user >= 0 && static_cast<std::size_t>(user) < bus_of_user_.size() &&
               bus_of_user_[static_cast<std::size_t>(user)] >= 0;
    }

    /// Coupled user of a demand bus; -1 when unmapped.
    UserId user_of(BusId bus) const {
        return bus_is_linked(bus) ? user_of_bus_[static_cast<std::size_t>(bus)] : -1;
    }

    /// Coupled demand bus of a user; -1 when unmapped.
    BusId bus_of(UserId user) const {
        return user_is_linked(user) ? bus_of_user_[static_cast<std::size_t>(user)] : -1;
    }

    /// All (bus, user) pairs ordered by bus id.
    std::vector<std::pair<BusId, UserId>> pairs() const {
        std::vector<std::pair<BusId, UserId>> out;
        for (std::size_t b = 0; b < user_of_bus_.size(); ++b)
            if (user_of_bus_[b] >= 0) out.emplace_back(static_cast<BusId>(b), user_of_bus_[b]);
        return out;
    }

    /// Coupled users V_S^p, ordered by bus id.
    std::vector<UserId> coupled_users() const {
        std::vector<UserId> out;
        for (int u : user_of_bus_)
            if (u >= 0) out.push_back(u);
        return out;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (int u : user_of_bus_)
            if (u >= 0) ++n;
        return n;
    }

private:
    std::vector<UserId> user_of_bus_;
    std::vector<BusId> bus_of_user_;
};

} // namespace sgsim
