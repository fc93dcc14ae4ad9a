// link.hpp — the link product on Choi operators over shared legs.
#pragma once

#include "chanlink/channel.hpp"

#include <string>
#include <vector>

namespace chanlink {

// Choi of (I x n) after (m x I), contracting m's shared output legs with n's
// equally-labeled input legs:
//   Tr_shared[(N x I)(M^{T_shared} x I)].
// Surviving legs keep m-then-n order: out = m.out\shared ++ n.out,
// in = m.in ++ n.in\shared. Empty `shared` degenerates to tensor_channel(m,n).
Channel link_product(const Channel& n, const Channel& m, const std::vector<std::string>& shared);

// n-fold self-link = n-fold tensor power (finite dimension); copy k >= 1 gets
// its leg labels suffixed with "@k".
Channel self_link_power(const Channel& m, int n);

} // namespace chanlink
