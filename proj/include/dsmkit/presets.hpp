#pragma once

#include <string_view>

#include "dsmkit/lti.hpp"

namespace dsmkit {

/// Named shaping filters used throughout the tests and the CLI:
///   "dsm1": G(z) = 1/(z-1)    (A=[1], B=[1], C=[1]),
///   "dsm2": G(z) = z/(z-1)^2  (A=[[2,-1],[1,0]], B=[1,0]^T, C=[1,0]).
/// Both have CB = 1. Throws DomainError on an unknown name.
StateSpace state_space_preset(std::string_view name);

}  // namespace dsmkit
