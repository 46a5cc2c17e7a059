#pragma once

#include <string>

#include "macsense/channel.hpp"
#include "macsense/scheme.hpp"

namespace macsense {

// Channel documents are JSON with keys:
//   alphabets : name -> symbol list, for S1,S2,X1,X2,Y,Z1,Z2
//   state_pmf : flat list, row-major over (S1,S2)
//   kernel    : flat list, row-major over (S1,S2,X1,X2,Y,Z1,Z2), S1 slowest
//   distortion (optional): { "user1"|"user2": {reconstruction, matrix} }
// Probabilities are decimal strings or JSON numbers; exact rationals "p/q"
// are also accepted. save_channel emits shortest round-trip decimal strings,
// so that a load(save(x)) round-trip reproduces tensors bit-identically.
ChannelSpec load_channel(const std::string& text);
std::string save_channel(const ChannelSpec& channel);

// Scheme documents mirror the channel format with keys `aux_alphabets`
// (U0,U1,U2,V1,V2) and one flat tensor per conditional pmf, same row-major
// convention (conditioning slowest, output fastest):
//   p_u0, p_u1_given_u0, p_u2_given_u0, p_x1_given_u0_u1, p_x2_given_u0_u2,
//   p_v1_given_u0_u2_x1_z1, p_v2_given_u0_u1_x2_z2
// The channel supplies the X/Z dimensions.
SchemeSpec load_scheme(const std::string& text, const ChannelSpec& channel);
std::string save_scheme(const SchemeSpec& scheme);

}  // namespace macsense
