#pragma once

#include "mlf/control.hpp"
#include "mlf/multiverse.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlf
{

/// Ratchet and switches read off a monotone "value >= v" family U_1..U_N.
///
/// Values split into blocks of `block_len`; the derived ratchet says which
/// block the value has reached and switch i reads bit i of the position
/// inside the block. Independence is only claimed on `region`, the states
/// with at least 2^m values left in their block.
struct DerivedControls
{
    Multiverse multiverse;
    std::vector< ControlSentence > underlying; // U_1..U_N
    std::vector< ControlSentence > ratchet;    // U_B, U_2B, ...
    std::vector< ControlSentence > switches;
    std::vector< ControlSentence > buttons;    // controls kept unchanged
    std::uint32_t block_len = 0;
    std::vector< std::uint32_t > value;        // per state
    StateSet region;
};

/// Long ratchet of `n_blocks` blocks of 2^m * (horizon + 1) values.
[[nodiscard]] DerivedControls long_to_ratchet_switches( std::uint32_t n_blocks, std::uint32_t m_switches,
                                                        std::uint32_t horizon );

/// `n_total` buttons: the first `n_keep` stay buttons, the rest form a
/// ratchet valued (highest pushed index) - n_keep + 1, or 0, which is
/// then split into one switch over blocks of two.
[[nodiscard]] DerivedControls ord_buttons_conversion( std::uint32_t n_keep, std::uint32_t n_total );

/// Derivation from an arbitrary family; `underlying[v - 1]` is U_v.
[[nodiscard]] DerivedControls derive_controls( Multiverse mv, std::vector< ControlSentence > underlying,
                                               std::uint32_t block_len, std::uint32_t m_switches,
                                               std::vector< ControlSentence > kept_buttons = {} );

struct RatchetViolation
{
    std::size_t index = 0; // 1-based ratchet position
    std::string condition; // unpushed, pure, button, monotone, pushable
    std::size_t state = 0;
};

/// The ratchet conditions at the initial state, for r_1..r_n:
/// ~r_i; [G](r_i -> [G]r_i); [G]<G>[G]r_i; and for i < n,
/// [G](r_{i+1} -> r_i) and [G](~r_{i+1} -> <G>(r_i & ~r_{i+1})).
[[nodiscard]] std::optional< RatchetViolation > check_ratchet( const Multiverse& mv, std::span< const ControlSentence > r );

struct IndependenceViolation
{
    std::size_t state = 0;
    std::uint32_t pattern = 0;
    std::uint32_t kept = 0; // required kept-button set
};

/// From every region state, each switch pattern, combined with each
/// superset of the kept buttons pushed there, is reachable without leaving
/// the current block.
[[nodiscard]] std::optional< IndependenceViolation > check_switch_independence( const DerivedControls& dc );

} // namespace mlf
