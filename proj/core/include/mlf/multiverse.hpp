#pragma once

#include "mlf/control.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mlf
{

using StateSet = boost::dynamic_bitset<>;

struct LongRatchet
{
    std::uint32_t n_blocks = 0;
    std::uint32_t block_len = 0;

    [[nodiscard]] std::uint32_t values() const noexcept { return n_blocks * block_len; }
    friend bool operator==( const LongRatchet&, const LongRatchet& ) = default;
};

struct ControlSignature
{
    std::uint32_t n_buttons = 0;
    std::uint32_t n_switches = 0;
    std::uint32_t ratchet_len = 0;
    std::uint32_t n_weak = 0;
    std::optional< LongRatchet > long_ratchet;

    friend bool operator==( const ControlSignature&, const ControlSignature& ) = default;
};

class SignatureError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Controls are bitmasks indexed by control number.
struct MultiverseState
{
    std::uint32_t buttons = 0;
    std::uint32_t switches = 0;
    std::uint32_t ratchet = 0;
    std::uint32_t weak = 0;
    std::uint32_t long_value = 0;

    friend auto operator<=>( const MultiverseState&, const MultiverseState& ) = default;
};

/// Every configuration of a signature, with accessibility: buttons, weak
/// buttons, ratchet and long ratchet only move up, switches move freely,
/// and the full set of weak buttons is never reached.
///
/// State 0 is the initial all-off configuration; states are numbered in
/// lexicographic order of (buttons, switches, ratchet, weak, long value).
class Multiverse
{
public:
    static constexpr std::size_t max_states = 4096;

    /// Throws SignatureError on n_weak == 1, an empty long ratchet, or more
    /// than `max_states` states.
    explicit Multiverse( ControlSignature signature );

    [[nodiscard]] const ControlSignature& signature() const noexcept { return _sig; }
    [[nodiscard]] std::size_t state_count() const noexcept { return _states.size(); }
    [[nodiscard]] const MultiverseState& state( std::size_t i ) const { return _states.at( i ); }
    [[nodiscard]] std::size_t initial() const noexcept { return 0; }

    [[nodiscard]] bool valid( const MultiverseState& s ) const noexcept;
    /// Throws SignatureError for an invalid state.
    [[nodiscard]] std::size_t index_of( const MultiverseState& s ) const;

    /// A target with every weak button pushed is never accessible; other
    /// invalid states throw SignatureError.
    [[nodiscard]] bool accessible( const MultiverseState& s, const MultiverseState& t ) const;
    [[nodiscard]] const StateSet& successors( std::size_t i ) const { return _succ.at( i ); }

    /// Throws SignatureError when an atom index is outside the signature.
    [[nodiscard]] StateSet satisfying( const ControlSentence& s ) const;
    [[nodiscard]] bool eval( std::size_t state, const ControlSentence& s ) const;

    /// The states where some successor lies in `target`.
    [[nodiscard]] StateSet possibly( const StateSet& target ) const;
    /// The states all of whose successors lie in `target`.
    [[nodiscard]] StateSet necessarily( const StateSet& target ) const;

    /// A pair of states with no common successor, if any.
    [[nodiscard]] std::optional< std::pair< std::size_t, std::size_t > > directedness_failure() const;

private:
    friend class SentenceEvaluator;
    [[nodiscard]] bool atom_holds( const ControlSentence& atom, const MultiverseState& s ) const;

    ControlSignature _sig;
    std::vector< MultiverseState > _states;
    std::vector< StateSet > _succ;
};

/// Memoizes truth sets by sentence node, so shared subsentences are
/// evaluated once. Keeps every evaluated sentence alive.
class SentenceEvaluator
{
public:
    explicit SentenceEvaluator( const Multiverse& mv ) : _mv{ mv } {}

    const StateSet& satisfying( const ControlSentence& s );
    bool eval( std::size_t state, const ControlSentence& s ) { return satisfying( s ).test( state ); }

private:
    const Multiverse& _mv;
    std::unordered_map< const void*, StateSet > _cache;
    std::vector< ControlSentence > _keep;
};

/// Atom sentences of a signature: every b<i>, s<i>, w<i>, r>=<k> (k >= 1)
/// and L>=<v> (v >= 1).
[[nodiscard]] std::vector< ControlSentence > atom_sentences( const ControlSignature& sig );

/// The first (state, sentence index) where `<G>[G]f -> [G]<G>f` fails.
[[nodiscard]] std::optional< std::pair< std::size_t, std::size_t > >
dot2_failure( const Multiverse& mv, std::span< const ControlSentence > sentences );

} // namespace mlf
