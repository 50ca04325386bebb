#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace mlf
{

enum class CtlOp : std::uint8_t
{
    Button,       // b<i>: button i is pushed
    Switch,       // s<i>: switch i is on
    RatchetAtLeast, // r>=<k>
    Weak,         // w<i>: weak button i is pushed
    LongAtLeast,  // L>=<v>
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    BoxG,
    DiaG,
};

/// Sentence about a multiverse state: control atoms, connectives, and the
/// modalities over accessible states. Immutable and cheap to copy.
class ControlSentence
{
public:
    struct Node;

    ControlSentence(); // Top

    [[nodiscard]] CtlOp op() const noexcept;
    [[nodiscard]] std::uint32_t index() const noexcept; // atoms only
    [[nodiscard]] ControlSentence child() const;        // Not, BoxG, DiaG
    [[nodiscard]] ControlSentence lhs() const;
    [[nodiscard]] ControlSentence rhs() const;

    [[nodiscard]] bool is_atom() const noexcept { return op() <= CtlOp::Bottom; }
    [[nodiscard]] bool is_unary() const noexcept { return op() == CtlOp::Not || op() == CtlOp::BoxG || op() == CtlOp::DiaG; }
    [[nodiscard]] bool is_binary() const noexcept { return op() >= CtlOp::And && op() <= CtlOp::Iff; }

    /// Identity of the shared node, for memoization.
    [[nodiscard]] const void* id() const noexcept { return _node.get(); }

    /// Structural equality.
    friend bool operator==( const ControlSentence& a, const ControlSentence& b ) noexcept;

    static ControlSentence make( CtlOp op, std::uint32_t index, const ControlSentence* a = nullptr,
                                 const ControlSentence* b = nullptr );

private:
    explicit ControlSentence( std::shared_ptr< const Node > n ) : _node{ std::move( n ) } {}
    std::shared_ptr< const Node > _node;
};

struct ControlSentence::Node
{
    CtlOp op;
    std::uint32_t index = 0;
    std::shared_ptr< const Node > a;
    std::shared_ptr< const Node > b;
};

namespace control
{

[[nodiscard]] ControlSentence button( std::uint32_t i );
[[nodiscard]] ControlSentence switch_on( std::uint32_t i );
[[nodiscard]] ControlSentence ratchet_at_least( std::uint32_t k );
[[nodiscard]] ControlSentence weak( std::uint32_t i );
[[nodiscard]] ControlSentence long_at_least( std::uint32_t v );
[[nodiscard]] ControlSentence top();
[[nodiscard]] ControlSentence bottom();
[[nodiscard]] ControlSentence neg( const ControlSentence& a );
[[nodiscard]] ControlSentence conj( const ControlSentence& a, const ControlSentence& b );
[[nodiscard]] ControlSentence disj( const ControlSentence& a, const ControlSentence& b );
[[nodiscard]] ControlSentence implies( const ControlSentence& a, const ControlSentence& b );
[[nodiscard]] ControlSentence iff( const ControlSentence& a, const ControlSentence& b );
[[nodiscard]] ControlSentence box_g( const ControlSentence& a );
[[nodiscard]] ControlSentence dia_g( const ControlSentence& a );
/// Left-nested; empty gives Top / Bottom, one element is returned as is.
[[nodiscard]] ControlSentence conj_all( std::span< const ControlSentence > xs );
[[nodiscard]] ControlSentence disj_all( std::span< const ControlSentence > xs );

} // namespace control

/// Atoms `b<i>`, `s<i>`, `w<i>`, `r>=<k>`, `L>=<v>`, `true`, `false`; the
/// formula connectives; `[G]` and `<G>` as prefix modalities.
[[nodiscard]] ControlSentence parse_control_sentence( std::string_view text );
[[nodiscard]] std::string to_string( const ControlSentence& s );

} // namespace mlf
