#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlf
{

using VarIndex = std::uint32_t;

enum class Op : std::uint8_t
{
    Var,
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
};

/// Immutable formula of the propositional modal language.
///
/// Formulas are shared trees; copying is cheap and concurrent reads are safe.
/// Diamond has no node of its own: `diamond(f)` builds `Not(Box(Not(f)))`,
/// and the printer renders that pattern back as `<>`.
class Formula
{
public:
    struct Node;

    Formula(); // Top

    [[nodiscard]] Op op() const noexcept;
    [[nodiscard]] VarIndex var() const; // Var only
    [[nodiscard]] const Formula& child() const; // Not / Box
    [[nodiscard]] const Formula& lhs() const;   // binary
    [[nodiscard]] const Formula& rhs() const;   // binary

    [[nodiscard]] bool is_unary() const noexcept { return op() == Op::Not || op() == Op::Box; }
    [[nodiscard]] bool is_binary() const noexcept;
    [[nodiscard]] bool is_atom() const noexcept { return op() == Op::Var || op() == Op::Top || op() == Op::Bottom; }

    /// Matches `Not(Box(Not(x)))`; `inner` receives x.
    [[nodiscard]] bool is_diamond(const Formula** inner = nullptr) const noexcept;

    [[nodiscard]] std::size_t hash() const noexcept;
    [[nodiscard]] std::size_t modal_depth() const noexcept;
    [[nodiscard]] std::size_t size() const noexcept;

    /// Identity of the shared node; stable while any copy is alive.
    [[nodiscard]] const void* id() const noexcept { return _node.get(); }

    friend bool operator==( const Formula& a, const Formula& b ) noexcept;
    friend bool operator<( const Formula& a, const Formula& b ) noexcept;

    static Formula make( Op op, VarIndex var, const Formula* a, const Formula* b );

private:
    explicit Formula( std::shared_ptr< const Node > node ) : _node{ std::move( node ) } {}
    explicit Formula( std::nullptr_t ) noexcept {}

    std::shared_ptr< const Node > _node;
};

struct Formula::Node
{
    Op op;
    VarIndex var = 0;
    Formula a{ nullptr };
    Formula b{ nullptr };
    std::size_t hash = 0;
    std::size_t depth = 0;
    std::size_t size = 1;
};

// Constructors.
[[nodiscard]] Formula var( VarIndex index );
[[nodiscard]] Formula top();
[[nodiscard]] Formula bottom();
[[nodiscard]] Formula neg( const Formula& f );
[[nodiscard]] Formula conj( const Formula& a, const Formula& b );
[[nodiscard]] Formula disj( const Formula& a, const Formula& b );
[[nodiscard]] Formula implies( const Formula& a, const Formula& b );
[[nodiscard]] Formula iff( const Formula& a, const Formula& b );
[[nodiscard]] Formula box( const Formula& f );
[[nodiscard]] Formula diamond( const Formula& f );

// Left-nested; empty gives Top / Bottom, a single element is returned as is.
[[nodiscard]] Formula conj_all( std::span< const Formula > fs );
[[nodiscard]] Formula disj_all( std::span< const Formula > fs );

using Substitution = std::map< VarIndex, Formula >;

/// Simultaneous substitution; unmapped variables are left alone.
[[nodiscard]] Formula substitute( const Formula& f, const Substitution& s );

/// The substitution equivalent to applying `first`, then `second`.
[[nodiscard]] Substitution compose( const Substitution& first, const Substitution& second );

[[nodiscard]] inline std::size_t modal_depth( const Formula& f ) { return f.modal_depth(); }

/// Sorted, without duplicates.
[[nodiscard]] std::vector< VarIndex > variables( const Formula& f );

/// Every distinct subformula, children before parents.
[[nodiscard]] std::vector< Formula > subformulas( const Formula& f );

/// Names for interned identifiers. Variables without a name print as `p<i>`.
class Symbols
{
public:
    [[nodiscard]] std::optional< VarIndex > lookup( std::string_view name ) const;
    [[nodiscard]] const std::string* name_of( VarIndex index ) const;
    void bind( std::string name, VarIndex index );
    [[nodiscard]] VarIndex max_index_plus_one() const noexcept { return _next; }

private:
    std::map< std::string, VarIndex, std::less<> > _by_name;
    std::map< VarIndex, std::string > _by_index;
    VarIndex _next = 0;
};

class ParseError : public std::runtime_error
{
public:
    ParseError( const std::string& message, std::size_t position );
    [[nodiscard]] std::size_t position() const noexcept { return _position; }
    /// The message without the position suffix.
    [[nodiscard]] const std::string& message() const noexcept { return _message; }

private:
    std::string _message;
    std::size_t _position;
};

/// Grammar, loosest first: `<->` (left), `->` (right), `|` (left), `&` (left),
/// then prefix `~`, `[]`, `<>`. Atoms are `p<digits>`, identifiers, `true`, `false`.
[[nodiscard]] Formula parse_formula( std::string_view text );
[[nodiscard]] Formula parse_formula( std::string_view text, Symbols& symbols );

/// Minimal-parenthesis rendering; `parse_formula(to_string(f)) == f`.
[[nodiscard]] std::string to_string( const Formula& f, const Symbols* symbols = nullptr );

} // namespace mlf

template<>
struct std::hash< mlf::Formula >
{
    std::size_t operator()( const mlf::Formula& f ) const noexcept { return f.hash(); }
};
