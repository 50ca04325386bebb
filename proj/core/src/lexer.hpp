#pragma once

// Tokenizer and precedence parser shared by the modal formula and control
// sentence front ends. Private to the library.

#include "mlf/formula.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace mlf::detail
{

enum class Tok
{
    Ident,
    Number,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
    BoxG,
    DiaG,
    Ge,
    End,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector< Token > tokenize( std::string_view s )
{
    std::vector< Token > out;
    std::size_t i = 0;
    auto starts = [ & ]( std::string_view lit ) { return s.substr( i, lit.size() ) == lit; };
    while ( i < s.size() )
    {
        char c = s[ i ];
        if ( std::isspace( static_cast< unsigned char >( c ) ) )
        {
            ++i;
            continue;
        }
        std::size_t start = i;
        if ( std::isalpha( static_cast< unsigned char >( c ) ) || c == '_' )
        {
            while ( i < s.size() && ( std::isalnum( static_cast< unsigned char >( s[ i ] ) ) || s[ i ] == '_' ) )
                ++i;
            out.push_back( { Tok::Ident, std::string( s.substr( start, i - start ) ), start } );
            continue;
        }
        if ( std::isdigit( static_cast< unsigned char >( c ) ) )
        {
            while ( i < s.size() && std::isdigit( static_cast< unsigned char >( s[ i ] ) ) )
                ++i;
            out.push_back( { Tok::Number, std::string( s.substr( start, i - start ) ), start } );
            continue;
        }
        struct Lit
        {
            std::string_view text;
            Tok kind;
        };
        // Longest literals first.
        static constexpr Lit lits[] = {
            { "<->", Tok::Iff }, { "[G]", Tok::BoxG }, { "<G>", Tok::DiaG }, { "->", Tok::Implies },
            { "[]", Tok::Box },  { "<>", Tok::Diamond }, { ">=", Tok::Ge },   { "&&", Tok::And },
            { "||", Tok::Or },   { "(", Tok::LParen },  { ")", Tok::RParen }, { "~", Tok::Not },
            { "!", Tok::Not },   { "&", Tok::And },     { "|", Tok::Or },
        };
        bool matched = false;
        for ( const auto& lit : lits )
        {
            if ( starts( lit.text ) )
            {
                out.push_back( { lit.kind, std::string( lit.text ), start } );
                i += lit.text.size();
                matched = true;
                break;
            }
        }
        if ( !matched )
            throw ParseError( std::string( "unexpected character '" ) + c + "'", start );
    }
    out.push_back( { Tok::End, "", s.size() } );
    return out;
}

class TokenStream
{
public:
    explicit TokenStream( std::vector< Token > tokens ) : _tokens{ std::move( tokens ) } {}

    [[nodiscard]] const Token& peek() const { return _tokens[ _at ]; }
    const Token& next() { return _tokens[ _at < _tokens.size() - 1 ? _at++ : _at ]; }
    bool accept( Tok kind )
    {
        if ( peek().kind != kind )
            return false;
        next();
        return true;
    }
    const Token& expect( Tok kind, const char* what )
    {
        if ( peek().kind != kind )
            throw ParseError( std::string( "expected " ) + what, peek().pos );
        return next();
    }
    [[nodiscard]] const std::vector< Token >& tokens() const { return _tokens; }

private:
    std::vector< Token > _tokens;
    std::size_t _at = 0;
};

/// Precedence climbing over the shared connective grammar. `Hooks` supplies
/// `Tree atom(TokenStream&)`, `bool is_prefix(Tok)`, `Tree prefix(Tok, Tree)`
/// and `Tree binary(Tok, Tree, Tree)`.
template< class Tree, class Hooks >
class ConnectiveParser
{
public:
    ConnectiveParser( TokenStream& ts, Hooks& hooks ) : _ts{ ts }, _hooks{ hooks } {}

    Tree parse_all()
    {
        Tree t = iff();
        if ( _ts.peek().kind != Tok::End )
            throw ParseError( "unexpected '" + _ts.peek().text + "'", _ts.peek().pos );
        return t;
    }

private:
    Tree iff()
    {
        Tree t = imp();
        while ( _ts.accept( Tok::Iff ) )
            t = _hooks.binary( Tok::Iff, std::move( t ), imp() );
        return t;
    }

    Tree imp()
    {
        Tree t = disj();
        if ( _ts.accept( Tok::Implies ) )
            return _hooks.binary( Tok::Implies, std::move( t ), imp() );
        return t;
    }

    Tree disj()
    {
        Tree t = conj();
        while ( _ts.accept( Tok::Or ) )
            t = _hooks.binary( Tok::Or, std::move( t ), conj() );
        return t;
    }

    Tree conj()
    {
        Tree t = unary();
        while ( _ts.accept( Tok::And ) )
            t = _hooks.binary( Tok::And, std::move( t ), unary() );
        return t;
    }

    Tree unary()
    {
        Tok k = _ts.peek().kind;
        if ( _hooks.is_prefix( k ) )
        {
            _ts.next();
            return _hooks.prefix( k, unary() );
        }
        if ( _ts.accept( Tok::LParen ) )
        {
            Tree t = iff();
            _ts.expect( Tok::RParen, "')'" );
            return t;
        }
        if ( k == Tok::End )
            throw ParseError( "unexpected end of input", _ts.peek().pos );
        return _hooks.atom( _ts );
    }

    TokenStream& _ts;
    Hooks& _hooks;
};

/// Binding strength used by both printers: larger binds tighter.
enum Prec : int
{
    PrecIff = 1,
    PrecImplies = 2,
    PrecOr = 3,
    PrecAnd = 4,
    PrecUnary = 5,
    PrecAtom = 6,
};

inline bool parse_index( std::string_view digits, std::size_t& out )
{
    if ( digits.empty() || digits.size() > 9 )
        return false;
    out = 0;
    for ( char c : digits )
    {
        if ( !std::isdigit( static_cast< unsigned char >( c ) ) )
            return false;
        out = out * 10 + static_cast< std::size_t >( c - '0' );
    }
    return true;
}

} // namespace mlf::detail
