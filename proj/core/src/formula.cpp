#include "mlf/formula.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace mlf
{

namespace
{

std::size_t mix( std::size_t seed, std::size_t value )
{
    return seed ^ ( value + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 ) );
}

int arity( Op op )
{
    switch ( op )
    {
    case Op::Var:
    case Op::Top:
    case Op::Bottom:
        return 0;
    case Op::Not:
    case Op::Box:
        return 1;
    default:
        return 2;
    }
}

} // namespace

Formula Formula::make( Op op, VarIndex var, const Formula* a, const Formula* b )
{
    auto node = std::make_shared< Node >();
    node->op = op;
    node->var = op == Op::Var ? var : 0;
    std::size_t h = mix( static_cast< std::size_t >( op ), node->var );
    if ( a )
    {
        node->a = *a;
        h = mix( h, a->hash() );
        node->depth = a->modal_depth();
        node->size += a->size();
    }
    if ( b )
    {
        node->b = *b;
        h = mix( h, b->hash() );
        node->depth = std::max( node->depth, b->modal_depth() );
        node->size += b->size();
    }
    if ( op == Op::Box )
        ++node->depth;
    node->hash = h;
    return Formula{ std::shared_ptr< const Node >{ std::move( node ) } };
}

Formula::Formula()
{
    static const Formula top_singleton = make( Op::Top, 0, nullptr, nullptr );
    _node = top_singleton._node;
}

Op Formula::op() const noexcept { return _node->op; }

VarIndex Formula::var() const
{
    if ( _node->op != Op::Var )
        throw std::logic_error( "Formula::var on a non-variable" );
    return _node->var;
}

const Formula& Formula::child() const
{
    if ( !is_unary() )
        throw std::logic_error( "Formula::child on a non-unary node" );
    return _node->a;
}

const Formula& Formula::lhs() const
{
    if ( !is_binary() )
        throw std::logic_error( "Formula::lhs on a non-binary node" );
    return _node->a;
}

const Formula& Formula::rhs() const
{
    if ( !is_binary() )
        throw std::logic_error( "Formula::rhs on a non-binary node" );
    return _node->b;
}

bool Formula::is_binary() const noexcept { return arity( op() ) == 2; }

bool Formula::is_diamond( const Formula** inner ) const noexcept
{
    if ( op() != Op::Not )
        return false;
    const Formula& b = _node->a;
    if ( b.op() != Op::Box )
        return false;
    const Formula& n = b._node->a;
    if ( n.op() != Op::Not )
        return false;
    if ( inner )
        *inner = &n._node->a;
    return true;
}

std::size_t Formula::hash() const noexcept { return _node->hash; }
std::size_t Formula::modal_depth() const noexcept { return _node->depth; }
std::size_t Formula::size() const noexcept { return _node->size; }

bool operator==( const Formula& a, const Formula& b ) noexcept
{
    if ( a._node == b._node )
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    if ( x.hash != y.hash || x.op != y.op || x.var != y.var || x.size != y.size )
        return false;
    switch ( arity( x.op ) )
    {
    case 0:
        return true;
    case 1:
        return x.a == y.a;
    default:
        return x.a == y.a && x.b == y.b;
    }
}

bool operator<( const Formula& a, const Formula& b ) noexcept
{
    if ( a._node == b._node )
        return false;
    const auto& x = *a._node;
    const auto& y = *b._node;
    if ( x.op != y.op )
        return x.op < y.op;
    switch ( arity( x.op ) )
    {
    case 0:
        return x.var < y.var;
    case 1:
        return x.a < y.a;
    default:
        if ( x.a == y.a )
            return x.b < y.b;
        return x.a < y.a;
    }
}

Formula var( VarIndex index ) { return Formula::make( Op::Var, index, nullptr, nullptr ); }

Formula top() { return Formula{}; }

Formula bottom()
{
    static const Formula f = Formula::make( Op::Bottom, 0, nullptr, nullptr );
    return f;
}

Formula neg( const Formula& f ) { return Formula::make( Op::Not, 0, &f, nullptr ); }
Formula conj( const Formula& a, const Formula& b ) { return Formula::make( Op::And, 0, &a, &b ); }
Formula disj( const Formula& a, const Formula& b ) { return Formula::make( Op::Or, 0, &a, &b ); }
Formula implies( const Formula& a, const Formula& b ) { return Formula::make( Op::Implies, 0, &a, &b ); }
Formula iff( const Formula& a, const Formula& b ) { return Formula::make( Op::Iff, 0, &a, &b ); }
Formula box( const Formula& f ) { return Formula::make( Op::Box, 0, &f, nullptr ); }
Formula diamond( const Formula& f ) { return neg( box( neg( f ) ) ); }

Formula conj_all( std::span< const Formula > fs )
{
    if ( fs.empty() )
        return top();
    Formula acc = fs.front();
    for ( const auto& f : fs.subspan( 1 ) )
        acc = conj( acc, f );
    return acc;
}

Formula disj_all( std::span< const Formula > fs )
{
    if ( fs.empty() )
        return bottom();
    Formula acc = fs.front();
    for ( const auto& f : fs.subspan( 1 ) )
        acc = disj( acc, f );
    return acc;
}

Formula substitute( const Formula& f, const Substitution& s )
{
    switch ( f.op() )
    {
    case Op::Var:
    {
        auto it = s.find( f.var() );
        return it == s.end() ? f : it->second;
    }
    case Op::Top:
    case Op::Bottom:
        return f;
    case Op::Not:
    case Op::Box:
    {
        Formula c = substitute( f.child(), s );
        return c == f.child() ? f : Formula::make( f.op(), 0, &c, nullptr );
    }
    default:
    {
        Formula a = substitute( f.lhs(), s );
        Formula b = substitute( f.rhs(), s );
        if ( a == f.lhs() && b == f.rhs() )
            return f;
        return Formula::make( f.op(), 0, &a, &b );
    }
    }
}

Substitution compose( const Substitution& first, const Substitution& second )
{
    Substitution out = second;
    for ( const auto& [ v, f ] : first )
        out[ v ] = substitute( f, second );
    return out;
}

namespace
{

void collect_vars( const Formula& f, std::vector< VarIndex >& out )
{
    switch ( f.op() )
    {
    case Op::Var:
        out.push_back( f.var() );
        return;
    case Op::Top:
    case Op::Bottom:
        return;
    case Op::Not:
    case Op::Box:
        collect_vars( f.child(), out );
        return;
    default:
        collect_vars( f.lhs(), out );
        collect_vars( f.rhs(), out );
    }
}

void collect_subformulas( const Formula& f, std::unordered_set< Formula >& seen, std::vector< Formula >& out )
{
    if ( seen.contains( f ) )
        return;
    if ( f.is_unary() )
        collect_subformulas( f.child(), seen, out );
    else if ( f.is_binary() )
    {
        collect_subformulas( f.lhs(), seen, out );
        collect_subformulas( f.rhs(), seen, out );
    }
    seen.insert( f );
    out.push_back( f );
}

} // namespace

std::vector< VarIndex > variables( const Formula& f )
{
    std::vector< VarIndex > out;
    collect_vars( f, out );
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

std::vector< Formula > subformulas( const Formula& f )
{
    std::unordered_set< Formula > seen;
    std::vector< Formula > out;
    collect_subformulas( f, seen, out );
    return out;
}

std::optional< VarIndex > Symbols::lookup( std::string_view name ) const
{
    auto it = _by_name.find( name );
    if ( it == _by_name.end() )
        return std::nullopt;
    return it->second;
}

const std::string* Symbols::name_of( VarIndex index ) const
{
    auto it = _by_index.find( index );
    return it == _by_index.end() ? nullptr : &it->second;
}

void Symbols::bind( std::string name, VarIndex index )
{
    _by_index[ index ] = name;
    _by_name[ std::move( name ) ] = index;
    _next = std::max( _next, index + 1 );
}

ParseError::ParseError( const std::string& message, std::size_t position )
    : std::runtime_error( message + " at position " + std::to_string( position ) ), _message{ message }, _position{ position }
{}

} // namespace mlf
