#include "mlf/kripke.hpp"
#include "mlf/parallel.hpp"

#include <algorithm>
#include <unordered_map>

namespace mlf
{

namespace
{

/// Straight-line program over the distinct subformulas of a formula; slot i
/// holds the set of worlds where instruction i is true.
struct Program
{
    struct Instr
    {
        Op op;
        std::uint32_t a = 0;
        std::uint32_t b = 0; // Var: position in the sorted variable list
    };

    std::vector< Instr > code;
    std::vector< VarIndex > vars;

    explicit Program( const Formula& f ) : vars{ variables( f ) }
    {
        std::unordered_map< Formula, std::uint32_t > slot;
        for ( const auto& g : subformulas( f ) )
        {
            Instr in{ g.op() };
            if ( g.op() == Op::Var )
                in.b = static_cast< std::uint32_t >( std::lower_bound( vars.begin(), vars.end(), g.var() ) - vars.begin() );
            else if ( g.is_unary() )
                in.a = slot.at( g.child() );
            else if ( g.is_binary() )
            {
                in.a = slot.at( g.lhs() );
                in.b = slot.at( g.rhs() );
            }
            slot.emplace( g, static_cast< std::uint32_t >( code.size() ) );
            code.push_back( in );
        }
    }
};

/// Evaluates a program on one frame; `box` is tabulated for small frames.
class Evaluator
{
public:
    Evaluator( const Program& p, const Frame& f ) : _p{ p }, _succ{ f.successor_masks() }, _all{ f.all() }
    {
        _slots.resize( p.code.size() );
        if ( f.size() <= table_limit )
        {
            _table.resize( std::size_t{ 1 } << f.size() );
            for ( std::size_t s = 0; s < _table.size(); ++s )
                _table[ s ] = box_direct( s );
        }
    }

    /// `rows[i]` is the truth set of the i-th program variable.
    WorldMask run( std::span< const WorldMask > rows )
    {
        const std::size_t n = _p.code.size();
        for ( std::size_t i = 0; i < n; ++i )
        {
            const auto& in = _p.code[ i ];
            WorldMask v = 0;
            switch ( in.op )
            {
            case Op::Var: v = rows[ in.b ]; break;
            case Op::Top: v = _all; break;
            case Op::Bottom: v = 0; break;
            case Op::Not: v = _all & ~_slots[ in.a ]; break;
            case Op::And: v = _slots[ in.a ] & _slots[ in.b ]; break;
            case Op::Or: v = _slots[ in.a ] | _slots[ in.b ]; break;
            case Op::Implies: v = _all & ( ~_slots[ in.a ] | _slots[ in.b ] ); break;
            case Op::Iff: v = _all & ~( _slots[ in.a ] ^ _slots[ in.b ] ); break;
            case Op::Box: v = _table.empty() ? box_direct( _slots[ in.a ] ) : _table[ _slots[ in.a ] ]; break;
            }
            _slots[ i ] = v;
        }
        return _slots.back();
    }

private:
    static constexpr std::size_t table_limit = 12;

    WorldMask box_direct( WorldMask s ) const
    {
        WorldMask out = 0;
        for ( std::size_t w = 0; w < _succ.size(); ++w )
            if ( ( _succ[ w ] & ~s ) == 0 )
                out |= world_bit( w );
        return out;
    }

    const Program& _p;
    const std::vector< WorldMask >& _succ;
    WorldMask _all;
    std::vector< WorldMask > _table;
    std::vector< WorldMask > _slots;
};

} // namespace

UnknownVariable::UnknownVariable( VarIndex v )
    : std::out_of_range( "no valuation for variable p" + std::to_string( v ) ), _var{ v }
{
}

KripkeModel::KripkeModel( Frame frame, Valuation valuation ) : _frame{ std::move( frame ) }, _val{ std::move( valuation ) }
{
    for ( const auto& [ v, mask ] : _val )
        if ( mask & ~_frame.all() )
            throw FrameError( "valuation of p" + std::to_string( v ) + " mentions a world outside the frame" );
}

WorldMask KripkeModel::truth( VarIndex v ) const
{
    auto it = _val.find( v );
    if ( it == _val.end() )
        throw UnknownVariable( v );
    return it->second;
}

WorldMask KripkeModel::satisfying( const Formula& f ) const
{
    const Program p{ f };
    std::vector< WorldMask > rows;
    rows.reserve( p.vars.size() );
    for ( auto v : p.vars )
        rows.push_back( truth( v ) );
    Evaluator ev{ p, _frame };
    return ev.run( rows );
}

bool eval( const KripkeModel& m, std::size_t world, const Formula& f )
{
    if ( world >= m.size() )
        throw std::out_of_range( "world " + std::to_string( world ) + " out of range" );
    return contains( m.satisfying( f ), world );
}

std::vector< Formula > truth_set( const KripkeModel& m, std::size_t world, std::span< const Formula > universe )
{
    if ( world >= m.size() )
        throw std::out_of_range( "world " + std::to_string( world ) + " out of range" );
    std::vector< Formula > out;
    for ( const auto& f : universe )
        if ( contains( m.satisfying( f ), world ) )
            out.push_back( f );
    return out;
}

std::optional< Countermodel > find_countermodel( const Frame& frame, const Formula& f, const ValidityOptions& options )
{
    const Program program{ f };
    const std::size_t n = frame.size();
    const std::size_t bits = program.vars.size() * n;
    if ( bits > options.max_bits )
        throw ExplosionError( "validity sweep over " + std::to_string( program.vars.size() ) + " variables and "
                              + std::to_string( n ) + " worlds needs 2^" + std::to_string( bits )
                              + " valuations (limit 2^" + std::to_string( options.max_bits ) + ")" );
    if ( bits >= 64 )
        throw ExplosionError( "valuation index does not fit in 64 bits" );

    const std::uint64_t count = std::uint64_t{ 1 } << bits;
    const WorldMask all = frame.all();
    const std::size_t k = program.vars.size();
    const unsigned threads = options.threads ? options.threads : default_threads();

    auto make = [ & ] {
        return [ & , ev = Evaluator{ program, frame }, rows = std::vector< WorldMask >( k ) ]( std::uint64_t index ) mutable {
            for ( std::size_t i = 0; i < k; ++i )
                rows[ i ] = ( index >> ( i * n ) ) & all;
            return ev.run( rows ) != all;
        };
    };
    const std::uint64_t hit = first_index_where( count, threads, make );
    if ( hit == count )
        return std::nullopt;

    KripkeModel::Valuation val;
    for ( std::size_t i = 0; i < k; ++i )
        val[ program.vars[ i ] ] = ( hit >> ( i * n ) ) & all;
    KripkeModel model{ frame, std::move( val ) };
    const WorldMask failing = all & ~model.satisfying( f );
    return Countermodel{ std::move( model ), static_cast< std::size_t >( std::countr_zero( failing ) ), f };
}

ToplessExpansion toplessify( const KripkeModel& m )
{
    const auto bs = boolean_structure( m.frame(), false );
    if ( !bs )
        throw FrameError( "toplessify needs a pre-Boolean algebra frame" );
    const std::size_t k = bs->atoms;
    const auto& q = bs->quotient;
    const std::uint32_t old_full = static_cast< std::uint32_t >( ( std::size_t{ 1 } << k ) - 1 );
    const std::uint32_t new_full = static_cast< std::uint32_t >( ( std::size_t{ 1 } << ( k + 1 ) ) - 1 );
    const WorldMask top_cluster = q.members[ bs->cluster_of_subset[ old_full ] ];

    // Old worlds first, in their own order; then the copies of the top cluster.
    std::vector< std::uint32_t > subset;
    std::vector< std::size_t > source;
    std::vector< WorldLabel > labels;
    std::vector< std::uint32_t > copies( std::size_t{ 1 } << k, 0 );
    for ( std::size_t w = 0; w < m.size(); ++w )
    {
        const std::uint32_t s = bs->subset_of_cluster[ q.cluster_of[ w ] ];
        subset.push_back( s );
        source.push_back( w );
        labels.push_back( { s, copies[ s ]++ } );
    }
    const std::uint32_t fresh = old_full + 1;
    for ( std::uint32_t s = fresh; s < new_full; ++s )
    {
        std::uint32_t copy = 0;
        for ( WorldMask rest = top_cluster; rest; rest &= rest - 1 )
        {
            subset.push_back( s );
            source.push_back( static_cast< std::size_t >( std::countr_zero( rest ) ) );
            labels.push_back( { s, copy++ } );
        }
    }
    const std::size_t n = subset.size();
    if ( n > max_worlds )
        throw FrameError( "topless expansion exceeds " + std::to_string( max_worlds ) + " worlds" );

    std::vector< WorldMask > succ( n, 0 );
    for ( std::size_t x = 0; x < n; ++x )
        for ( std::size_t y = 0; y < n; ++y )
            if ( ( subset[ x ] & ~subset[ y ] ) == 0 )
                succ[ x ] |= world_bit( y );

    KripkeModel::Valuation val;
    for ( const auto& [ v, mask ] : m.valuation() )
    {
        WorldMask out = 0;
        for ( std::size_t x = 0; x < n; ++x )
            if ( contains( mask, source[ x ] ) )
                out |= world_bit( x );
        val[ v ] = out;
    }
    return { KripkeModel{ Frame{ std::move( succ ), std::move( labels ) }, std::move( val ) }, std::move( source ) };
}

Formula jankov_fine( const Frame& f, VarIndex first_var )
{
    if ( !is_preorder( f ) )
        throw FrameError( "Jankov-Fine formula needs a preorder" );
    const auto w0 = initial_world( f );
    if ( !w0 )
        throw FrameError( "Jankov-Fine formula needs an initial world" );
    const std::size_t n = f.size();
    auto phi = [ & ]( std::size_t w ) { return var( first_var + static_cast< VarIndex >( w ) ); };

    std::vector< Formula > exactly;
    std::vector< Formula > shape;
    for ( std::size_t w = 0; w < n; ++w )
    {
        std::vector< Formula > cell{ phi( w ) };
        std::vector< Formula > poss;
        for ( std::size_t u = 0; u < n; ++u )
        {
            if ( u != w )
                cell.push_back( neg( phi( u ) ) );
            poss.push_back( f.related( w, u ) ? diamond( phi( u ) ) : neg( diamond( phi( u ) ) ) );
        }
        exactly.push_back( conj_all( cell ) );
        shape.push_back( implies( phi( w ), conj_all( poss ) ) );
    }
    const Formula clauses = conj( disj_all( exactly ), conj_all( shape ) );
    return conj( phi( *w0 ), conj( clauses, box( clauses ) ) );
}

} // namespace mlf
