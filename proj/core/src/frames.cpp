#include "mlf/frames.hpp"

#include <algorithm>
#include <cctype>

namespace mlf
{

Frame::Frame( std::vector< WorldMask > successors, std::vector< WorldLabel > labels )
    : _succ{ std::move( successors ) }, _labels{ std::move( labels ) }
{
    if ( _succ.size() > max_worlds )
        throw FrameError( "frames are limited to " + std::to_string( max_worlds ) + " worlds" );
    const WorldMask range = all_worlds( _succ.size() );
    for ( auto m : _succ )
        if ( m & ~range )
            throw FrameError( "accessibility pair out of range" );
    if ( !_labels.empty() && _labels.size() != _succ.size() )
        throw FrameError( "label count does not match world count" );
}

Frame Frame::from_pairs( std::size_t worlds, std::span< const std::pair< std::size_t, std::size_t > > pairs )
{
    if ( worlds > max_worlds )
        throw FrameError( "frames are limited to " + std::to_string( max_worlds ) + " worlds" );
    std::vector< WorldMask > succ( worlds, 0 );
    for ( auto [ i, j ] : pairs )
    {
        if ( i >= worlds || j >= worlds )
            throw FrameError( "accessibility pair (" + std::to_string( i ) + "," + std::to_string( j ) + ") out of range" );
        succ[ i ] |= world_bit( j );
    }
    return Frame{ std::move( succ ) };
}

WorldMask Frame::predecessors( std::size_t w ) const
{
    WorldMask out = 0;
    for ( std::size_t i = 0; i < size(); ++i )
        if ( contains( _succ[ i ], w ) )
            out |= world_bit( i );
    return out;
}

std::vector< std::pair< std::size_t, std::size_t > > Frame::pairs() const
{
    std::vector< std::pair< std::size_t, std::size_t > > out;
    for ( std::size_t i = 0; i < size(); ++i )
        for ( std::size_t j = 0; j < size(); ++j )
            if ( contains( _succ[ i ], j ) )
                out.emplace_back( i, j );
    return out;
}

bool is_reflexive( const Frame& f )
{
    for ( std::size_t i = 0; i < f.size(); ++i )
        if ( !f.related( i, i ) )
            return false;
    return true;
}

bool is_transitive( const Frame& f )
{
    for ( std::size_t i = 0; i < f.size(); ++i )
    {
        WorldMask reach = f.successors( i );
        for ( WorldMask rest = reach; rest; rest &= rest - 1 )
        {
            auto j = static_cast< std::size_t >( std::countr_zero( rest ) );
            if ( f.successors( j ) & ~reach )
                return false;
        }
    }
    return true;
}

bool is_preorder( const Frame& f ) { return is_reflexive( f ) && is_transitive( f ); }

std::optional< std::size_t > initial_world( const Frame& f )
{
    for ( std::size_t i = 0; i < f.size(); ++i )
        if ( ( f.successors( i ) | world_bit( i ) ) == f.all() )
            return i;
    return std::nullopt;
}

std::size_t ClusterQuotient::max_cluster_size() const
{
    std::size_t best = 0;
    for ( auto m : members )
        best = std::max< std::size_t >( best, static_cast< std::size_t >( std::popcount( m ) ) );
    return best;
}

ClusterQuotient quotient( const Frame& f )
{
    if ( !is_preorder( f ) )
        throw FrameError( "quotient requires a reflexive transitive frame" );
    ClusterQuotient q;
    const std::size_t none = f.size();
    q.cluster_of.assign( f.size(), none );
    for ( std::size_t i = 0; i < f.size(); ++i )
    {
        if ( q.cluster_of[ i ] != none )
            continue;
        const std::size_t id = q.members.size();
        WorldMask cluster = f.successors( i ) & f.predecessors( i );
        q.members.push_back( cluster );
        for ( WorldMask rest = cluster; rest; rest &= rest - 1 )
            q.cluster_of[ static_cast< std::size_t >( std::countr_zero( rest ) ) ] = id;
    }
    q.strictly_above.assign( q.members.size(), 0 );
    for ( std::size_t c = 0; c < q.members.size(); ++c )
    {
        auto rep = static_cast< std::size_t >( std::countr_zero( q.members[ c ] ) );
        for ( WorldMask rest = f.successors( rep ); rest; rest &= rest - 1 )
        {
            std::size_t d = q.cluster_of[ static_cast< std::size_t >( std::countr_zero( rest ) ) ];
            if ( d != c )
                q.strictly_above[ c ] |= world_bit( d );
        }
    }
    return q;
}

std::string_view to_string( FrameClass c )
{
    switch ( c )
    {
    case FrameClass::SingleCluster:
        return "single-cluster";
    case FrameClass::LinearPreorder:
        return "linear-preorder";
    case FrameClass::PreBooleanAlgebra:
        return "pre-boolean-algebra";
    case FrameClass::ToplessPreBooleanAlgebra:
        return "topless-pre-boolean-algebra";
    case FrameClass::ReflexiveTransitive:
        return "reflexive-transitive";
    }
    return "unknown";
}

std::optional< FrameClass > parse_frame_class( std::string_view name )
{
    std::string lower;
    for ( char c : name )
        lower += static_cast< char >( std::tolower( static_cast< unsigned char >( c ) ) );
    static const std::pair< std::string_view, FrameClass > names[] = {
        { "single-cluster", FrameClass::SingleCluster },
        { "single", FrameClass::SingleCluster },
        { "s5", FrameClass::SingleCluster },
        { "linear-preorder", FrameClass::LinearPreorder },
        { "linear", FrameClass::LinearPreorder },
        { "s4.3", FrameClass::LinearPreorder },
        { "pre-boolean-algebra", FrameClass::PreBooleanAlgebra },
        { "preba", FrameClass::PreBooleanAlgebra },
        { "pba", FrameClass::PreBooleanAlgebra },
        { "s4.2", FrameClass::PreBooleanAlgebra },
        { "topless-pre-boolean-algebra", FrameClass::ToplessPreBooleanAlgebra },
        { "topless", FrameClass::ToplessPreBooleanAlgebra },
        { "s4.tba", FrameClass::ToplessPreBooleanAlgebra },
        { "reflexive-transitive", FrameClass::ReflexiveTransitive },
        { "preorder", FrameClass::ReflexiveTransitive },
        { "rt", FrameClass::ReflexiveTransitive },
        { "s4", FrameClass::ReflexiveTransitive },
    };
    for ( const auto& [ key, value ] : names )
        if ( key == lower )
            return value;
    return std::nullopt;
}

std::optional< BooleanStructure > boolean_structure( const Frame& f, bool topless )
{
    if ( f.size() == 0 || !is_preorder( f ) )
        return std::nullopt;
    BooleanStructure bs;
    bs.topless = topless;
    bs.quotient = quotient( f );
    const auto& q = bs.quotient;
    const std::size_t c = q.cluster_count();

    if ( c == 1 )
    {
        bs.atoms = topless ? 1 : 0;
        bs.subset_of_cluster = { 0 };
        bs.cluster_of_subset = topless ? std::vector< std::size_t >{ 0, 0 } : std::vector< std::size_t >{ 0 };
        return bs;
    }

    std::optional< std::size_t > bottom;
    for ( std::size_t x = 0; x < c; ++x )
        if ( std::popcount( q.strictly_above[ x ] ) == static_cast< int >( c - 1 ) )
            bottom = x;
    if ( !bottom )
        return std::nullopt;

    std::vector< std::size_t > atoms;
    for ( std::size_t a = 0; a < c; ++a )
    {
        if ( !q.less( *bottom, a ) )
            continue;
        bool covers = true;
        for ( std::size_t x = 0; x < c && covers; ++x )
            if ( q.less( *bottom, x ) && q.less( x, a ) )
                covers = false;
        if ( covers )
            atoms.push_back( a );
    }
    const std::size_t k = atoms.size();
    if ( k > 6 || ( topless && k < 2 ) )
        return std::nullopt;
    const std::size_t expected = ( std::size_t{ 1 } << k ) - ( topless ? 1 : 0 );
    if ( expected != c )
        return std::nullopt;

    const std::uint32_t full = ( std::uint32_t{ 1 } << k ) - 1;
    bs.atoms = k;
    bs.subset_of_cluster.assign( c, 0 );
    bs.cluster_of_subset.assign( std::size_t{ 1 } << k, c );
    for ( std::size_t x = 0; x < c; ++x )
    {
        std::uint32_t s = 0;
        for ( std::size_t i = 0; i < k; ++i )
            if ( q.leq( atoms[ i ], x ) )
                s |= std::uint32_t{ 1 } << i;
        if ( topless && s == full )
            return std::nullopt;
        if ( bs.cluster_of_subset[ s ] != c )
            return std::nullopt;
        bs.subset_of_cluster[ x ] = s;
        bs.cluster_of_subset[ s ] = x;
    }
    for ( std::size_t x = 0; x < c; ++x )
        for ( std::size_t y = 0; y < c; ++y )
        {
            const bool sub = ( bs.subset_of_cluster[ x ] & ~bs.subset_of_cluster[ y ] ) == 0;
            if ( sub != q.leq( x, y ) )
                return std::nullopt;
        }
    return bs;
}

bool classify( const Frame& f, FrameClass c )
{
    if ( !is_preorder( f ) || f.size() == 0 )
        return false;
    switch ( c )
    {
    case FrameClass::ReflexiveTransitive:
        return true;
    case FrameClass::SingleCluster:
        return quotient( f ).cluster_count() == 1;
    case FrameClass::LinearPreorder:
    {
        auto q = quotient( f );
        for ( std::size_t a = 0; a < q.cluster_count(); ++a )
            for ( std::size_t b = 0; b < q.cluster_count(); ++b )
                if ( !q.leq( a, b ) && !q.leq( b, a ) )
                    return false;
        return true;
    }
    case FrameClass::PreBooleanAlgebra:
        return boolean_structure( f, false ).has_value();
    case FrameClass::ToplessPreBooleanAlgebra:
        return boolean_structure( f, true ).has_value();
    }
    return false;
}

Frame linear_frame( std::span< const std::size_t > cluster_sizes )
{
    std::size_t n = 0;
    for ( auto s : cluster_sizes )
    {
        if ( s == 0 )
            throw FrameError( "cluster sizes must be positive" );
        n += s;
    }
    if ( n == 0 || n > max_worlds )
        throw FrameError( "linear frame must have between 1 and 64 worlds" );
    std::vector< WorldMask > succ( n );
    std::vector< WorldLabel > labels( n );
    std::size_t start = 0;
    for ( std::size_t k = 0; k < cluster_sizes.size(); ++k )
    {
        const WorldMask upward = all_worlds( n ) & ~all_worlds( start );
        for ( std::size_t j = 0; j < cluster_sizes[ k ]; ++j )
        {
            succ[ start + j ] = upward;
            labels[ start + j ] = { static_cast< std::uint32_t >( k ), static_cast< std::uint32_t >( j ) };
        }
        start += cluster_sizes[ k ];
    }
    return Frame{ std::move( succ ), std::move( labels ) };
}

Frame single_cluster( std::size_t worlds )
{
    const std::size_t sizes[] = { worlds };
    return linear_frame( sizes );
}

Frame powerset_frame( std::size_t atoms, const std::map< std::uint32_t, std::size_t >& cluster_sizes, bool topless )
{
    if ( topless && atoms == 0 )
        throw FrameError( "a topless algebra needs at least one atom" );
    if ( atoms > 6 )
        throw FrameError( "too many atoms" );
    const std::uint32_t count = ( std::uint32_t{ 1 } << atoms ) - ( topless ? 1 : 0 );
    std::vector< std::uint32_t > subset_of_world;
    std::vector< WorldLabel > labels;
    for ( std::uint32_t s = 0; s < count; ++s )
    {
        auto it = cluster_sizes.find( s );
        if ( it == cluster_sizes.end() )
            throw FrameError( "missing cluster size for subset " + std::to_string( s ) );
        if ( it->second == 0 )
            throw FrameError( "cluster sizes must be positive" );
        for ( std::size_t j = 0; j < it->second; ++j )
        {
            subset_of_world.push_back( s );
            labels.push_back( { s, static_cast< std::uint32_t >( j ) } );
        }
    }
    const std::size_t n = subset_of_world.size();
    if ( n > max_worlds )
        throw FrameError( "frames are limited to 64 worlds" );
    std::vector< WorldMask > succ( n, 0 );
    for ( std::size_t i = 0; i < n; ++i )
        for ( std::size_t j = 0; j < n; ++j )
            if ( ( subset_of_world[ i ] & ~subset_of_world[ j ] ) == 0 )
                succ[ i ] |= world_bit( j );
    return Frame{ std::move( succ ), std::move( labels ) };
}

Frame powerset_frame( std::size_t atoms, std::size_t cluster_size, bool topless )
{
    std::map< std::uint32_t, std::size_t > sizes;
    if ( atoms <= 6 )
        for ( std::uint32_t s = 0; s < ( std::uint32_t{ 1 } << atoms ); ++s )
            sizes[ s ] = cluster_size;
    return powerset_frame( atoms, sizes, topless );
}

Frame tree_with_leaves( std::size_t leaves )
{
    if ( leaves + 1 > max_worlds )
        throw FrameError( "frames are limited to 64 worlds" );
    std::vector< WorldMask > succ( leaves + 1 );
    succ[ 0 ] = all_worlds( leaves + 1 );
    for ( std::size_t i = 1; i <= leaves; ++i )
        succ[ i ] = world_bit( i );
    return Frame{ std::move( succ ) };
}

PaddedFrame pad_clusters( const Frame& f, std::size_t target )
{
    const auto q = quotient( f );
    if ( target == 0 || target < q.max_cluster_size() )
        throw FrameError( "padding target is below the largest cluster" );
    PaddedFrame out;
    for ( std::size_t w = 0; w < f.size(); ++w )
        out.source.push_back( w );
    std::vector< WorldLabel > labels = f.labels();
    for ( std::size_t c = 0; c < q.cluster_count(); ++c )
    {
        const auto have = static_cast< std::size_t >( std::popcount( q.members[ c ] ) );
        const auto first = static_cast< std::size_t >( std::countr_zero( q.members[ c ] ) );
        for ( std::size_t extra = have; extra < target; ++extra )
        {
            out.source.push_back( first );
            if ( f.has_labels() )
                labels.push_back( { f.labels()[ first ].node, static_cast< std::uint32_t >( extra ) } );
        }
    }
    const std::size_t n = out.source.size();
    if ( n > max_worlds )
        throw FrameError( "padded frame exceeds 64 worlds" );
    std::vector< WorldMask > succ( n, 0 );
    for ( std::size_t i = 0; i < n; ++i )
        for ( std::size_t j = 0; j < n; ++j )
            if ( f.related( out.source[ i ], out.source[ j ] ) )
                succ[ i ] |= world_bit( j );
    out.frame = Frame{ std::move( succ ), std::move( labels ) };
    return out;
}

} // namespace mlf
