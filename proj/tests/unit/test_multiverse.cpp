#include <mlf/conversions.hpp>
#include <mlf/formula.hpp>
#include <mlf/multiverse.hpp>

#include <gtest/gtest.h>

using namespace mlf;
using namespace mlf::control;

namespace
{

ControlSignature sig( std::uint32_t b, std::uint32_t s, std::uint32_t r, std::uint32_t w )
{
    ControlSignature out;
    out.n_buttons = b;
    out.n_switches = s;
    out.ratchet_len = r;
    out.n_weak = w;
    return out;
}

std::vector< ControlSignature > small_signatures()
{
    std::vector< ControlSignature > out{ sig( 1, 0, 0, 0 ), sig( 2, 1, 0, 0 ), sig( 0, 2, 2, 0 ), sig( 1, 1, 1, 2 ),
                                         sig( 0, 1, 0, 3 ), sig( 2, 2, 3, 0 ), sig( 3, 1, 1, 0 ) };
    ControlSignature lr;
    lr.long_ratchet = LongRatchet{ 3, 4 };
    lr.n_switches = 1;
    out.push_back( lr );
    return out;
}

} // namespace

TEST( Multiverse, Accessibility )
{
    const Multiverse mv{ sig( 1, 0, 0, 3 ) };
    MultiverseState s;
    EXPECT_TRUE( mv.accessible( s, s ) );
    MultiverseState pushed;
    pushed.buttons = 1;
    EXPECT_FALSE( mv.accessible( pushed, s ) );
    EXPECT_TRUE( mv.accessible( s, pushed ) );

    MultiverseState w01, w012, w0, w02;
    w01.weak = 0b011;
    w012.weak = 0b111;
    w0.weak = 0b001;
    w02.weak = 0b101;
    EXPECT_FALSE( mv.valid( w012 ) );
    EXPECT_FALSE( mv.accessible( w01, w012 ) );
    EXPECT_TRUE( mv.accessible( w0, w02 ) );
    EXPECT_FALSE( mv.accessible( w02, w0 ) );

    MultiverseState bad;
    bad.ratchet = 1;
    EXPECT_THROW( (void)mv.accessible( s, bad ), SignatureError );
}

TEST( Multiverse, StateNumbering )
{
    const Multiverse mv{ sig( 2, 1, 2, 0 ) };
    EXPECT_EQ( mv.state_count(), 4U * 2U * 3U );
    EXPECT_EQ( mv.state( mv.initial() ), MultiverseState{} );
    for ( std::size_t i = 0; i < mv.state_count(); ++i )
    {
        EXPECT_EQ( mv.index_of( mv.state( i ) ), i );
        if ( i > 0 )
            EXPECT_LT( mv.state( i - 1 ), mv.state( i ) );
    }
    const Multiverse weak{ sig( 0, 0, 0, 3 ) };
    EXPECT_EQ( weak.state_count(), 7U );
}

TEST( Multiverse, ReflexiveAndTransitive )
{
    for ( const auto& s : small_signatures() )
    {
        const Multiverse mv{ s };
        for ( std::size_t i = 0; i < mv.state_count(); ++i )
        {
            const auto& succ = mv.successors( i );
            ASSERT_TRUE( succ.test( i ) );
            for ( std::size_t j = succ.find_first(); j != StateSet::npos; j = succ.find_next( j ) )
                ASSERT_TRUE( mv.successors( j ).is_subset_of( succ ) );
            for ( std::size_t j = 0; j < mv.state_count(); ++j )
                ASSERT_EQ( succ.test( j ), mv.accessible( mv.state( i ), mv.state( j ) ) );
        }
        // Every state is reachable from the initial one.
        EXPECT_TRUE( mv.successors( mv.initial() ).all() );
    }
}

TEST( Multiverse, SignatureGuards )
{
    EXPECT_THROW( Multiverse{ sig( 0, 0, 0, 1 ) }, SignatureError );
    EXPECT_THROW( Multiverse{ sig( 12, 1, 0, 0 ) }, SignatureError );
    ControlSignature empty_long;
    empty_long.long_ratchet = LongRatchet{ 0, 4 };
    EXPECT_THROW( Multiverse{ empty_long }, SignatureError );
    const Multiverse mv{ sig( 1, 0, 1, 0 ) };
    EXPECT_THROW( (void)mv.satisfying( button( 1 ) ), SignatureError );
    EXPECT_THROW( (void)mv.satisfying( switch_on( 0 ) ), SignatureError );
    EXPECT_THROW( (void)mv.satisfying( ratchet_at_least( 2 ) ), SignatureError );
}

TEST( Multiverse, ButtonRefutesFive )
{
    const Multiverse mv{ sig( 1, 0, 0, 0 ) };
    EXPECT_EQ( mv.state_count(), 2U );
    EXPECT_TRUE( mv.eval( 0, dia_g( box_g( button( 0 ) ) ) ) );
    EXPECT_FALSE( mv.eval( 0, button( 0 ) ) );
    EXPECT_FALSE( mv.eval( 0, implies( dia_g( box_g( button( 0 ) ) ), button( 0 ) ) ) );
}

TEST( Multiverse, Dot2HoldsForIndependentControls )
{
    const Multiverse mv{ sig( 2, 1, 0, 0 ) };
    const auto atoms = atom_sentences( mv.signature() );
    EXPECT_EQ( atoms.size(), 3U );
    EXPECT_FALSE( dot2_failure( mv, atoms ) );
}

TEST( Multiverse, RatchetAtoms )
{
    const Multiverse mv{ sig( 0, 0, 3, 0 ) };
    for ( std::uint32_t k = 1; k <= 3; ++k )
    {
        MultiverseState at, below;
        at.ratchet = k;
        below.ratchet = k - 1;
        EXPECT_TRUE( mv.eval( mv.index_of( at ), ratchet_at_least( k ) ) );
        EXPECT_FALSE( mv.eval( mv.index_of( below ), ratchet_at_least( k ) ) );
    }
}

TEST( Multiverse, DirectednessDichotomy )
{
    for ( const auto& s : small_signatures() )
    {
        const Multiverse mv{ s };
        const auto failure = mv.directedness_failure();
        EXPECT_EQ( failure.has_value(), s.n_weak > 0 );
        if ( failure )
        {
            const auto common = mv.successors( failure->first ) & mv.successors( failure->second );
            EXPECT_TRUE( common.none() );
        }
    }
    const Multiverse weak{ sig( 0, 0, 0, 2 ) };
    const auto w = weak.directedness_failure();
    ASSERT_TRUE( w );
    EXPECT_EQ( weak.state( w->first ).weak, 0b01U );
    EXPECT_EQ( weak.state( w->second ).weak, 0b10U );
    EXPECT_TRUE( dot2_failure( weak, atom_sentences( weak.signature() ) ) );
}

TEST( Multiverse, NativeSwitchIndependence )
{
    for ( const auto& s : small_signatures() )
    {
        const Multiverse mv{ s };
        for ( std::size_t i = 0; i < mv.state_count(); ++i )
            for ( std::uint32_t p = 0; p < ( 1U << s.n_switches ); ++p )
            {
                auto t = mv.state( i );
                t.switches = p;
                ASSERT_TRUE( mv.accessible( mv.state( i ), t ) );
            }
    }
}

TEST( Multiverse, ButtonPurity )
{
    const Multiverse mv{ sig( 3, 1, 1, 0 ) };
    for ( std::uint32_t i = 0; i < 3; ++i )
        EXPECT_TRUE( mv.satisfying( box_g( implies( button( i ), box_g( button( i ) ) ) ) ).all() );
}

TEST( Multiverse, NativeRatchetConditions )
{
    for ( std::uint32_t n = 1; n <= 4; ++n )
    {
        const Multiverse mv{ sig( 0, 1, n, 0 ) };
        std::vector< ControlSentence > r;
        for ( std::uint32_t k = 1; k <= n; ++k )
            r.push_back( ratchet_at_least( k ) );
        EXPECT_FALSE( check_ratchet( mv, r ) );
    }
    // Switches are not a ratchet: they can be turned off again.
    const Multiverse mv{ sig( 0, 1, 0, 0 ) };
    const std::vector< ControlSentence > not_ratchet{ switch_on( 0 ) };
    const auto v = check_ratchet( mv, not_ratchet );
    ASSERT_TRUE( v );
    EXPECT_EQ( v->condition, "pure" );
}

TEST( Multiverse, AllWeakButtonsNeverPossible )
{
    for ( std::uint32_t n = 2; n <= 4; ++n )
    {
        const Multiverse mv{ sig( 0, 1, 0, n ) };
        std::vector< ControlSentence > all;
        for ( std::uint32_t i = 0; i < n; ++i )
            all.push_back( weak( i ) );
        EXPECT_TRUE( mv.satisfying( dia_g( conj_all( all ) ) ).none() );
        // Each single weak button is possibly necessary.
        for ( std::uint32_t i = 0; i < n; ++i )
            EXPECT_TRUE( mv.eval( 0, dia_g( box_g( weak( i ) ) ) ) );
    }
}

TEST( ControlSentence, ParsePrint )
{
    const auto s = parse_control_sentence( "<G>[G]b0 -> [G]<G>(s1 & r>=2 | ~w0) & L>=3" );
    EXPECT_EQ( to_string( s ), "<G>[G]b0 -> [G]<G>(s1 & r>=2 | ~w0) & L>=3" );
    EXPECT_EQ( parse_control_sentence( to_string( s ) ), s );
    EXPECT_EQ( parse_control_sentence( "true" ), control::top() );
    EXPECT_EQ( parse_control_sentence( "b1" ), button( 1 ) );
    EXPECT_THROW( (void)parse_control_sentence( "[]b0" ), ParseError );
    EXPECT_THROW( (void)parse_control_sentence( "x3" ), ParseError );
    EXPECT_THROW( (void)parse_control_sentence( "r 2" ), ParseError );
}

TEST( ControlSentence, StructuralEquality )
{
    EXPECT_EQ( conj( button( 0 ), switch_on( 1 ) ), conj( button( 0 ), switch_on( 1 ) ) );
    EXPECT_FALSE( conj( button( 0 ), switch_on( 1 ) ) == conj( button( 0 ), switch_on( 2 ) ) );
    EXPECT_FALSE( button( 0 ) == weak( 0 ) );
}
