// One line per acceptance criterion; exits nonzero when any fails.

#include "oracles.hpp"

#include <mlf/conversions.hpp>
#include <mlf/corpus.hpp>
#include <mlf/io.hpp>
#include <mlf/labeling.hpp>
#include <mlf/sampling.hpp>
#include <mlf/theories.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace mlf;

namespace
{

struct Outcome
{
    bool ok = true;
    std::string detail;

    void fail( const std::string& why )
    {
        if ( ok )
            detail = why;
        ok = false;
    }
};

struct Criterion
{
    int number;
    const char* title;
    double seconds; // time limit
    std::function< Outcome() > run;
};

// Time limits, in seconds.
constexpr double limit_chain = 10;
constexpr double limit_soundness = 60;
constexpr double limit_counts = 30;
constexpr double limit_family = 30; // per labeling family
constexpr double limit_default = 120;

std::string show( const Formula& f ) { return to_string( f ); }

bool oracle_fails_at( const Countermodel& c )
{
    return !oracle::holds( c.model.frame(), c.model.valuation(), c.world, c.formula );
}

Outcome chain_separation()
{
    Outcome o;
    struct Witness
    {
        const char* what;
        Frame frame;
        Formula formula;
        FrameClass frame_class; // the class the frame belongs to
    };
    const std::vector< Witness > witnesses{
        { ".2 on the 3-world topless frame", powerset_frame( 2, 1, true ), scheme_template( AxiomScheme::Dot2 ),
          FrameClass::ToplessPreBooleanAlgebra },
        { ".3 on the 2-atom powerset", powerset_frame( 2, 1, false ), scheme_template( AxiomScheme::Dot3 ),
          FrameClass::PreBooleanAlgebra },
        { "5 on the 2-chain", tree_with_leaves( 1 ), scheme_template( AxiomScheme::Five ), FrameClass::LinearPreorder },
        { "three-alternative on the 3-leaf tree", tree_with_leaves( 3 ), three_alternative(),
          FrameClass::ReflexiveTransitive },
    };
    for ( const auto& w : witnesses )
    {
        if ( !classify( w.frame, w.frame_class ) || !oracle::classify( w.frame, w.frame_class ) )
            o.fail( std::string( w.what ) + ": frame not in its class" );
        const auto c = find_countermodel( w.frame, w.formula );
        if ( !c )
            o.fail( std::string( w.what ) + ": no countermodel" );
        else if ( !oracle_fails_at( *c ) )
            o.fail( std::string( w.what ) + ": oracle disagrees with the countermodel" );
    }
    struct Bound
    {
        FrameClass c;
        Formula f;
        std::size_t bound;
    };
    const std::vector< Bound > bounds{
        { FrameClass::PreBooleanAlgebra, scheme_template( AxiomScheme::Dot2 ), 5 },
        { FrameClass::LinearPreorder, scheme_template( AxiomScheme::Dot3 ), 5 },
        { FrameClass::SingleCluster, scheme_template( AxiomScheme::Five ), 5 },
        { FrameClass::ToplessPreBooleanAlgebra, three_alternative(), 7 },
        // Each class also validates the axioms of the classes below it.
        { FrameClass::PreBooleanAlgebra, three_alternative(), 5 },
        { FrameClass::LinearPreorder, scheme_template( AxiomScheme::Dot2 ), 5 },
        { FrameClass::SingleCluster, scheme_template( AxiomScheme::Dot3 ), 5 },
    };
    for ( const auto& b : bounds )
    {
        const auto v = decide_upto( b.c, b.f, b.bound );
        if ( !is_valid( v ) || std::get< ValidUpTo >( v ).bound < b.bound )
            o.fail( show( b.f ) + " not valid up to " + std::to_string( b.bound ) + " on " + std::string( to_string( b.c ) ) );
    }
    if ( o.ok )
        o.detail = "4 countermodels, " + std::to_string( bounds.size() ) + " bounded validities";
    return o;
}

Outcome soundness()
{
    Outcome o;
    std::size_t frames = 0;
    for ( Theory t : { Theory::S4, Theory::S4_2, Theory::S4_3, Theory::S5, Theory::S4_tBA } )
    {
        std::vector< Formula > checks;
        for ( auto s : has_axioms( t ) ? axioms( t ) : axioms( Theory::S4 ) )
            checks.push_back( scheme_template( s ) );
        if ( t == Theory::S4_tBA )
            checks.push_back( three_alternative() );
        const FrameClass c = characteristic_class( t );
        const std::size_t max = t == Theory::S4_tBA ? 7 : 5;
        for ( std::size_t n = 1; n <= max; ++n )
            for ( const auto& f : enumerate( c, n ) )
            {
                if ( t == Theory::S4_tBA )
                {
                    const auto b = boolean_structure( f, true );
                    if ( !b || b->atoms > 3 )
                        continue;
                }
                ++frames;
                for ( const auto& phi : checks )
                    if ( !frame_validates( f, phi ) )
                        o.fail( show( phi ) + " fails on a " + std::string( to_string( c ) ) + " frame with "
                                + std::to_string( n ) + " worlds" );
            }
    }
    if ( o.ok )
        o.detail = std::to_string( frames ) + " frames";
    return o;
}

std::set< std::string > canonical_set( const std::vector< Frame >& fs )
{
    std::set< std::string > out;
    for ( const auto& f : fs )
        out.insert( oracle::canonical( f ) );
    return out;
}

Outcome enumeration_counts()
{
    Outcome o;
    const std::size_t expected[] = { 1, 2, 4, 8, 16 };
    std::string counts;
    for ( std::size_t n = 1; n <= 5; ++n )
    {
        const auto lib = enumerate( FrameClass::LinearPreorder, n );
        const auto ref = oracle::enumerate_by_filter( FrameClass::LinearPreorder, n );
        counts += ( n > 1 ? "," : "" ) + std::to_string( lib.size() );
        if ( lib.size() != expected[ n - 1 ] || ref.size() != expected[ n - 1 ] )
            o.fail( "linear count at n=" + std::to_string( n ) + " is " + std::to_string( lib.size() ) );
        if ( canonical_set( lib ) != canonical_set( ref ) || canonical_set( lib ).size() != lib.size() )
            o.fail( "linear frames differ from the oracle at n=" + std::to_string( n ) );
    }
    for ( FrameClass c : { FrameClass::PreBooleanAlgebra, FrameClass::ToplessPreBooleanAlgebra } )
        for ( std::size_t n = 1; n <= 4; ++n )
        {
            const auto lib = enumerate( c, n );
            const auto ref = oracle::enumerate_by_filter( c, n );
            if ( lib.size() != ref.size() || canonical_set( lib ) != canonical_set( ref ) )
                o.fail( std::string( to_string( c ) ) + " differs from the oracle at n=" + std::to_string( n ) );
        }
    if ( o.ok )
        o.detail = "linear " + counts;
    return o;
}

Outcome toplessify_models()
{
    Outcome o;
    Rng rng{ 2024 };
    const auto formulas = enumerate_formulas( 2, 2 );
    constexpr std::size_t models = 200;
    for ( std::size_t i = 0; i < models && o.ok; ++i )
    {
        const std::size_t atoms = pick( rng, 4 );
        std::map< std::uint32_t, std::size_t > sizes;
        for ( std::uint32_t a = 0; a < ( 1U << atoms ); ++a )
            sizes[ a ] = 1 + pick( rng, 2 );
        const Frame f = powerset_frame( atoms, sizes, false );
        const auto m = random_model( rng, f, 2 );
        const auto ex = toplessify( m );
        if ( !classify( ex.model.frame(), FrameClass::ToplessPreBooleanAlgebra ) )
            o.fail( "expansion is not topless" );
        const std::size_t w0 = *initial_world( f );
        const std::size_t x0 = *initial_world( ex.model.frame() );
        for ( const auto& phi : formulas )
        {
            const bool before = oracle::holds( f, m.valuation(), w0, phi );
            const bool after = oracle::holds( ex.model.frame(), ex.model.valuation(), x0, phi );
            if ( before != after || eval( ex.model, x0, phi ) != after )
            {
                o.fail( "model " + std::to_string( i ) + ": " + show( phi ) + " changes truth" );
                break;
            }
        }
        const auto bisim = largest_bisimulation( m, ex.model );
        const auto ref = oracle::largest_bisimulation( m, ex.model );
        for ( std::size_t x = 0; x < ex.source.size(); ++x )
            if ( !bisim.contains( ex.source[ x ], x ) || !ref.count( { ex.source[ x ], x } ) )
                o.fail( "model " + std::to_string( i ) + ": pairing misses world " + std::to_string( x ) );
    }
    if ( o.ok )
        o.detail = std::to_string( models ) + " models x " + std::to_string( formulas.size() ) + " formulas";
    return o;
}

Outcome nec2_chain()
{
    Outcome o;
    auto checks = mlf::nec2_links( var( 0 ) );
    checks.push_back( nec2_auxiliary( var( 0 ) ) );
    if ( checks.size() != 7 )
        o.fail( "expected six links plus the auxiliary, got " + std::to_string( checks.size() ) );
    std::size_t frames = 0;
    for ( std::size_t n = 1; n <= 4; ++n )
        for ( const auto& f : oracle::all_preorders( n ) )
        {
            ++frames;
            for ( const auto& phi : checks )
                for ( WorldMask v = 0; v < world_bit( n ); ++v )
                    for ( std::size_t w = 0; w < n; ++w )
                        if ( !oracle::holds( f, { { 0, v } }, w, phi ) )
                        {
                            o.fail( show( phi ) + " fails on a " + std::to_string( n ) + "-world preorder" );
                            goto next;
                        }
        next:;
        }
    if ( !verify_obs_nec2( 4, 1 ) )
        o.fail( "library sweep reports a countermodel" );
    if ( o.ok )
        o.detail = std::to_string( checks.size() ) + " formulas on " + std::to_string( frames ) + " labeled preorders";
    return o;
}

std::size_t height( const Formula& f )
{
    const Formula* inner = nullptr;
    if ( f.is_diamond( &inner ) )
        return 1 + height( *inner );
    if ( f.is_atom() )
        return 0;
    if ( f.is_unary() )
        return 1 + height( f.child() );
    return 1 + std::max( height( f.lhs() ), height( f.rhs() ) );
}

Outcome staged_closure()
{
    Outcome o;
    Rng rng{ 26 };
    constexpr std::size_t models = 100;
    std::size_t checked = 0;
    for ( std::size_t i = 0; i < models && o.ok; ++i )
    {
        const Frame f = random_transitive_frame( rng, 1 + pick( rng, 5 ) );
        const auto m = random_model( rng, f, 2 );
        const std::size_t v = pick( rng, f.size() );

        // Universe: random depth-3 formulas, closed under subformulas, with
        // boxes of shallow members and implications between them.
        std::set< Formula > u;
        for ( int k = 0; k < 12; ++k )
            for ( const auto& s : subformulas( random_formula( rng, 2, 3 ) ) )
                u.insert( s );
        std::vector< Formula > shallow;
        for ( const auto& g : u )
            if ( height( g ) <= 2 )
                shallow.push_back( g );
        for ( const auto& g : shallow )
            u.insert( box( g ) );
        for ( int k = 0; k < 20; ++k )
            u.insert( implies( shallow[ pick( rng, shallow.size() ) ], shallow[ pick( rng, shallow.size() ) ] ) );
        const std::vector< Formula > universe( u.begin(), u.end() );

        FormulaSet lambda, assumptions;
        for ( const auto& g : universe )
        {
            if ( m.satisfying( g ) == f.all() && pick( rng, 2 ) )
                lambda.insert( g );
            if ( eval( m, v, box( g ) ) && pick( rng, 2 ) )
                assumptions.insert( g );
        }
        for ( std::size_t n = 0; n <= 6; ++n )
        {
            const auto stage = closure_stages( lambda, assumptions, universe, n );
            for ( std::size_t w = 0; w < f.size(); ++w )
            {
                if ( !f.related( v, w ) )
                    continue;
                const auto truth = truth_set( m, w, universe );
                const std::set< Formula > true_at( truth.begin(), truth.end() );
                for ( const auto& g : stage )
                {
                    ++checked;
                    if ( !true_at.count( g ) || !oracle::holds( f, m.valuation(), w, g ) )
                    {
                        o.fail( "model " + std::to_string( i ) + " stage " + std::to_string( n ) + ": " + show( g )
                                + " false at world " + std::to_string( w ) );
                        break;
                    }
                }
            }
        }
    }
    if ( o.ok )
        o.detail = std::to_string( models ) + " models, " + std::to_string( checked ) + " memberships";
    return o;
}

struct Family
{
    const char* name;
    std::vector< LabeledMultiverse > members;
};

std::vector< Family > families()
{
    std::vector< Family > out;
    Family single{ "4.1", {} }, linear{ "4.2", {} }, preba{ "4.4", {} }, topless{ "4.7", {} };
    for ( std::uint32_t m = 1; m <= 3; ++m )
        single.members.push_back( labeling_single_cluster( m ) );
    for ( std::uint32_t n = 0; n <= 3; ++n )
        for ( std::uint32_t m = 0; m <= 2; ++m )
            linear.members.push_back( labeling_linear( n, m ) );
    for ( std::uint32_t b = 1; b <= 3; ++b )
        for ( std::uint32_t m = 0; m <= 2; ++m )
            preba.members.push_back( labeling_preba( b, m ) );
    for ( std::uint32_t w = 2; w <= 3; ++w )
        for ( std::uint32_t m = 0; m <= 2; ++m )
            topless.members.push_back( labeling_topless( w, m ) );
    out.push_back( std::move( single ) );
    out.push_back( std::move( linear ) );
    out.push_back( std::move( preba ) );
    out.push_back( std::move( topless ) );
    return out;
}

using Clock = std::chrono::steady_clock;

double since( Clock::time_point t ) { return std::chrono::duration< double >( Clock::now() - t ).count(); }

Outcome labelings()
{
    Outcome o;
    std::string times;
    for ( const auto& fam : families() )
    {
        const auto start = Clock::now();
        std::size_t states = 0;
        for ( const auto& lm : fam.members )
        {
            if ( !oracle::reflexive( lm.labeling.frame ) || !oracle::transitive( lm.labeling.frame ) )
                o.fail( std::string( fam.name ) + ": labeled frame is not a preorder" );
            const auto r = verify_labeling( lm.multiverse, lm.labeling );
            states += r.states_checked;
            if ( !r.ok )
                o.fail( std::string( fam.name ) + ": clause " + std::to_string( r.clause ) + " fails: " + r.detail );
            if ( r.states_checked != lm.multiverse.successors( lm.multiverse.initial() ).count() )
                o.fail( std::string( fam.name ) + ": not every reachable state was checked" );
        }
        const double t = since( start );
        if ( t > limit_family )
            o.fail( std::string( fam.name ) + " took " + std::to_string( t ) + " s" );
        char buf[ 64 ];
        std::snprintf( buf, sizeof buf, "%s%s %zu states %.2fs", times.empty() ? "" : ", ", fam.name, states, t );
        times += buf;
    }
    if ( o.ok )
        o.detail = times;
    return o;
}

Outcome conversions()
{
    Outcome o;
    const auto check = [ & ]( const char* name, const DerivedControls& dc, std::size_t ratchet_len ) {
        if ( dc.ratchet.size() != ratchet_len )
            o.fail( std::string( name ) + ": ratchet length " + std::to_string( dc.ratchet.size() ) );
        if ( auto v = check_ratchet( dc.multiverse, dc.underlying ) )
            o.fail( std::string( name ) + ": underlying " + v->condition + " at " + std::to_string( v->index ) );
        if ( auto v = check_ratchet( dc.multiverse, dc.ratchet ) )
            o.fail( std::string( name ) + ": derived " + v->condition + " at " + std::to_string( v->index ) );
        if ( auto v = check_switch_independence( dc ) )
            o.fail( std::string( name ) + ": switch pattern " + std::to_string( v->pattern ) + " unreachable from state "
                    + std::to_string( v->state ) );
        if ( dc.region.none() )
            o.fail( std::string( name ) + ": empty headroom region" );
    };
    const auto long_dc = long_to_ratchet_switches( 4, 2, 4 );
    check( "4.3", long_dc, 3 );
    const auto ord_dc = ord_buttons_conversion( 2, 6 );
    check( "4.6", ord_dc, 2 );
    if ( o.ok )
        o.detail = "4.3 region " + std::to_string( long_dc.region.count() ) + "/" + std::to_string( long_dc.multiverse.state_count() )
                   + ", 4.6 region " + std::to_string( ord_dc.region.count() ) + "/"
                   + std::to_string( ord_dc.multiverse.state_count() );
    return o;
}

Outcome roundtrips()
{
    Outcome o;
    constexpr std::size_t samples = 500;
    std::size_t sampled = 0, uniform = 0;
    const auto formulas = enumerate_formulas( 2, 2 );
    std::uint64_t seed = 1;
    for ( const auto& fam : families() )
        for ( const auto& lm : fam.members )
        {
            Rng a{ seed }, b{ seed };
            ++seed;
            const auto s1 = sample_roundtrips( lm, a, samples, 3, 2 );
            const auto s2 = sample_roundtrips( lm, b, samples, 3, 2 );
            sampled += s1.samples;
            if ( s1.agreements != s1.samples )
                o.fail( std::string( fam.name ) + ": sample " + std::to_string( *s1.first_failure ) + " disagrees on "
                        + show( *s1.failing_formula ) );
            if ( s1.agreements != s2.agreements || s1.first_failure != s2.first_failure || a() != b() )
                o.fail( std::string( fam.name ) + ": sampling is not reproducible" );

            Rng mr{ seed * 7919 };
            const auto m = random_model( mr, lm.labeling.frame, 2 );
            for ( const auto& phi : formulas )
            {
                ++uniform;
                if ( const auto u = uniform_check( lm, m, phi ) )
                {
                    o.fail( std::string( fam.name ) + ": uniform check fails for " + show( phi ) + " at state "
                            + std::to_string( u->state ) );
                    break;
                }
            }
        }
    if ( o.ok )
        o.detail = std::to_string( sampled ) + " samples, " + std::to_string( uniform ) + " uniform checks";
    return o;
}

Outcome directedness()
{
    Outcome o;
    std::size_t multiverses = 0;
    for ( std::uint32_t b = 0; b <= 2; ++b )
        for ( std::uint32_t s = 0; s <= 2; ++s )
            for ( std::uint32_t r = 0; r <= 2; ++r )
            {
                ControlSignature sig;
                sig.n_buttons = b;
                sig.n_switches = s;
                sig.ratchet_len = r;
                const Multiverse mv{ sig };
                ++multiverses;
                for ( std::size_t i = 0; i < mv.state_count(); ++i )
                    for ( std::size_t j = 0; j < mv.state_count(); ++j )
                        if ( ( mv.successors( i ) & mv.successors( j ) ).none() )
                            o.fail( "states " + std::to_string( i ) + ", " + std::to_string( j ) + " have no common successor" );
                if ( mv.directedness_failure() )
                    o.fail( "library reports a directedness failure without weak buttons" );
                if ( dot2_failure( mv, atom_sentences( sig ) ) )
                    o.fail( ".2 pattern fails without weak buttons" );
            }
    ControlSignature weak;
    weak.n_weak = 2;
    weak.n_switches = 1;
    const Multiverse mv{ weak };
    const auto w = mv.directedness_failure();
    if ( !w )
        o.fail( "no witness with 2 weak buttons" );
    else if ( ( mv.successors( w->first ) & mv.successors( w->second ) ).any() )
        o.fail( "the witness pair has a common successor" );
    if ( !dot2_failure( mv, atom_sentences( weak ) ) )
        o.fail( ".2 pattern unexpectedly holds with 2 weak buttons" );
    if ( o.ok )
        o.detail = std::to_string( multiverses ) + " directed multiverses; weak witness states " + std::to_string( w->first )
                   + ", " + std::to_string( w->second );
    return o;
}

Outcome derivations()
{
    Outcome o;
    std::size_t accepted = 0, rejected = 0;
    std::vector< std::filesystem::path > files;
    for ( const auto& e : std::filesystem::directory_iterator( MLF_CORPUS_DIR "/derivations" ) )
        files.push_back( e.path() );
    std::sort( files.begin(), files.end() );
    for ( const auto& p : files )
    {
        std::ifstream in( p );
        const auto j = Json::parse( in );
        const Theory t = *parse_theory( j.at( "theory" ).get< std::string >() );
        const auto d = derivation_from_json( j );
        const auto r = check_derivation( t, d );
        if ( !r.ok )
        {
            o.fail( p.filename().string() + " rejected: " + r.reason );
            continue;
        }
        ++accepted;

        // Swapped premise indices on every modus ponens step with distinct premises.
        for ( std::size_t i = 0; i < d.steps.size(); ++i )
        {
            if ( d.steps[ i ].rule != Rule::ModusPonens || d.steps[ i ].from == d.steps[ i ].imp )
                continue;
            auto bad = d;
            std::swap( bad.steps[ i ].from, bad.steps[ i ].imp );
            bad.steps[ i ].formula.reset();
            const auto rb = check_derivation( t, bad );
            if ( rb.ok || rb.failed_step != i )
                o.fail( p.filename().string() + ": swapped premises at step " + std::to_string( i ) + " not reported there" );
            else
                ++rejected;
        }
        // Wrong theory: a weaker system must reject a derivation that needs the stronger axiom.
        if ( t != Theory::S4 )
        {
            const auto rw = check_derivation( Theory::S4, d );
            if ( rw.ok || !rw.failed_step )
                o.fail( p.filename().string() + ": accepted in S4" );
            else
                ++rejected;
        }
    }
    if ( accepted < 5 )
        o.fail( "expected at least 5 corpus derivations" );
    if ( o.ok )
        o.detail = std::to_string( accepted ) + " accepted, " + std::to_string( rejected ) + " mutations rejected";
    return o;
}

} // namespace

int main()
{
    const std::vector< Criterion > criteria{
        { 1, "chain separation", limit_chain, chain_separation },
        { 2, "soundness sweep", limit_soundness, soundness },
        { 3, "enumeration counts", limit_counts, enumeration_counts },
        { 4, "topless expansion", limit_default, toplessify_models },
        { 5, ".2 necessitation chain", limit_default, nec2_chain },
        { 6, "staged closure", limit_default, staged_closure },
        { 7, "labelings", 4 * limit_family, labelings },
        { 8, "conversions", limit_default, conversions },
        { 9, "translation round trip", limit_default, roundtrips },
        { 10, "directedness dichotomy", limit_default, directedness },
        { 11, "derivation checker", limit_default, derivations },
    };
    int failures = 0;
    for ( const auto& c : criteria )
    {
        const auto start = Clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch ( const std::exception& e )
        {
            o.fail( std::string( "exception: " ) + e.what() );
        }
        const double t = since( start );
        if ( t > c.seconds )
            o.fail( "took " + std::to_string( t ) + " s, limit " + std::to_string( c.seconds ) + " s" );
        std::printf( "criterion %2d %-24s %s  %.2fs  %s\n", c.number, c.title, o.ok ? "PASS" : "FAIL", t, o.detail.c_str() );
        std::fflush( stdout );
        failures += o.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
