#include "mlf/cli.hpp"

#include <mlf/conversions.hpp>
#include <mlf/corpus.hpp>
#include <mlf/io.hpp>
#include <mlf/labeling.hpp>
#include <mlf/parallel.hpp>
#include <mlf/sampling.hpp>
#include <mlf/theories.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace mlf::cli
{

namespace
{

/// Input the user got wrong; reported with exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string format = "json";
    std::string formula;
    std::string theory;
    std::string frame_class;
    std::size_t bound = 5;
    std::size_t worlds = 1;
    std::optional< std::size_t > atoms;
    std::string model_file;
    std::size_t world = 0;
    std::string derivation_file;
    std::string theorem;
    std::optional< std::uint32_t > switches_given;
    std::uint32_t ratchet = 2;
    std::optional< std::uint32_t > buttons_given;
    std::uint32_t keep = 2;
    std::uint32_t weak = 2;
    std::uint32_t blocks = 4;
    std::uint32_t horizon = 4;
    std::size_t samples = 500;
    std::size_t depth = 3;
    std::uint32_t vars = 2;
    std::uint64_t seed = 1;
};

void emit( std::ostream& out, const Json& j ) { out << j.dump() << '\n'; }

Theory theory_arg( const std::string& name )
{
    if ( auto t = parse_theory( name ) )
        return *t;
    throw UsageError( "unknown theory '" + name + "' (expected s4, s4.2, s4.3, s5 or s4.tba)" );
}

Formula formula_arg( const std::string& text )
{
    try
    {
        return read_formula( text );
    }
    catch ( const ParseError& e )
    {
        throw UsageError( std::string( "cannot parse formula: " ) + e.what() );
    }
    catch ( const IoError& e )
    {
        throw UsageError( e.what() );
    }
}

Json read_json_file( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        throw UsageError( "cannot open " + path );
    try
    {
        return Json::parse( in );
    }
    catch ( const Json::parse_error& e )
    {
        throw UsageError( path + ": " + e.what() );
    }
}

void print_text( std::ostream& out, const Verdict& v )
{
    if ( const auto* ok = std::get_if< ValidUpTo >( &v ) )
    {
        out << "valid on all frames up to " << ok->bound << " worlds\n";
        return;
    }
    const auto& c = std::get< Countermodel >( v );
    out << "countermodel: " << c.model.size() << " worlds, fails at world " << c.world << '\n';
    for ( const auto& [ a, b ] : c.model.frame().pairs() )
        if ( a != b )
            out << "  " << a << " -> " << b << '\n';
    for ( const auto& [ var, mask ] : c.model.valuation() )
    {
        out << "  p" << var << ":";
        for ( std::size_t w = 0; w < c.model.size(); ++w )
            if ( contains( mask, w ) )
                out << ' ' << w;
        out << '\n';
    }
}

int cmd_parse( const Options& o, std::ostream& out )
{
    const auto f = formula_arg( o.formula );
    if ( o.format == "json" )
    {
        Json vars = Json::array();
        for ( auto v : variables( f ) )
            vars.push_back( "p" + std::to_string( v ) );
        emit( out, Json{ { "formula", to_string( f ) }, { "modal_depth", modal_depth( f ) }, { "variables", vars } } );
    }
    else
        out << to_string( f ) << '\n';
    return exit_ok;
}

int cmd_check( const Options& o, std::ostream& out )
{
    const auto f = formula_arg( o.formula );
    ValidityOptions opts;
    Verdict v = ValidUpTo{ 0 };
    try
    {
        if ( !o.frame_class.empty() )
        {
            const auto c = parse_frame_class( o.frame_class );
            if ( !c )
                throw UsageError( "unknown frame class '" + o.frame_class + "'" );
            v = decide_upto( *c, f, o.bound, opts );
        }
        else if ( !o.theory.empty() )
            v = decide_upto( theory_arg( o.theory ), f, o.bound, opts );
        else
            throw UsageError( "check needs --theory or --class" );
    }
    catch ( const ExplosionError& e )
    {
        throw UsageError( e.what() );
    }
    catch ( const FrameError& e )
    {
        throw UsageError( e.what() );
    }
    if ( o.format == "text" )
        print_text( out, v );
    else if ( o.format == "dot" )
    {
        if ( const auto* c = std::get_if< Countermodel >( &v ) )
            out << to_dot( c->model.frame() );
    }
    else
        emit( out, to_json( v ) );
    return is_valid( v ) ? exit_ok : exit_found;
}

int cmd_frames_enum( const Options& o, std::ostream& out )
{
    const auto c = parse_frame_class( o.frame_class );
    if ( !c )
        throw UsageError( "unknown frame class '" + o.frame_class + "'" );
    std::vector< Frame > frames;
    try
    {
        frames = enumerate( *c, o.worlds );
    }
    catch ( const FrameError& e )
    {
        throw UsageError( e.what() );
    }
    if ( o.atoms )
    {
        if ( *c != FrameClass::PreBooleanAlgebra && *c != FrameClass::ToplessPreBooleanAlgebra )
            throw UsageError( "--atoms applies to the preba and topless classes" );
        std::erase_if( frames, [ & ]( const Frame& f ) {
            return boolean_structure( f, *c == FrameClass::ToplessPreBooleanAlgebra )->atoms != *o.atoms;
        } );
    }
    if ( o.format == "dot" )
        for ( const auto& f : frames )
            out << to_dot( f );
    else if ( o.format == "text" )
    {
        out << frames.size() << " frames\n";
        for ( const auto& f : frames )
        {
            out << f.size() << ":";
            for ( const auto& [ a, b ] : f.pairs() )
                if ( a != b )
                    out << ' ' << a << "->" << b;
            out << '\n';
        }
    }
    else
    {
        Json arr = Json::array();
        for ( const auto& f : frames )
            arr.push_back( to_json( f ) );
        emit( out, Json{ { "class", to_string( *c ) }, { "worlds", o.worlds }, { "count", frames.size() }, { "frames", arr } } );
    }
    return exit_ok;
}

int cmd_model_eval( const Options& o, std::ostream& out )
{
    KripkeModel m;
    try
    {
        m = model_from_json( read_json_file( o.model_file ) );
    }
    catch ( const IoError& e )
    {
        throw UsageError( o.model_file + ": " + e.what() );
    }
    catch ( const FrameError& e )
    {
        throw UsageError( o.model_file + ": " + e.what() );
    }
    catch ( const Json::exception& e )
    {
        throw UsageError( o.model_file + ": " + e.what() );
    }
    if ( o.world >= m.size() )
        throw UsageError( "world " + std::to_string( o.world ) + " is outside the model" );
    const auto f = formula_arg( o.formula );
    bool value = false;
    try
    {
        value = eval( m, o.world, f );
    }
    catch ( const UnknownVariable& e )
    {
        throw UsageError( e.what() );
    }
    if ( o.format == "text" )
        out << ( value ? "true" : "false" ) << '\n';
    else
        emit( out, Json{ { "world", o.world }, { "formula", to_string( f ) }, { "value", value } } );
    return value ? exit_ok : exit_found;
}

int cmd_derive_check( const Options& o, std::ostream& out )
{
    const auto t = theory_arg( o.theory );
    if ( t == Theory::S4_tBA )
        throw UsageError( "S4.tBA is defined by frames and has no axiom system to derive in" );
    Derivation d;
    try
    {
        d = derivation_from_json( read_json_file( o.derivation_file ) );
    }
    catch ( const IoError& e )
    {
        throw UsageError( o.derivation_file + ": " + e.what() );
    }
    catch ( const ParseError& e )
    {
        throw UsageError( o.derivation_file + ": " + e.what() );
    }
    const auto r = check_derivation( t, d );
    if ( o.format == "text" )
    {
        if ( r.ok )
            out << "accepted: " << d.steps.size() << " steps\n";
        else
            out << "rejected" << ( r.failed_step ? " at step " + std::to_string( *r.failed_step ) : std::string{} ) << ": "
                << r.reason << '\n';
    }
    else
        emit( out, to_json( r ) );
    return r.ok ? exit_ok : exit_found;
}

bool is_labeling_theorem( const std::string& t ) { return t == "4.1" || t == "4.2" || t == "4.4" || t == "4.7"; }

LabeledMultiverse labeled_family( const Options& o )
{
    const std::uint32_t m = o.switches_given.value_or( o.theorem == "4.1" ? 2 : 1 );
    try
    {
        if ( o.theorem == "4.1" )
            return labeling_single_cluster( m );
        if ( o.theorem == "4.2" )
            return labeling_linear( o.ratchet, m );
        if ( o.theorem == "4.4" )
            return labeling_preba( o.buttons_given.value_or( 2 ), m );
        return labeling_topless( o.weak, m );
    }
    catch ( const SignatureError& e )
    {
        throw UsageError( e.what() );
    }
}

Json ratchet_violation_json( const Multiverse& mv, const char* which, const RatchetViolation& v )
{
    return Json{ { "ok", false }, { "check", which }, { "index", v.index }, { "condition", v.condition },
                 { "state", state_to_json( mv, v.state ) } };
}

int cmd_verify_conversion( const Options& o, std::ostream& out )
{
    DerivedControls dc = [ & ] {
        try
        {
            if ( o.theorem == "4.3" )
                return long_to_ratchet_switches( o.blocks, o.switches_given.value_or( 2 ), o.horizon );
            return ord_buttons_conversion( o.keep, o.buttons_given.value_or( 6 ) );
        }
        catch ( const SignatureError& e )
        {
            throw UsageError( e.what() );
        }
    }();
    const auto& mv = dc.multiverse;
    Json j;
    if ( auto v = check_ratchet( mv, dc.underlying ) )
        j = ratchet_violation_json( mv, "underlying-ratchet", *v );
    else if ( auto w = check_ratchet( mv, dc.ratchet ) )
        j = ratchet_violation_json( mv, "derived-ratchet", *w );
    else if ( auto x = check_switch_independence( dc ) )
    {
        Json want = Json::array();
        for ( std::size_t i = 0; i < dc.buttons.size(); ++i )
            if ( ( x->kept >> i ) & 1U )
                want.push_back( i );
        j = Json{ { "ok", false }, { "check", "switch-independence" }, { "state", state_to_json( mv, x->state ) },
                  { "pattern", x->pattern }, { "kept_buttons", want } };
    }
    else
        j = Json{ { "ok", true },
                  { "states_checked", mv.state_count() },
                  { "ratchet_length", dc.ratchet.size() },
                  { "switches", dc.switches.size() },
                  { "kept_buttons", dc.buttons.size() },
                  { "region_states", dc.region.count() } };
    if ( o.format == "text" )
        out << ( j[ "ok" ].get< bool >() ? "verified" : "violation" ) << ": " << j.dump() << '\n';
    else
        emit( out, j );
    return j[ "ok" ].get< bool >() ? exit_ok : exit_found;
}

int cmd_multiverse_verify( const Options& o, std::ostream& out )
{
    if ( o.theorem == "4.3" || o.theorem == "4.6" )
        return cmd_verify_conversion( o, out );
    const auto lm = labeled_family( o );
    const auto r = verify_labeling( lm.multiverse, lm.labeling );
    if ( o.format == "text" )
    {
        if ( r.ok )
            out << "labeling verified at " << r.states_checked << " states\n";
        else
            out << "clause " << r.clause << " fails at state " << r.state << ": " << r.detail << '\n';
    }
    else
        emit( out, to_json( lm.multiverse, r ) );
    return r.ok ? exit_ok : exit_found;
}

int cmd_multiverse_roundtrip( const Options& o, std::ostream& out )
{
    if ( !is_labeling_theorem( o.theorem ) )
        throw UsageError( "roundtrip needs a labeling theorem: 4.1, 4.2, 4.4 or 4.7" );
    if ( o.vars == 0 )
        throw UsageError( "--vars must be at least 1" );
    const auto lm = labeled_family( o );
    Rng rng{ o.seed };
    const auto st = sample_roundtrips( lm, rng, o.samples, o.depth, o.vars );
    const bool ok = st.agreements == st.samples;
    Json j{ { "ok", ok }, { "samples", st.samples }, { "agreements", st.agreements }, { "seed", o.seed } };
    if ( st.first_failure )
    {
        j[ "first_failure" ] = *st.first_failure;
        j[ "formula" ] = to_string( *st.failing_formula );
    }
    if ( o.format == "text" )
        out << st.agreements << "/" << st.samples << " samples agree\n";
    else
        emit( out, j );
    return ok ? exit_ok : exit_found;
}

} // namespace

int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Modal logic frames, theories and multiverse labelings", "mlf" };
    app.require_subcommand( 1 );
    Options o;

    auto format_option = [ & ]( CLI::App* sub, std::vector< std::string > allowed ) {
        sub->add_option( "--format", o.format, "Output format" )->check( CLI::IsMember( std::move( allowed ) ) );
    };

    auto* parse = app.add_subcommand( "parse", "Parse and print a formula" );
    parse->add_option( "formula", o.formula, "Formula or @corpus-name" )->required();
    format_option( parse, { "json", "text" } );
    o.format = "text";

    auto* check = app.add_subcommand( "check", "Decide a formula on the frames of a theory up to a size" );
    check->add_option( "--theory", o.theory, "s4, s4.2, s4.3, s5 or s4.tba" );
    check->add_option( "--class", o.frame_class, "Frame class instead of a theory" );
    check->add_option( "--bound", o.bound, "Largest frame size" )->check( CLI::PositiveNumber );
    check->add_option( "formula", o.formula, "Formula or @corpus-name" )->required();
    format_option( check, { "json", "text", "dot" } );

    auto* frames = app.add_subcommand( "frames", "Frame utilities" );
    frames->require_subcommand( 1 );
    auto* frames_enum = frames->add_subcommand( "enum", "Enumerate a frame class up to isomorphism" );
    frames_enum->add_option( "--class", o.frame_class, "single, linear, preba, topless or preorder" )->required();
    frames_enum->add_option( "--worlds", o.worlds, "Number of worlds" )->required()->check( CLI::PositiveNumber );
    frames_enum->add_option( "--atoms", o.atoms, "Keep algebras with this many atoms" );
    format_option( frames_enum, { "json", "text", "dot" } );

    auto* model = app.add_subcommand( "model", "Model utilities" );
    model->require_subcommand( 1 );
    auto* model_eval = model->add_subcommand( "eval", "Evaluate a formula at a world of a JSON model" );
    model_eval->add_option( "--model", o.model_file, "Model JSON file" )->required();
    model_eval->add_option( "--world", o.world, "World index" );
    model_eval->add_option( "formula", o.formula, "Formula or @corpus-name" )->required();
    format_option( model_eval, { "json", "text" } );

    auto* derive = app.add_subcommand( "derive", "Derivation utilities" );
    derive->require_subcommand( 1 );
    auto* derive_check = derive->add_subcommand( "check", "Check a Hilbert derivation" );
    derive_check->add_option( "--theory", o.theory, "s4, s4.2, s4.3 or s5" )->required();
    derive_check->add_option( "file", o.derivation_file, "Derivation JSON file" )->required();
    format_option( derive_check, { "json", "text" } );

    auto* mv = app.add_subcommand( "multiverse", "Control-statement multiverses" );
    mv->require_subcommand( 1 );
    const std::vector< std::string > theorems{ "4.1", "4.2", "4.3", "4.4", "4.6", "4.7" };
    auto control_options = [ & ]( CLI::App* sub ) {
        sub->add_option( "--theorem", o.theorem, "4.1, 4.2, 4.3, 4.4, 4.6 or 4.7" )->required()->check( CLI::IsMember( theorems ) );
        sub->add_option( "--switches", o.switches_given, "Switch count" );
        sub->add_option( "--ratchet", o.ratchet, "Ratchet length (4.2)" );
        sub->add_option( "--buttons", o.buttons_given, "Buttons (4.4), total buttons (4.6)" );
        sub->add_option( "--keep", o.keep, "Buttons kept as buttons (4.6)" );
        sub->add_option( "--weak", o.weak, "Weak buttons (4.7)" );
        sub->add_option( "--blocks", o.blocks, "Long ratchet blocks (4.3)" );
        sub->add_option( "--horizon", o.horizon, "Finite block horizon (4.3)" );
    };
    auto* mv_verify = mv->add_subcommand( "verify", "Verify a labeling or a control conversion" );
    control_options( mv_verify );
    format_option( mv_verify, { "json", "text" } );
    auto* mv_round = mv->add_subcommand( "roundtrip", "Sample models and formulas through a labeling" );
    control_options( mv_round );
    mv_round->add_option( "--samples", o.samples, "Number of samples" );
    mv_round->add_option( "--depth", o.depth, "Largest formula depth" );
    mv_round->add_option( "--vars", o.vars, "Number of variables" );
    mv_round->add_option( "--seed", o.seed, "Random seed" );
    format_option( mv_round, { "json", "text" } );

    // Every subcommand but parse defaults to JSON.
    for ( auto* sub : { check, frames_enum, model_eval, derive_check, mv_verify, mv_round } )
        sub->preparse_callback( [ &o ]( std::size_t ) { o.format = "json"; } );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::CallForAllHelp& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e, err, err );
        return exit_usage;
    }

    try
    {
        if ( *parse )
            return cmd_parse( o, out );
        if ( *check )
            return cmd_check( o, out );
        if ( *frames_enum )
            return cmd_frames_enum( o, out );
        if ( *model_eval )
            return cmd_model_eval( o, out );
        if ( *derive_check )
            return cmd_derive_check( o, out );
        if ( *mv_verify )
            return cmd_multiverse_verify( o, out );
        if ( *mv_round )
            return cmd_multiverse_roundtrip( o, out );
    }
    catch ( const UsageError& e )
    {
        err << "mlf: " << e.what() << '\n';
        return exit_usage;
    }
    catch ( const std::exception& e )
    {
        err << "mlf: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace mlf::cli
