#include <mlf/cli.hpp>
#include <mlf/io.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mlf;

namespace
{

struct Result
{
    int code = 0;
    std::string out;
    std::string err;
};

Result run( std::vector< std::string > args )
{
    std::ostringstream out, err;
    Result r;
    r.code = cli::run( args, out, err );
    r.out = out.str();
    r.err = err.str();
    return r;
}

Json json_of( const Result& r ) { return Json::parse( r.out ); }

std::string temp_file( const std::string& name, const std::string& content )
{
    const auto path = std::filesystem::temp_directory_path() / ( "mlf_cli_" + name );
    std::ofstream{ path } << content;
    return path.string();
}

} // namespace

TEST( Cli, Parse )
{
    const auto r = run( { "parse", "[] p0 -> ( p0 )" } );
    EXPECT_EQ( r.code, cli::exit_ok );
    EXPECT_EQ( r.out, "[]p0 -> p0\n" );
    const auto j = run( { "parse", "--format", "json", "<>p0" } );
    EXPECT_EQ( j.code, cli::exit_ok );
    EXPECT_TRUE( json_of( j ).contains( "formula" ) );
    const auto bad = run( { "parse", "[] ->" } );
    EXPECT_EQ( bad.code, cli::exit_usage );
    EXPECT_FALSE( bad.err.empty() );
}

TEST( Cli, CheckFindsCountermodel )
{
    const auto r = run( { "check", "--theory", "s4.tba", "--bound", "3", "<>[]p0 -> []<>p0" } );
    EXPECT_EQ( r.code, cli::exit_found );
    const auto j = json_of( r );
    EXPECT_FALSE( j[ "ok" ].get< bool >() );
    EXPECT_EQ( j[ "countermodel" ][ "worlds" ], 3 );
}

TEST( Cli, CheckValid )
{
    const auto r = run( { "check", "--theory", "s4", "--bound", "3", "[]p0 -> [][]p0" } );
    EXPECT_EQ( r.code, cli::exit_ok );
    EXPECT_EQ( json_of( r ).dump(), R"({"ok":true,"bound":3})" );
    const auto corpus = run( { "check", "--class", "topless", "--bound", "4", "@three-alternative" } );
    EXPECT_EQ( corpus.code, cli::exit_ok );
    const auto text = run( { "check", "--theory", "s5", "--bound", "2", "--format", "text", "<>[]p0 -> p0" } );
    EXPECT_EQ( text.out, "valid on all frames up to 2 worlds\n" );
}

TEST( Cli, CheckDot )
{
    const auto r = run( { "check", "--theory", "s4", "--bound", "2", "--format", "dot", "p0 -> []p0" } );
    EXPECT_EQ( r.code, cli::exit_found );
    EXPECT_EQ( r.out.rfind( "digraph frame {", 0 ), 0U );
}

TEST( Cli, UsageErrors )
{
    EXPECT_EQ( run( {} ).code, cli::exit_usage );
    EXPECT_EQ( run( { "check", "--bound", "3", "p0" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "check", "--theory", "s9", "--bound", "3", "p0" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "frames", "enum", "--class", "nope", "--worlds", "3" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "multiverse", "verify", "--theorem", "9.9" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "multiverse", "roundtrip", "--theorem", "4.3" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "derive", "check", "--theory", "s4.tba", "/nonexistent.json" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "derive", "check", "--theory", "s4", "/nonexistent.json" } ).code, cli::exit_usage );
}

TEST( Cli, FramesEnum )
{
    const auto r = run( { "frames", "enum", "--class", "linear", "--worlds", "3" } );
    EXPECT_EQ( r.code, cli::exit_ok );
    const auto j = json_of( r );
    EXPECT_EQ( j[ "count" ], 4 );
    EXPECT_EQ( j[ "frames" ].size(), 4U );
    const auto atoms = run( { "frames", "enum", "--class", "preba", "--worlds", "4", "--atoms", "2" } );
    EXPECT_EQ( atoms.code, cli::exit_ok );
    EXPECT_GE( json_of( atoms )[ "count" ].get< int >(), 1 );
}

TEST( Cli, ModelEval )
{
    const auto path = temp_file( "model.json", R"({"worlds":2,"rel":[[0,0],[0,1],[1,1]],"val":{"p0":[1]}})" );
    const auto yes = run( { "model", "eval", "--model", path, "--world", "0", "<>p0" } );
    EXPECT_EQ( yes.code, cli::exit_ok );
    EXPECT_TRUE( json_of( yes )[ "value" ].get< bool >() );
    const auto no = run( { "model", "eval", "--model", path, "--world", "0", "p0" } );
    EXPECT_EQ( no.code, cli::exit_found );
    EXPECT_EQ( run( { "model", "eval", "--model", path, "--world", "5", "p0" } ).code, cli::exit_usage );
    EXPECT_EQ( run( { "model", "eval", "--model", path, "--world", "0", "p3" } ).code, cli::exit_usage );
}

TEST( Cli, DeriveCheck )
{
    const std::string dir = MLF_CORPUS_DIR;
    const auto ok = run( { "derive", "check", "--theory", "s4", dir + "/derivations/nec2-goal.json" } );
    EXPECT_EQ( ok.code, cli::exit_ok ) << ok.out << ok.err;
    EXPECT_TRUE( json_of( ok )[ "ok" ].get< bool >() );
    const auto path = temp_file( "bad.json", R"({"goal":"[]p0 -> p0","steps":[{"rule":"axiom","scheme":"4","args":["p0"]}]})" );
    const auto bad = run( { "derive", "check", "--theory", "s4", path } );
    EXPECT_EQ( bad.code, cli::exit_found );
    EXPECT_FALSE( json_of( bad )[ "ok" ].get< bool >() );
    const auto five = run( { "derive", "check", "--theory", "s4", dir + "/derivations/five-instance.json" } );
    EXPECT_EQ( five.code, cli::exit_found );
}

TEST( Cli, MultiverseVerify )
{
    for ( const char* t : { "4.1", "4.2", "4.4", "4.7" } )
    {
        const auto r = run( { "multiverse", "verify", "--theorem", t } );
        EXPECT_EQ( r.code, cli::exit_ok ) << t << r.out << r.err;
        EXPECT_TRUE( json_of( r )[ "ok" ].get< bool >() );
    }
    const auto lin = run( { "multiverse", "verify", "--theorem", "4.2", "--ratchet", "2", "--switches", "1" } );
    EXPECT_EQ( json_of( lin )[ "states_checked" ], 6 );
    const auto conv = run( { "multiverse", "verify", "--theorem", "4.3" } );
    EXPECT_EQ( conv.code, cli::exit_ok );
    EXPECT_EQ( json_of( conv )[ "ratchet_length" ], 3 );
    const auto ord = run( { "multiverse", "verify", "--theorem", "4.6" } );
    EXPECT_EQ( ord.code, cli::exit_ok );
    EXPECT_EQ( json_of( ord )[ "kept_buttons" ], 2 );
    EXPECT_EQ( run( { "multiverse", "verify", "--theorem", "4.7", "--weak", "1" } ).code, cli::exit_usage );
}

TEST( Cli, MultiverseRoundtrip )
{
    const auto r = run( { "multiverse", "roundtrip", "--theorem", "4.4", "--samples", "100", "--seed", "3" } );
    EXPECT_EQ( r.code, cli::exit_ok );
    const auto j = json_of( r );
    EXPECT_EQ( j[ "samples" ], 100 );
    EXPECT_EQ( j[ "agreements" ], 100 );
    EXPECT_EQ( run( { "multiverse", "roundtrip", "--theorem", "4.4", "--samples", "100", "--seed", "3" } ).out, r.out );
}
