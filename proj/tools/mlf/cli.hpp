#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mlf::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_found = 1; // countermodel, violation or rejection
inline constexpr int exit_usage = 2;

/// `args` excludes the program name.
int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace mlf::cli
