#pragma once

#include "mlf/formula.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlf
{

/// On k mutually incompatible, possibly necessary alternatives p0..p(k-1),
/// it is possible to rule out the last without settling the others:
///   <>[]p0 & ... & ~<>(OR of pairwise conjunctions) -> <>(<>[]p0 & ... & ~<>[]p(k-1))
/// Throws std::invalid_argument for k < 2.
[[nodiscard]] Formula k_alternative( std::size_t k );
[[nodiscard]] inline Formula three_alternative() { return k_alternative( 3 ); }

/// Stages of the `.2 -> [].2` argument for `phi`, starting from `~[].2` and
/// ending at `~.2`; consecutive stages form the links checked in S4.
[[nodiscard]] std::vector< Formula > nec2_stages( const Formula& phi );
/// `stage[i] -> stage[i + 1]`.
[[nodiscard]] std::vector< Formula > nec2_links( const Formula& phi );
/// `<><>phi -> <>phi`.
[[nodiscard]] Formula nec2_auxiliary( const Formula& phi );
/// `.2 -> [].2` at p0.
[[nodiscard]] Formula nec2_goal();

struct NamedFormula
{
    std::string name;
    Formula formula;
};

/// The named formulas addressable as `@name`, in a fixed order.
[[nodiscard]] const std::vector< NamedFormula >& builtin_corpus();
[[nodiscard]] std::optional< Formula > corpus_lookup( std::string_view name );

/// `name: formula` per line; blank lines and `#` comments are skipped.
/// Throws ParseError with the 1-based line number in the message.
[[nodiscard]] std::vector< NamedFormula > parse_corpus( std::string_view text );
[[nodiscard]] std::string format_corpus( const std::vector< NamedFormula >& entries );

} // namespace mlf
