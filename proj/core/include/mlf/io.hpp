#pragma once

#include "mlf/conversions.hpp"
#include "mlf/frames.hpp"
#include "mlf/kripke.hpp"
#include "mlf/labeling.hpp"
#include "mlf/multiverse.hpp"
#include "mlf/theories.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlf
{

/// Keys keep insertion order so output is stable.
using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A formula string, or `@name` for a built-in corpus entry. Throws
/// ParseError or IoError (unknown corpus name).
[[nodiscard]] Formula read_formula( std::string_view text );

/// {"worlds": n, "rel": [[i, j], ...], "labels": {"node": [...], "copy": [...]}}
/// with "labels" only for annotated frames.
[[nodiscard]] Json to_json( const Frame& f );
/// Model JSON is frame JSON plus {"val": {"p0": [worlds...], ...}}.
[[nodiscard]] Json to_json( const KripkeModel& m );
/// Model JSON plus "world" and "formula".
[[nodiscard]] Json to_json( const Countermodel& c );
/// {"ok": true, "bound": n} or {"ok": false, "countermodel": {...}}.
[[nodiscard]] Json to_json( const Verdict& v );

/// Throws IoError on malformed input and FrameError on a bad relation.
[[nodiscard]] Frame frame_from_json( const Json& j );
[[nodiscard]] KripkeModel model_from_json( const Json& j );

/// One node per world, reflexive loops left out; each cluster is a
/// same-rank group.
[[nodiscard]] std::string to_dot( const Frame& f );

/// {"goal": formula, "steps": [{"rule": ...}, ...]}. Rules: "axiom" with
/// "scheme" and "args", or "axiom" with "formula" for an instance checked
/// against the theory; "taut" with "formula"; "mp" with "from" and "imp";
/// "nec" with "from". Any step may claim its conclusion in "formula".
[[nodiscard]] Derivation derivation_from_json( const Json& j );
[[nodiscard]] Json to_json( const Derivation& d );
[[nodiscard]] Json to_json( const DerivationCheck& c );

/// Only the components present in the signature appear.
[[nodiscard]] Json state_to_json( const Multiverse& mv, std::size_t state );
/// {"ok": true, "states_checked": n} or
/// {"ok": false, "clause": c, "state": {...}, "world": i, ...}.
[[nodiscard]] Json to_json( const Multiverse& mv, const LabelingReport& r );

} // namespace mlf
