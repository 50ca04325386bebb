#pragma once

#include "mlf/formula.hpp"
#include "mlf/frames.hpp"
#include "mlf/kripke.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mlf
{

enum class AxiomScheme
{
    K,
    T,
    Four,
    Dot2,
    Dot3,
    Five,
};

/// "K", "T", "4", ".2", ".3", "5".
[[nodiscard]] std::string_view to_string( AxiomScheme s );
/// Also accepts "2", "3", "Four", "Dot2", ... case-insensitively.
[[nodiscard]] std::optional< AxiomScheme > parse_axiom_scheme( std::string_view name );

[[nodiscard]] std::size_t arity( AxiomScheme s ) noexcept;

/// The scheme with metavariables p0 (and p1).
[[nodiscard]] Formula scheme_template( AxiomScheme s );

/// Throws std::invalid_argument on an arity mismatch.
[[nodiscard]] Formula instantiate( AxiomScheme s, std::span< const Formula > args );

/// Arguments making `f` an instance of `s`, if any.
[[nodiscard]] std::optional< std::vector< Formula > > match_instance( AxiomScheme s, const Formula& f );

enum class Theory
{
    S4,
    S4_2,
    S4_3,
    S5,
    S4_tBA,
};

[[nodiscard]] std::string_view to_string( Theory t );
/// Case-insensitive: s4, s4.2, s4.3, s5, s4.tba.
[[nodiscard]] std::optional< Theory > parse_theory( std::string_view name );

/// Empty for S4.tBA, which has no axiomatization here.
[[nodiscard]] std::vector< AxiomScheme > axioms( Theory t );
[[nodiscard]] bool has_axioms( Theory t ) noexcept;
[[nodiscard]] FrameClass characteristic_class( Theory t ) noexcept;

struct ValidUpTo
{
    std::size_t bound = 0;
};

using Verdict = std::variant< ValidUpTo, Countermodel >;

[[nodiscard]] inline bool is_valid( const Verdict& v ) noexcept { return std::holds_alternative< ValidUpTo >( v ); }

/// Searches the characteristic frames of `t` with 1..max_worlds worlds, in
/// enumeration order, and returns the first countermodel found.
[[nodiscard]] Verdict decide_upto( Theory t, const Formula& phi, std::size_t max_worlds, const ValidityOptions& options = {} );

/// Same search over an explicit frame class.
[[nodiscard]] Verdict decide_upto( FrameClass c, const Formula& phi, std::size_t max_worlds, const ValidityOptions& options = {} );

/// The `.2 -> [].2` proof chain (each link, plus `<><>p -> <>p`) holds on every
/// preorder with at most `max_worlds` worlds, for the link schemes at p0 and at
/// every formula `m p0` where m is a string of at most `depth` operators
/// among `~`, `[]`, `<>`.
[[nodiscard]] bool verify_obs_nec2( std::size_t max_worlds, std::size_t depth );

using FormulaSet = std::set< Formula >;

/// Stage 0 is `lambda ∪ assumptions`; odd stages close the previous stage
/// under modus ponens inside `universe`, even stages add `[]f` for each
/// member f whose box is in `universe`.
[[nodiscard]] FormulaSet closure_stages( const FormulaSet& lambda, const FormulaSet& assumptions,
                                         std::span< const Formula > universe, std::size_t stages );

// Hilbert derivations.

enum class Rule
{
    Axiom,       // instance of a named scheme
    TheoryAxiom, // a formula claimed to be an axiom of the theory
    Tautology,
    ModusPonens,
    Necessitation,
};

[[nodiscard]] std::string_view to_string( Rule r );

struct DerivationStep
{
    Rule rule = Rule::Tautology;
    AxiomScheme scheme = AxiomScheme::K;
    std::vector< Formula > args;      // Axiom
    std::optional< Formula > formula; // TheoryAxiom, Tautology; a claimed conclusion otherwise
    std::size_t from = 0;             // ModusPonens (antecedent), Necessitation
    std::size_t imp = 0;              // ModusPonens (implication)
};

struct Derivation
{
    Formula goal;
    std::vector< DerivationStep > steps;
};

struct DerivationCheck
{
    bool ok = false;
    std::optional< std::size_t > failed_step; // unset when the failure is not tied to one step
    std::string reason;
    std::vector< Formula > conclusions; // of the steps accepted so far
};

/// Largest number of distinct atoms (maximal variable or box subformulas)
/// the truth-table check accepts.
inline constexpr std::size_t tautology_atom_limit = 6;

/// Throws std::length_error beyond `tautology_atom_limit` atoms.
[[nodiscard]] bool is_tautology( const Formula& f );

/// Throws std::invalid_argument for S4.tBA.
[[nodiscard]] DerivationCheck check_derivation( Theory t, const Derivation& d );

} // namespace mlf
