#pragma once

#include "mlf/control.hpp"
#include "mlf/formula.hpp"
#include "mlf/frames.hpp"
#include "mlf/kripke.hpp"
#include "mlf/multiverse.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace mlf
{

/// One control sentence per frame world, plus the designated initial world.
struct Labeling
{
    Frame frame;
    std::vector< ControlSentence > phi;
    std::size_t initial = 0;
};

struct LabeledMultiverse
{
    Multiverse multiverse;
    Labeling labeling;
};

/// Largest switch count the constructions accept.
inline constexpr std::uint32_t max_label_switches = 4;

/// Single cluster of 2^m worlds; world j carries switch pattern j
/// (bit i of j is switch i).
[[nodiscard]] LabeledMultiverse labeling_single_cluster( std::uint32_t m_switches );

/// n+1 clusters of 2^m worlds in a line; world k*2^m + j carries
/// "ratchet exactly k" and switch pattern j.
[[nodiscard]] LabeledMultiverse labeling_linear( std::uint32_t ratchet_len, std::uint32_t m_switches );

/// Powerset algebra on n atoms with clusters of 2^m; world a*2^m + j
/// carries "exactly the buttons in a are pushed" and switch pattern j.
[[nodiscard]] LabeledMultiverse labeling_preba( std::uint32_t n_buttons, std::uint32_t m_switches );

/// Topless algebra on n >= 2 atoms, same scheme with weak buttons.
[[nodiscard]] LabeledMultiverse labeling_topless( std::uint32_t n_weak, std::uint32_t m_switches );

/// Conjunction fixing switches 0..m-1 to the bits of `pattern`; Top for m = 0.
[[nodiscard]] ControlSentence switch_pattern( std::uint32_t m, std::uint32_t pattern );

struct LabelingReport
{
    bool ok = true;
    std::size_t states_checked = 0;
    int clause = 0;                     // 1, 2 or 3 on failure
    std::size_t state = 0;              // violating state
    std::optional< std::size_t > world; // the labeled world, when there is one
    std::optional< std::size_t > other; // second labeled world (clause 1) or target (clause 2)
    std::string detail;
};

/// Checks the three labeling clauses at every state reachable from the
/// initial state, in state order: exactly one label holds; from the world
/// w labeled there, `<G>phi_u` holds iff w reaches u; and the initial
/// world's label holds at the initial state.
[[nodiscard]] LabelingReport verify_labeling( const Multiverse& mv, const Labeling& lab );

/// The assignment p -> disjunction of the labels of the worlds where p holds.
class Translation
{
public:
    Translation() = default;
    explicit Translation( std::map< VarIndex, ControlSentence > psi ) : _psi{ std::move( psi ) } {}

    [[nodiscard]] const std::map< VarIndex, ControlSentence >& psi() const noexcept { return _psi; }

    /// Commutes with the connectives and sends [] to [G]; throws
    /// UnknownVariable for a variable without a translation.
    [[nodiscard]] ControlSentence apply( const Formula& f ) const;

private:
    std::map< VarIndex, ControlSentence > _psi;
};

/// Throws std::invalid_argument when the model's frame is not the labeled frame.
[[nodiscard]] Translation translate( const KripkeModel& m, const Labeling& lab );

/// (m, w0) satisfies f iff the initial state satisfies its translation.
[[nodiscard]] bool roundtrip_check( const LabeledMultiverse& lm, const KripkeModel& m, std::size_t w0, const Formula& f );

struct UniformFailure
{
    std::size_t state = 0;
    std::size_t world = 0;
    bool model_truth = false;
};

/// At every reachable state, with w its labeled world, (m, w) satisfies f
/// iff the state satisfies the translation. Needs a verified labeling.
[[nodiscard]] std::optional< UniformFailure > uniform_check( const LabeledMultiverse& lm, const KripkeModel& m, const Formula& f );

} // namespace mlf
