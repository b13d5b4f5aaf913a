#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lagcorr/correspondence.hpp"
#include "lagcorr/linalg.hpp"
#include "lagcorr/symplectic.hpp"

namespace lagcorr {

/// Analytic hypotheses (monotonicity, torsion fundamental group, minimal Maslov
/// number). Never computed; carried along so the data model keeps them.
struct AdmissibilityFlags {
    bool monotone = false;
    bool torsion_fundamental_group = false;
    bool minimal_maslov_ok = false;

    bool operator==(const AdmissibilityFlags&) const = default;
};

/// A chain N_0 -> N_1 -> ... -> N_r of Lagrangian correspondences. r = 0 is
/// allowed and acts as the strict identity on N_0.
class GeneralizedCorrespondence {
public:
    /// The empty sequence at m.
    static GeneralizedCorrespondence identity(SymplecticSpace m);

    /// Throws Error(EndpointMismatch) if consecutive steps do not chain.
    GeneralizedCorrespondence(SymplecticSpace start, std::vector<LagrangianCorrespondence> steps);
    /// Non-empty chain; start is the source of the first step.
    explicit GeneralizedCorrespondence(std::vector<LagrangianCorrespondence> steps);
    /// Length-one sequence.
    explicit GeneralizedCorrespondence(const LagrangianCorrespondence& step);

    const SymplecticSpace& source() const noexcept { return start_; }
    const SymplecticSpace& target() const;
    std::vector<SymplecticSpace> spaces() const;
    const std::vector<LagrangianCorrespondence>& steps() const noexcept { return steps_; }
    std::size_t length() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }

    AdmissibilityFlags flags;

    /// Structural equality: same spaces and same step subspaces. Names and
    /// flags do not participate.
    bool operator==(const GeneralizedCorrespondence& rhs) const {
        return start_ == rhs.start_ && steps_ == rhs.steps_;
    }

private:
    SymplecticSpace start_;
    std::vector<LagrangianCorrespondence> steps_;
};

/// s followed by t. Throws Error(EndpointMismatch) unless s ends where t starts.
GeneralizedCorrespondence concat(const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t);

/// Reverse the chain and transpose every step.
GeneralizedCorrespondence transpose(const GeneralizedCorrespondence& s);

struct ReductionStep {
    std::size_t index = 0;  // position of the left member of the pair
    LagrangianCorrespondence left;
    LagrangianCorrespondence right;
    LagrangianCorrespondence result;
    CompositionReport report;
};

struct NormalForm {
    GeneralizedCorrespondence reduced;
    std::vector<ReductionStep> trace;
};

/// Leftmost-first reduction: replace the first adjacent pair whose
/// composition is embedded by its composite, until no pair qualifies.
NormalForm normalize(const GeneralizedCorrespondence& s);

/// Left fold of the set-theoretic relation composite over the steps, a subspace
/// of source^- x target. The empty sequence gives the diagonal.
Subspace pi_invariant(const GeneralizedCorrespondence& s);

enum class Verdict { Equivalent, Distinct, Unknown };
std::string to_string(Verdict v);

struct EquivalenceVerdict {
    Verdict verdict = Verdict::Unknown;
    NormalForm left;
    NormalForm right;
    Subspace left_pi;
    Subspace right_pi;
};

/// Distinct iff the pi invariants differ; Equivalent iff the normal forms
/// agree; otherwise Unknown. Throws Error(EndpointMismatch) if the two
/// sequences do not share both endpoints.
EquivalenceVerdict equivalent(const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t);

struct ComposableTriple {
    GeneralizedCorrespondence first;
    GeneralizedCorrespondence second;
    GeneralizedCorrespondence third;
};

struct AxiomFailure {
    std::string axiom;
    std::size_t sample = 0;
    std::string detail;
};

struct AxiomReport {
    std::size_t samples = 0;
    std::size_t checks = 0;
    std::vector<AxiomFailure> failures;

    bool ok() const noexcept { return failures.empty(); }
};

/// Per sample: associativity of concat, the strict identity laws of the empty
/// sequence on both sides, and the diagonal as an identity up to normalization
/// on both sides of every non-empty member.
AxiomReport check_axioms(std::span<const ComposableTriple> samples);

}  // namespace lagcorr
