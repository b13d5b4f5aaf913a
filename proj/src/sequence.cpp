#include "lagcorr/sequence.hpp"

#include <utility>

#include "lagcorr/error.hpp"

namespace lagcorr {

GeneralizedCorrespondence GeneralizedCorrespondence::identity(SymplecticSpace m) {
    return GeneralizedCorrespondence(std::move(m), {});
}

GeneralizedCorrespondence::GeneralizedCorrespondence(SymplecticSpace start, std::vector<LagrangianCorrespondence> steps)
    : start_(std::move(start)), steps_(std::move(steps)) {
    const SymplecticSpace* at = &start_;
    for (std::size_t j = 0; j < steps_.size(); ++j) {
        if (!(steps_[j].source() == *at)) {
            throw Error(ErrorKind::EndpointMismatch, "step " + std::to_string(j) + " ('" + steps_[j].name() +
                                                         "') starts at '" + steps_[j].source().name() +
                                                         "', expected '" + at->name() + "'");
        }
        at = &steps_[j].target();
    }
}

namespace {

SymplecticSpace first_source(const std::vector<LagrangianCorrespondence>& steps) {
    if (steps.empty()) {
        throw Error(ErrorKind::EndpointMismatch, "empty sequence needs an explicit endpoint");
    }
    return steps.front().source();
}

}  // namespace

GeneralizedCorrespondence::GeneralizedCorrespondence(std::vector<LagrangianCorrespondence> steps)
    : GeneralizedCorrespondence(first_source(steps), steps) {}

GeneralizedCorrespondence::GeneralizedCorrespondence(const LagrangianCorrespondence& step)
    : start_(step.source()), steps_{step} {}

const SymplecticSpace& GeneralizedCorrespondence::target() const {
    return steps_.empty() ? start_ : steps_.back().target();
}

std::vector<SymplecticSpace> GeneralizedCorrespondence::spaces() const {
    std::vector<SymplecticSpace> out;
    out.reserve(steps_.size() + 1);
    out.push_back(start_);
    for (const auto& s : steps_) out.push_back(s.target());
    return out;
}

GeneralizedCorrespondence concat(const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t) {
    if (!(s.target() == t.source())) {
        throw Error(ErrorKind::EndpointMismatch,
                    "cannot concatenate: '" + s.target().name() + "' vs '" + t.source().name() + "'");
    }
    std::vector<LagrangianCorrespondence> steps = s.steps();
    steps.insert(steps.end(), t.steps().begin(), t.steps().end());
    GeneralizedCorrespondence out(s.source(), std::move(steps));
    out.flags = AdmissibilityFlags{s.flags.monotone && t.flags.monotone,
                                   s.flags.torsion_fundamental_group && t.flags.torsion_fundamental_group,
                                   s.flags.minimal_maslov_ok && t.flags.minimal_maslov_ok};
    return out;
}

GeneralizedCorrespondence transpose(const GeneralizedCorrespondence& s) {
    std::vector<LagrangianCorrespondence> steps;
    steps.reserve(s.length());
    for (auto it = s.steps().rbegin(); it != s.steps().rend(); ++it) steps.push_back(transpose(*it));
    GeneralizedCorrespondence out(s.target(), std::move(steps));
    out.flags = s.flags;
    return out;
}

NormalForm normalize(const GeneralizedCorrespondence& s) {
    std::vector<LagrangianCorrespondence> steps = s.steps();
    std::vector<ReductionStep> trace;
    std::size_t j = 0;
    // Pairs left of a reduction are untouched by it, so the rescan can resume
    // one position before the replaced pair with the same outcome as a full
    // restart.
    while (j + 1 < steps.size()) {
        CompositionReport report = geometric_compose(steps[j], steps[j + 1]);
        if (!report.embedded()) {
            ++j;
            continue;
        }
        LagrangianCorrespondence result(steps[j].source(), steps[j + 1].target(), report.composed,
                                        composite_name(steps[j].name(), steps[j + 1].name()));
        trace.push_back(ReductionStep{j, steps[j], steps[j + 1], result, std::move(report)});
        steps[j] = std::move(result);
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        if (j > 0) --j;
    }
    GeneralizedCorrespondence reduced(s.source(), std::move(steps));
    reduced.flags = s.flags;
    return NormalForm{std::move(reduced), std::move(trace)};
}

Subspace pi_invariant(const GeneralizedCorrespondence& s) {
    if (s.empty()) return diagonal(s.source()).subspace();
    Subspace acc = s.steps().front().subspace();
    const std::size_t n0 = s.source().dim();
    for (std::size_t j = 1; j < s.length(); ++j) {
        const auto& step = s.steps()[j];
        acc = compose_relations(acc, n0, step.source().dim(), step.subspace(), step.target().dim());
    }
    return acc;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Distinct: return "distinct";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

EquivalenceVerdict equivalent(const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t) {
    if (!(s.source() == t.source()) || !(s.target() == t.target())) {
        throw Error(ErrorKind::EndpointMismatch, "sequences run between different endpoints: '" + s.source().name() +
                                                     "'->'" + s.target().name() + "' vs '" + t.source().name() +
                                                     "'->'" + t.target().name() + "'");
    }
    EquivalenceVerdict v{Verdict::Unknown, normalize(s), normalize(t), pi_invariant(s), pi_invariant(t)};
    if (!(v.left_pi == v.right_pi)) {
        v.verdict = Verdict::Distinct;
    } else if (v.left.reduced == v.right.reduced) {
        v.verdict = Verdict::Equivalent;
    }
    return v;
}

AxiomReport check_axioms(std::span<const ComposableTriple> samples) {
    AxiomReport report;
    report.samples = samples.size();
    auto check = [&](bool ok, const char* axiom, std::size_t i, const std::string& detail) {
        ++report.checks;
        if (!ok) report.failures.push_back(AxiomFailure{axiom, i, detail});
    };

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [a, b, c] = samples[i];
        try {
            const auto left = concat(concat(a, b), c);
            const auto right = concat(a, concat(b, c));
            check(left == right, "associativity", i,
                  "lengths " + std::to_string(left.length()) + " vs " + std::to_string(right.length()));
        } catch (const Error& e) {
            check(false, "associativity", i, e.what());
            continue;
        }

        for (const auto* s : {&a, &b, &c}) {
            const auto id_src = GeneralizedCorrespondence::identity(s->source());
            const auto id_tgt = GeneralizedCorrespondence::identity(s->target());
            check(concat(id_src, *s) == *s, "left identity", i, "empty sequence at " + s->source().name());
            check(concat(*s, id_tgt) == *s, "right identity", i, "empty sequence at " + s->target().name());

            if (s->empty()) continue;
            const auto base = normalize(*s).reduced;
            const GeneralizedCorrespondence diag_src(diagonal(s->source()));
            const GeneralizedCorrespondence diag_tgt(diagonal(s->target()));
            check(normalize(concat(diag_src, *s)).reduced == base, "left diagonal identity", i,
                  "diagonal of " + s->source().name());
            check(normalize(concat(*s, diag_tgt)).reduced == base, "right diagonal identity", i,
                  "diagonal of " + s->target().name());
        }
    }
    return report;
}

}  // namespace lagcorr
