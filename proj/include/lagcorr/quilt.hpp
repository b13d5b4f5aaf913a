#pragma once

// Combinatorial quilted surfaces.
//
// A patch is a polygon whose sides ("arcs") are listed counterclockwise. Every
// arc is covered by exactly one of: a seam slot, a boundary label, or a segment
// of a strip-like end. A seam joins two arcs of (usually) different patches
// and is labeled by a correspondence from the first slot's space to the
// second's. A boundary arc is labeled by a generalized Lagrangian, i.e. a
// sequence starting at the point.
//
// An end is the list of its cross-section segments in order. Outgoing ends are
// read from the arc before each segment to the arc after it, incoming ends the
// other way round; the labels crossed along the way form the end's signature.
// A strip-like end starts and stops on boundary arcs, so its signature runs
// from the point to the point. A cylindrical end starts on a seam and closes
// up, so its signature runs from the first segment's space back to itself.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lagcorr/correspondence.hpp"
#include "lagcorr/grading.hpp"
#include "lagcorr/sequence.hpp"
#include "lagcorr/symplectic.hpp"

namespace lagcorr {

struct ArcRef {
    std::string patch;
    std::string arc;

    bool operator==(const ArcRef&) const = default;
    auto operator<=>(const ArcRef&) const = default;
};

struct Patch {
    std::string id;
    SymplecticSpace space;
    std::vector<std::string> arcs;  // counterclockwise, cyclic
    int order = 0;                  // sign-relevant patch ordering
};

struct Seam {
    std::string id;
    ArcRef first;
    ArcRef second;
    LagrangianCorrespondence label;  // first.patch space -> second.patch space
};

struct BoundaryLabel {
    ArcRef arc;
    GeneralizedCorrespondence label;  // point -> patch space
};

enum class Direction { Incoming, Outgoing };
std::string to_string(Direction d);

struct End {
    std::string id;
    Direction direction = Direction::Incoming;
    std::vector<ArcRef> segments;
    GeneralizedCorrespondence signature;
};

struct QuiltedSurface {
    std::vector<Patch> patches;
    std::vector<Seam> seams;
    std::vector<BoundaryLabel> boundaries;
    std::vector<End> ends;

    const Patch* find_patch(const std::string& id) const;
    const Seam* find_seam(const std::string& id) const;
    const End* find_end(const std::string& id) const;
};

/// All labeling rule violations; empty means valid.
std::vector<std::string> validate(const QuiltedSurface& q);

/// The signature read off the segments of `end`. Returns std::nullopt and
/// fills `problem` when the segments do not form a well-labeled cross-section.
std::optional<GeneralizedCorrespondence> derive_signature(const QuiltedSurface& q, const End& end,
                                                          std::string* problem = nullptr);

/// Glue outgoing end `out_end` of q1 to incoming end `in_end` of q2.
///
/// Identifiers of q2 that clash with q1 get primes appended. Segments are
/// matched in order, patches across each segment pair are merged, and the arcs
/// on either side of the cut are fused. Throws Error(DirectionMismatch),
/// Error(SignatureMismatch), Error(UnknownName), or Error(UnsupportedTopology)
/// when a merge would produce a patch that is not a disk.
QuiltedSurface glue(const QuiltedSurface& q1, const std::string& out_end, const QuiltedSurface& q2,
                    const std::string& in_end);

struct ShrinkResult {
    QuiltedSurface quilt;
    std::int64_t shift = 0;
    EndConfiguration configuration = EndConfiguration::InOut;
    std::string new_seam;
    CompositionReport report;
};

/// Remove a strip patch between seams sigma01 and sigma12 and replace it by a
/// single seam labeled with the composite. Throws Error(NotAStrip) or
/// NotEmbeddedError.
ShrinkResult shrink_strip(const QuiltedSurface& q, const std::string& patch_id);

/// One patch, three boundary arcs labeled l, l1, l2 and ends
/// in1 = (l, l1^t), in2 = (l1, l2^t), out = (l, l2^t).
QuiltedSurface pair_of_pants(const GeneralizedCorrespondence& l, const GeneralizedCorrespondence& l1,
                             const GeneralizedCorrespondence& l2);

/// Disk with boundary label l and one outgoing end (l, l^t).
QuiltedSurface quilted_cap(const GeneralizedCorrespondence& l);

/// Stack of strips: bottom boundary `bottom`, seams along `middle`, top
/// boundary `top`; ends in and out both read (bottom, middle, top^t).
QuiltedSurface quilted_strip(const GeneralizedCorrespondence& bottom, const GeneralizedCorrespondence& middle,
                             const GeneralizedCorrespondence& top);

/// The quilt realizing the functor of a correspondence sequence l01 on
/// morphisms from l to l1: incoming end (l, l1^t), outgoing end
/// ((l, l01), (l1, l01)^t). Patches of l01's intermediate spaces are nested
/// bands around the outgoing end, ordered from the bottom up.
QuiltedSurface functor_quilt(const GeneralizedCorrespondence& l01, const GeneralizedCorrespondence& l,
                             const GeneralizedCorrespondence& l1);

/// Quilted cylinder for the cyclic sequence (l_ab, l_ab1^t), with one
/// cylindrical incoming and one cylindrical outgoing end.
QuiltedSurface quilted_cylinder(const GeneralizedCorrespondence& l_ab, const GeneralizedCorrespondence& l_ab1);

/// Text that is equal for two quilts exactly when they agree up to renaming
/// identifiers and reorienting seams. Patch orders are not part of it.
std::string canonical_form(const QuiltedSurface& q);
bool isomorphic(const QuiltedSurface& a, const QuiltedSurface& b);

}  // namespace lagcorr
