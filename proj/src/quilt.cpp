#include "lagcorr/quilt.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "lagcorr/error.hpp"

namespace lagcorr {

std::string to_string(Direction d) { return d == Direction::Incoming ? "in" : "out"; }

const Patch* QuiltedSurface::find_patch(const std::string& id) const {
    auto it = std::find_if(patches.begin(), patches.end(), [&](const Patch& p) { return p.id == id; });
    return it == patches.end() ? nullptr : &*it;
}

const Seam* QuiltedSurface::find_seam(const std::string& id) const {
    auto it = std::find_if(seams.begin(), seams.end(), [&](const Seam& s) { return s.id == id; });
    return it == seams.end() ? nullptr : &*it;
}

const End* QuiltedSurface::find_end(const std::string& id) const {
    auto it = std::find_if(ends.begin(), ends.end(), [&](const End& e) { return e.id == id; });
    return it == ends.end() ? nullptr : &*it;
}

namespace {

struct Cover {
    enum class Kind { SeamFirst, SeamSecond, Boundary, Segment } kind;
    std::size_t index = 0;    // seam, boundary or end index
    std::size_t segment = 0;  // segment index within the end
};

std::vector<Cover> covers_of(const QuiltedSurface& q, const ArcRef& arc) {
    std::vector<Cover> out;
    for (std::size_t i = 0; i < q.seams.size(); ++i) {
        if (q.seams[i].first == arc) out.push_back({Cover::Kind::SeamFirst, i, 0});
        if (q.seams[i].second == arc) out.push_back({Cover::Kind::SeamSecond, i, 0});
    }
    for (std::size_t i = 0; i < q.boundaries.size(); ++i) {
        if (q.boundaries[i].arc == arc) out.push_back({Cover::Kind::Boundary, i, 0});
    }
    for (std::size_t i = 0; i < q.ends.size(); ++i) {
        for (std::size_t s = 0; s < q.ends[i].segments.size(); ++s) {
            if (q.ends[i].segments[s] == arc) out.push_back({Cover::Kind::Segment, i, s});
        }
    }
    return out;
}

std::optional<Cover> unique_cover(const QuiltedSurface& q, const ArcRef& arc) {
    auto c = covers_of(q, arc);
    if (c.size() != 1) return std::nullopt;
    return c.front();
}

bool is_seam(const Cover& c) { return c.kind == Cover::Kind::SeamFirst || c.kind == Cover::Kind::SeamSecond; }

// The slot on the far side of a seam cover.
const ArcRef& far_slot(const QuiltedSurface& q, const Cover& c) {
    const Seam& s = q.seams[c.index];
    return c.kind == Cover::Kind::SeamFirst ? s.second : s.first;
}

// The seam label read from the side of the covered arc.
LagrangianCorrespondence oriented_label(const QuiltedSurface& q, const Cover& c) {
    const Seam& s = q.seams[c.index];
    return c.kind == Cover::Kind::SeamFirst ? s.label : transpose(s.label);
}

std::optional<std::size_t> arc_position(const Patch& p, const std::string& arc) {
    auto it = std::find(p.arcs.begin(), p.arcs.end(), arc);
    if (it == p.arcs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - p.arcs.begin());
}

// (entry, exit) arcs of an end segment in reading order.
std::optional<std::pair<ArcRef, ArcRef>> entry_exit(const QuiltedSurface& q, const ArcRef& seg, Direction dir) {
    const Patch* p = q.find_patch(seg.patch);
    if (!p || p->arcs.size() < 2) return std::nullopt;
    auto pos = arc_position(*p, seg.arc);
    if (!pos) return std::nullopt;
    const std::size_t n = p->arcs.size();
    ArcRef prev{p->id, p->arcs[(*pos + n - 1) % n]};
    ArcRef next{p->id, p->arcs[(*pos + 1) % n]};
    if (dir == Direction::Outgoing) return std::make_pair(prev, next);
    return std::make_pair(next, prev);
}

std::string arc_text(const ArcRef& a) { return a.patch + "." + a.arc; }

}  // namespace

std::optional<GeneralizedCorrespondence> derive_signature(const QuiltedSurface& q, const End& end,
                                                          std::string* problem) {
    auto fail = [&](const std::string& msg) -> std::optional<GeneralizedCorrespondence> {
        if (problem) *problem = "end " + end.id + ": " + msg;
        return std::nullopt;
    };
    if (end.segments.empty()) return fail("no segments");

    std::vector<std::pair<ArcRef, ArcRef>> io;
    for (const auto& seg : end.segments) {
        auto e = entry_exit(q, seg, end.direction);
        if (!e) return fail("segment " + arc_text(seg) + " is not an arc of a patch with at least two arcs");
        io.push_back(*e);
    }

    const Patch* first_patch = q.find_patch(end.segments.front().patch);
    const ArcRef start_arc = io.front().first;
    auto start = unique_cover(q, start_arc);
    if (!start) return fail("entry arc " + arc_text(start_arc) + " is not covered exactly once");

    std::optional<GeneralizedCorrespondence> sig;
    bool cylindrical = false;
    if (start->kind == Cover::Kind::Boundary) {
        sig = q.boundaries[start->index].label;
        if (!(sig->target() == first_patch->space)) return fail("boundary label does not end in the patch space");
    } else if (is_seam(*start)) {
        cylindrical = true;
        sig = GeneralizedCorrespondence::identity(first_patch->space);
    } else {
        return fail("entry arc " + arc_text(start_arc) + " is another end segment");
    }

    try {
        for (std::size_t i = 0; i < io.size(); ++i) {
            const ArcRef& exit = io[i].second;
            auto cov = unique_cover(q, exit);
            if (!cov) return fail("exit arc " + arc_text(exit) + " is not covered exactly once");
            const bool last = i + 1 == io.size();
            if (!last || cylindrical) {
                if (!is_seam(*cov)) return fail("exit arc " + arc_text(exit) + " should be a seam");
                const ArcRef& expected = last ? start_arc : io[i + 1].first;
                if (!(far_slot(q, *cov) == expected)) {
                    return fail("seam at " + arc_text(exit) + " does not lead to " + arc_text(expected));
                }
                sig = concat(*sig, GeneralizedCorrespondence(oriented_label(q, *cov)));
            } else {
                if (cov->kind != Cover::Kind::Boundary) return fail("final arc " + arc_text(exit) + " is not a boundary");
                sig = concat(*sig, transpose(q.boundaries[cov->index].label));
            }
        }
    } catch (const Error& e) {
        return fail(e.what());
    }
    return sig;
}

std::vector<std::string> validate(const QuiltedSurface& q) {
    std::vector<std::string> out;

    auto check_unique = [&](const char* what, const std::vector<std::string>& ids) {
        std::set<std::string> seen;
        for (const auto& id : ids) {
            if (!seen.insert(id).second) out.push_back(std::string("duplicate ") + what + " id '" + id + "'");
        }
    };
    std::vector<std::string> pids, aids, sids, eids;
    for (const auto& p : q.patches) {
        pids.push_back(p.id);
        aids.insert(aids.end(), p.arcs.begin(), p.arcs.end());
        if (p.arcs.empty()) out.push_back("patch " + p.id + " has no arcs");
    }
    for (const auto& s : q.seams) sids.push_back(s.id);
    for (const auto& e : q.ends) eids.push_back(e.id);
    check_unique("patch", pids);
    check_unique("arc", aids);
    check_unique("seam", sids);
    check_unique("end", eids);

    std::map<ArcRef, int> count;
    for (const auto& p : q.patches)
        for (const auto& a : p.arcs) count[ArcRef{p.id, a}] = 0;

    auto touch = [&](const ArcRef& a, const std::string& who) -> const Patch* {
        auto it = count.find(a);
        if (it == count.end()) {
            out.push_back(who + " refers to unknown arc " + arc_text(a));
            return nullptr;
        }
        ++it->second;
        return q.find_patch(a.patch);
    };

    for (const auto& s : q.seams) {
        const Patch* p1 = touch(s.first, "seam " + s.id);
        const Patch* p2 = touch(s.second, "seam " + s.id);
        if (s.first == s.second) out.push_back("seam " + s.id + " joins an arc to itself");
        if (p1 && !(s.label.source() == p1->space)) {
            out.push_back("seam " + s.id + " label starts at '" + s.label.source().name() + "' but patch " + p1->id +
                          " carries '" + p1->space.name() + "'");
        }
        if (p2 && !(s.label.target() == p2->space)) {
            out.push_back("seam " + s.id + " label ends at '" + s.label.target().name() + "' but patch " + p2->id +
                          " carries '" + p2->space.name() + "'");
        }
    }
    for (const auto& b : q.boundaries) {
        const Patch* p = touch(b.arc, "boundary " + arc_text(b.arc));
        if (!b.label.source().is_point()) out.push_back("boundary " + arc_text(b.arc) + " label does not start at a point");
        if (p && !(b.label.target() == p->space)) {
            out.push_back("boundary " + arc_text(b.arc) + " label ends at '" + b.label.target().name() + "' but patch " +
                          p->id + " carries '" + p->space.name() + "'");
        }
    }
    for (const auto& e : q.ends)
        for (const auto& seg : e.segments) touch(seg, "end " + e.id);

    for (const auto& [arc, n] : count) {
        if (n != 1) out.push_back("arc " + arc_text(arc) + " covered " + std::to_string(n) + " times");
    }

    // Signatures are read off the labels; a broken label would be reported
    // again by every end that crosses it.
    if (!out.empty()) return out;
    for (const auto& e : q.ends) {
        std::string problem;
        auto sig = derive_signature(q, e, &problem);
        if (!sig) {
            out.push_back(problem);
        } else if (!(*sig == e.signature)) {
            out.push_back("end " + e.id + ": declared signature differs from the labels it crosses");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// glue

namespace {

std::string fresh(const std::string& id, const std::set<std::string>& taken) {
    std::string out = id;
    while (taken.count(out)) out += '\'';
    return out;
}

// Renames every identifier of q that is already used in `base`.
QuiltedSurface avoid_clashes(const QuiltedSurface& base, QuiltedSurface q) {
    std::set<std::string> patches, arcs, seams, ends;
    for (const auto& p : base.patches) {
        patches.insert(p.id);
        arcs.insert(p.arcs.begin(), p.arcs.end());
    }
    for (const auto& s : base.seams) seams.insert(s.id);
    for (const auto& e : base.ends) ends.insert(e.id);

    std::map<std::string, std::string> prename, arename;
    std::set<std::string> own_patches, own_arcs;
    for (const auto& p : q.patches) {
        own_patches.insert(p.id);
        own_arcs.insert(p.arcs.begin(), p.arcs.end());
    }
    for (auto& p : q.patches) {
        std::set<std::string> taken = patches;
        taken.insert(own_patches.begin(), own_patches.end());
        for (auto& [_, v] : prename) taken.insert(v);
        prename[p.id] = patches.count(p.id) ? fresh(p.id, taken) : p.id;
        for (auto& a : p.arcs) {
            std::set<std::string> ataken = arcs;
            ataken.insert(own_arcs.begin(), own_arcs.end());
            for (auto& [_, v] : arename) ataken.insert(v);
            arename[a] = arcs.count(a) ? fresh(a, ataken) : a;
        }
    }
    auto fix = [&](ArcRef& r) {
        r.patch = prename.at(r.patch);
        r.arc = arename.at(r.arc);
    };
    for (auto& p : q.patches) {
        p.id = prename[p.id];
        for (auto& a : p.arcs) a = arename[a];
    }
    std::set<std::string> stake = seams, etake = ends;
    for (auto& s : q.seams) {
        fix(s.first);
        fix(s.second);
        if (seams.count(s.id)) s.id = fresh(s.id, stake);
        stake.insert(s.id);
    }
    for (auto& b : q.boundaries) fix(b.arc);
    for (auto& e : q.ends) {
        for (auto& seg : e.segments) fix(seg);
        if (ends.count(e.id)) e.id = fresh(e.id, etake);
        etake.insert(e.id);
    }
    return q;
}

struct UnionFind {
    std::map<std::string, std::string> parent;

    std::string find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        std::string root = find(it->second);
        parent[x] = root;
        return root;
    }

    // The root of `keep` stays the representative.
    void unite(const std::string& keep, const std::string& other) {
        const std::string a = find(keep);
        const std::string b = find(other);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

QuiltedSurface glue(const QuiltedSurface& q1, const std::string& out_end, const QuiltedSurface& q2,
                    const std::string& in_end) {
    const End* eo = q1.find_end(out_end);
    if (!eo) throw Error(ErrorKind::UnknownName, "no end '" + out_end + "' in the first quilt");
    const End* ei_orig = q2.find_end(in_end);
    if (!ei_orig) throw Error(ErrorKind::UnknownName, "no end '" + in_end + "' in the second quilt");
    if (eo->direction != Direction::Outgoing) {
        throw Error(ErrorKind::DirectionMismatch, "end '" + out_end + "' is not outgoing");
    }
    if (ei_orig->direction != Direction::Incoming) {
        throw Error(ErrorKind::DirectionMismatch, "end '" + in_end + "' is not incoming");
    }
    if (!(eo->signature == ei_orig->signature)) {
        throw Error(ErrorKind::SignatureMismatch, "ends '" + out_end + "' and '" + in_end + "' have different signatures");
    }
    if (eo->segments.size() != ei_orig->segments.size()) {
        throw Error(ErrorKind::SignatureMismatch, "ends '" + out_end + "' and '" + in_end +
                                                      "' cross a different number of patches");
    }

    const std::size_t in_index = static_cast<std::size_t>(ei_orig - q2.ends.data());
    QuiltedSurface q2r = avoid_clashes(q1, q2);
    const End ei = q2r.ends[in_index];

    QuiltedSurface r;
    r.patches = q1.patches;
    r.patches.insert(r.patches.end(), q2r.patches.begin(), q2r.patches.end());
    r.seams = q1.seams;
    r.seams.insert(r.seams.end(), q2r.seams.begin(), q2r.seams.end());
    r.boundaries = q1.boundaries;
    r.boundaries.insert(r.boundaries.end(), q2r.boundaries.begin(), q2r.boundaries.end());
    for (const auto& e : q1.ends)
        if (e.id != out_end) r.ends.push_back(e);
    for (const auto& e : q2r.ends)
        if (e.id != ei.id) r.ends.push_back(e);

    std::map<std::string, std::string> owner;  // arc -> patch id
    for (const auto& p : r.patches)
        for (const auto& a : p.arcs) owner[a] = p.id;
    auto patch_ref = [&](const std::string& id) -> Patch& {
        return *std::find_if(r.patches.begin(), r.patches.end(), [&](const Patch& p) { return p.id == id; });
    };

    UnionFind uf;
    for (std::size_t i = 0; i < eo->segments.size(); ++i) {
        const std::string& a = eo->segments[i].arc;
        const std::string& b = ei.segments[i].arc;
        const std::string pid = owner.at(a);
        const std::string qid = owner.at(b);
        if (pid == qid) {
            throw Error(ErrorKind::UnsupportedTopology,
                        "gluing segment " + std::to_string(i) + " would join patch " + pid + " to itself");
        }
        Patch& p = patch_ref(pid);
        Patch& qp = patch_ref(qid);
        if (!(p.space == qp.space)) {
            throw Error(ErrorKind::SignatureMismatch, "segment " + std::to_string(i) + " joins patches over '" +
                                                          p.space.name() + "' and '" + qp.space.name() + "'");
        }
        const std::size_t np = p.arcs.size();
        const std::size_t nq = qp.arcs.size();
        const std::size_t pa = *arc_position(p, a);
        const std::size_t qb = *arc_position(qp, b);
        if (np < 2 || nq < 2) throw Error(ErrorKind::SignatureMismatch, "end segment is the only arc of its patch");

        const std::string p_prev = p.arcs[(pa + np - 1) % np];
        const std::string p_next = p.arcs[(pa + 1) % np];
        const std::string q_prev = qp.arcs[(qb + nq - 1) % nq];
        const std::string q_next = qp.arcs[(qb + 1) % nq];

        std::vector<std::string> spliced;
        for (std::size_t j = 1; j < np; ++j) spliced.push_back(p.arcs[(pa + j) % np]);
        for (std::size_t j = 1; j < nq; ++j) spliced.push_back(qp.arcs[(qb + j) % nq]);
        uf.unite(p_prev, q_next);
        uf.unite(p_next, q_prev);

        for (const auto& arc : qp.arcs) owner[arc] = pid;
        p.arcs = std::move(spliced);
        std::erase_if(r.patches, [&](const Patch& x) { return x.id == qid; });
    }

    for (auto& p : r.patches) {
        std::vector<std::string> collapsed;
        for (const auto& a : p.arcs) {
            const std::string rep = uf.find(a);
            if (collapsed.empty() || collapsed.back() != rep) collapsed.push_back(rep);
        }
        while (collapsed.size() > 1 && collapsed.front() == collapsed.back()) collapsed.pop_back();
        std::set<std::string> distinct(collapsed.begin(), collapsed.end());
        if (distinct.size() != collapsed.size()) {
            throw Error(ErrorKind::UnsupportedTopology, "glued patch " + p.id + " is not a disk");
        }
        p.arcs = std::move(collapsed);
    }

    auto remap = [&](ArcRef& ref) {
        ref.arc = uf.find(ref.arc);
        ref.patch = owner.at(ref.arc);
    };

    std::vector<Seam> seams;
    for (auto s : r.seams) {
        remap(s.first);
        remap(s.second);
        if (s.first == s.second) {
            throw Error(ErrorKind::UnsupportedTopology, "seam " + s.id + " collapsed onto a single arc");
        }
        auto dup = std::find_if(seams.begin(), seams.end(), [&](const Seam& t) {
            return (t.first == s.first && t.second == s.second) || (t.first == s.second && t.second == s.first);
        });
        if (dup == seams.end()) {
            seams.push_back(std::move(s));
            continue;
        }
        const bool same = dup->first == s.first ? dup->label == s.label : dup->label == transpose(s.label);
        if (!same) throw Error(ErrorKind::SignatureMismatch, "seams " + dup->id + " and " + s.id + " disagree");
    }
    r.seams = std::move(seams);

    std::vector<BoundaryLabel> boundaries;
    for (auto b : r.boundaries) {
        remap(b.arc);
        auto dup = std::find_if(boundaries.begin(), boundaries.end(), [&](const BoundaryLabel& t) { return t.arc == b.arc; });
        if (dup == boundaries.end()) {
            boundaries.push_back(std::move(b));
        } else if (!(dup->label == b.label)) {
            throw Error(ErrorKind::SignatureMismatch, "boundary labels fused at " + arc_text(b.arc) + " disagree");
        }
    }
    r.boundaries = std::move(boundaries);

    for (auto& e : r.ends)
        for (auto& seg : e.segments) remap(seg);

    auto violations = validate(r);
    if (!violations.empty()) {
        throw Error(ErrorKind::SignatureMismatch, "glued quilt is inconsistent: " + violations.front());
    }
    return r;
}

// ---------------------------------------------------------------------------
// shrink

ShrinkResult shrink_strip(const QuiltedSurface& q, const std::string& patch_id) {
    const Patch* strip = q.find_patch(patch_id);
    if (!strip) throw Error(ErrorKind::UnknownName, "no patch '" + patch_id + "'");
    auto not_strip = [&](const std::string& why) { return Error(ErrorKind::NotAStrip, "patch " + patch_id + ": " + why); };
    if (strip->arcs.size() != 4) throw not_strip("has " + std::to_string(strip->arcs.size()) + " arcs, expected 4");

    std::vector<Cover> covers;
    for (const auto& a : strip->arcs) {
        auto c = unique_cover(q, ArcRef{strip->id, a});
        if (!c) throw not_strip("arc " + a + " is not covered exactly once");
        covers.push_back(*c);
    }
    std::size_t seam_at = 0;
    if (is_seam(covers[0]) && is_seam(covers[2]) && covers[1].kind == Cover::Kind::Segment &&
        covers[3].kind == Cover::Kind::Segment) {
        seam_at = 0;
    } else if (is_seam(covers[1]) && is_seam(covers[3]) && covers[0].kind == Cover::Kind::Segment &&
               covers[2].kind == Cover::Kind::Segment) {
        seam_at = 1;
    } else {
        throw not_strip("needs seams on two opposite arcs and end segments on the other two");
    }
    const Cover ca = covers[seam_at];
    const Cover cb = covers[seam_at + 2];
    if (far_slot(q, ca).patch == strip->id || far_slot(q, cb).patch == strip->id) {
        throw not_strip("a seam returns to the strip itself");
    }

    // sigma01 should have the strip as its second slot when possible, so both
    // labels keep their stored orientation.
    const bool a_in = ca.kind == Cover::Kind::SeamSecond;
    const bool b_in = cb.kind == Cover::Kind::SeamSecond;
    const Cover c01 = (!a_in && b_in) ? cb : ca;
    const Cover c12 = (!a_in && b_in) ? ca : cb;

    // into the strip, then out of it
    const LagrangianCorrespondence l01 = transpose(oriented_label(q, c01));
    const LagrangianCorrespondence l12 = oriented_label(q, c12);

    CompositionReport report = geometric_compose(l01, l12);
    if (!report.embedded()) {
        throw NotEmbeddedError("seams at patch " + patch_id + " do not compose to an embedded correspondence",
                               std::move(report));
    }
    const Seam& s01 = q.seams[c01.index];
    const Seam& s12 = q.seams[c12.index];
    Seam merged{s01.id + "+" + s12.id, far_slot(q, c01), far_slot(q, c12),
                LagrangianCorrespondence(l01.source(), l12.target(), report.composed,
                                         composite_name(l01.name(), l12.name()))};

    Direction d1 = q.ends[covers[seam_at + 1].index].direction;
    Direction d2 = q.ends[covers[(seam_at + 3) % 4].index].direction;
    EndConfiguration config = EndConfiguration::InOut;
    if (d1 == Direction::Outgoing && d2 == Direction::Outgoing) config = EndConfiguration::TwoOut;
    if (d1 == Direction::Incoming && d2 == Direction::Incoming) config = EndConfiguration::TwoIn;

    ShrinkResult result;
    QuiltedSurface& r = result.quilt;
    for (const auto& p : q.patches)
        if (p.id != patch_id) r.patches.push_back(p);
    for (const auto& s : q.seams)
        if (s.id != s01.id && s.id != s12.id) r.seams.push_back(s);
    r.seams.push_back(merged);
    r.boundaries = q.boundaries;
    for (auto e : q.ends) {
        const bool touched =
            std::erase_if(e.segments, [&](const ArcRef& seg) { return seg.patch == patch_id; }) > 0;
        if (touched) {
            std::string problem;
            auto sig = derive_signature(r, e, &problem);
            if (!sig) throw not_strip("ends do not survive the move: " + problem);
            e.signature = std::move(*sig);
        }
        r.ends.push_back(std::move(e));
    }
    // derive_signature above ran before all ends were copied over; it only
    // looks at seams, boundaries and the end itself, which were all in place.

    result.shift = strip_shrink_shift(static_cast<std::int64_t>(strip->space.half_dim()), config);
    result.configuration = config;
    result.new_seam = merged.id;
    result.report = std::move(report);
    return result;
}

// ---------------------------------------------------------------------------
// builders

namespace {

void require_from_point(const GeneralizedCorrespondence& l, const char* what) {
    if (!l.source().is_point()) {
        throw Error(ErrorKind::EndpointMismatch, std::string(what) + " must start at a point, starts at '" +
                                                     l.source().name() + "'");
    }
}

void require_same_target(const GeneralizedCorrespondence& a, const GeneralizedCorrespondence& b) {
    if (!(a.target() == b.target())) {
        throw Error(ErrorKind::EndpointMismatch,
                    "labels end in different spaces: '" + a.target().name() + "' and '" + b.target().name() + "'");
    }
}

}  // namespace

QuiltedSurface pair_of_pants(const GeneralizedCorrespondence& l, const GeneralizedCorrespondence& l1,
                             const GeneralizedCorrespondence& l2) {
    require_from_point(l, "first label");
    require_from_point(l1, "second label");
    require_from_point(l2, "third label");
    require_same_target(l, l1);
    require_same_target(l, l2);
    const SymplecticSpace& m = l.target();

    QuiltedSurface q;
    q.patches.push_back(Patch{"P", m, {"b0", "o", "b2", "i2", "b1", "i1"}, 0});
    q.boundaries.push_back({{"P", "b0"}, l});
    q.boundaries.push_back({{"P", "b1"}, l1});
    q.boundaries.push_back({{"P", "b2"}, l2});
    q.ends.push_back(End{"in1", Direction::Incoming, {{"P", "i1"}}, concat(l, transpose(l1))});
    q.ends.push_back(End{"in2", Direction::Incoming, {{"P", "i2"}}, concat(l1, transpose(l2))});
    q.ends.push_back(End{"out", Direction::Outgoing, {{"P", "o"}}, concat(l, transpose(l2))});
    return q;
}

QuiltedSurface quilted_cap(const GeneralizedCorrespondence& l) {
    require_from_point(l, "cap label");
    QuiltedSurface q;
    q.patches.push_back(Patch{"C", l.target(), {"b", "o"}, 0});
    q.boundaries.push_back({{"C", "b"}, l});
    q.ends.push_back(End{"out", Direction::Outgoing, {{"C", "o"}}, concat(l, transpose(l))});
    return q;
}

QuiltedSurface quilted_strip(const GeneralizedCorrespondence& bottom, const GeneralizedCorrespondence& middle,
                             const GeneralizedCorrespondence& top) {
    require_from_point(bottom, "bottom label");
    require_from_point(top, "top label");
    if (!(bottom.target() == middle.source())) {
        throw Error(ErrorKind::EndpointMismatch, "bottom label does not end where the seams start");
    }
    require_same_target(middle, top);

    const auto spaces = middle.spaces();
    QuiltedSurface q;
    End in{"in", Direction::Incoming, {}, concat(concat(bottom, middle), transpose(top))};
    End out{"out", Direction::Outgoing, {}, in.signature};
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        const std::string id = "S" + std::to_string(i);
        const std::string k = std::to_string(i);
        q.patches.push_back(Patch{id, spaces[i], {"l" + k, "o" + k, "u" + k, "i" + k}, static_cast<int>(i)});
        in.segments.push_back({id, "i" + k});
        out.segments.push_back({id, "o" + k});
        if (i + 1 < spaces.size()) {
            const std::string n = std::to_string(i + 1);
            q.seams.push_back(Seam{"s" + k, {id, "u" + k}, {"S" + n, "l" + n}, middle.steps()[i]});
        }
    }
    q.boundaries.push_back({{"S0", "l0"}, bottom});
    q.boundaries.push_back({{"S" + std::to_string(spaces.size() - 1), "u" + std::to_string(spaces.size() - 1)}, top});
    q.ends.push_back(std::move(in));
    q.ends.push_back(std::move(out));
    return q;
}

QuiltedSurface functor_quilt(const GeneralizedCorrespondence& l01, const GeneralizedCorrespondence& l,
                             const GeneralizedCorrespondence& l1) {
    require_from_point(l, "first label");
    require_from_point(l1, "second label");
    require_same_target(l, l1);
    if (!(l.target() == l01.source())) {
        throw Error(ErrorKind::EndpointMismatch, "correspondence starts at '" + l01.source().name() +
                                                     "' but the labels end at '" + l.target().name() + "'");
    }
    const auto spaces = l01.spaces();
    const std::size_t r = l01.length();

    QuiltedSurface q;
    End in{"in", Direction::Incoming, {{"F0", "in"}}, concat(l, transpose(l1))};
    End out{"out", Direction::Outgoing, {}, concat(concat(l, l01), transpose(concat(l1, l01)))};

    if (r == 0) {
        q.patches.push_back(Patch{"F0", spaces[0], {"bl", "o", "br", "in"}, 0});
        out.segments.push_back({"F0", "o"});
    } else {
        q.patches.push_back(Patch{"F0", spaces[0], {"bl", "o0a", "n0", "o0b", "br", "in"}, 0});
        for (std::size_t j = 1; j < r; ++j) {
            const std::string k = std::to_string(j);
            q.patches.push_back(
                Patch{"F" + k, spaces[j], {"o" + k + "a", "n" + k, "o" + k + "b", "u" + k}, static_cast<int>(j)});
        }
        const std::string kr = std::to_string(r);
        q.patches.push_back(Patch{"F" + kr, spaces[r], {"o" + kr, "u" + kr}, static_cast<int>(r)});

        for (std::size_t j = 0; j < r; ++j) {
            const std::string k = std::to_string(j);
            const std::string n = std::to_string(j + 1);
            q.seams.push_back(Seam{"s" + k, {"F" + k, "n" + k}, {"F" + n, "u" + n}, l01.steps()[j]});
        }
        for (std::size_t j = 0; j < r; ++j) out.segments.push_back({"F" + std::to_string(j), "o" + std::to_string(j) + "a"});
        out.segments.push_back({"F" + kr, "o" + kr});
        for (std::size_t j = r; j-- > 0;) out.segments.push_back({"F" + std::to_string(j), "o" + std::to_string(j) + "b"});
    }
    q.boundaries.push_back({{"F0", "bl"}, l});
    q.boundaries.push_back({{"F0", "br"}, l1});
    q.ends.push_back(std::move(in));
    q.ends.push_back(std::move(out));
    return q;
}

QuiltedSurface quilted_cylinder(const GeneralizedCorrespondence& l_ab, const GeneralizedCorrespondence& l_ab1) {
    if (!(l_ab.source() == l_ab1.source()) || !(l_ab.target() == l_ab1.target())) {
        throw Error(ErrorKind::EndpointMismatch, "cylinder labels must share both endpoints");
    }
    const GeneralizedCorrespondence cycle = concat(l_ab, transpose(l_ab1));
    if (cycle.empty()) throw Error(ErrorKind::EndpointMismatch, "cylinder needs at least one correspondence");

    const auto spaces = cycle.spaces();
    const std::size_t k = cycle.length();
    QuiltedSurface q;
    End in{"in", Direction::Incoming, {}, cycle};
    End out{"out", Direction::Outgoing, {}, cycle};
    for (std::size_t i = 0; i < k; ++i) {
        const std::string id = "C" + std::to_string(i);
        const std::string s = std::to_string(i);
        const std::string n = std::to_string((i + 1) % k);
        q.patches.push_back(Patch{id, spaces[i], {"l" + s, "o" + s, "u" + s, "n" + s}, static_cast<int>(i)});
        q.seams.push_back(Seam{"s" + s, {id, "u" + s}, {"C" + n, "l" + n}, cycle.steps()[i]});
        in.segments.push_back({id, "n" + s});
        out.segments.push_back({id, "o" + s});
    }
    q.ends.push_back(std::move(in));
    q.ends.push_back(std::move(out));
    return q;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

std::string space_key(const SymplecticSpace& s) { return s.name() + "~" + format_matrix(s.form()); }

std::string corr_key(const LagrangianCorrespondence& l) {
    return space_key(l.source()) + ">" + space_key(l.target()) + "=" + format_matrix(l.subspace().basis());
}

std::string sequence_key(const GeneralizedCorrespondence& g) {
    std::string out = space_key(g.source());
    for (const auto& s : g.steps()) out += "|" + corr_key(s);
    return out;
}

std::string traverse(const QuiltedSurface& q, const std::string& start_patch, std::size_t start_pos) {
    std::map<std::string, std::size_t> number, offset;
    std::map<std::string, std::size_t> end_number;
    std::vector<std::string> queue{start_patch};
    number[start_patch] = 0;
    offset[start_patch] = start_pos;

    std::string out;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Patch& p = *q.find_patch(queue[qi]);
        const std::size_t n = p.arcs.size();
        out += "P" + std::to_string(number[p.id]) + "[" + space_key(p.space) + "](";
        for (std::size_t j = 0; j < n; ++j) {
            const ArcRef arc{p.id, p.arcs[(offset[p.id] + j) % n]};
            auto cov = unique_cover(q, arc);
            if (!cov) {
                out += "?;";
                continue;
            }
            if (is_seam(*cov)) {
                const ArcRef& other = far_slot(q, *cov);
                const Patch* op = q.find_patch(other.patch);
                const std::size_t opos = op ? arc_position(*op, other.arc).value_or(0) : 0;
                if (!number.count(other.patch)) {
                    number[other.patch] = number.size();
                    offset[other.patch] = opos;
                    queue.push_back(other.patch);
                }
                const std::size_t on = op ? op->arcs.size() : 1;
                const std::size_t rel = (opos + on - offset[other.patch]) % on;
                out += "s" + std::to_string(number[other.patch]) + "." + std::to_string(rel) + ":" +
                       corr_key(oriented_label(q, *cov)) + ";";
            } else if (cov->kind == Cover::Kind::Boundary) {
                out += "b:" + sequence_key(q.boundaries[cov->index].label) + ";";
            } else {
                const std::string& eid = q.ends[cov->index].id;
                if (!end_number.count(eid)) end_number[eid] = end_number.size();
                out += "e" + std::to_string(end_number[eid]) + "." + std::to_string(cov->segment) + ";";
            }
        }
        out += ")";
    }
    std::vector<std::pair<std::size_t, std::string>> ends;
    for (const auto& [eid, num] : end_number) {
        const End& e = *q.find_end(eid);
        ends.emplace_back(num, "E" + std::to_string(num) + to_string(e.direction) + "#" +
                                   std::to_string(e.segments.size()) + ":" + sequence_key(e.signature));
    }
    std::sort(ends.begin(), ends.end());
    for (const auto& [_, text] : ends) out += text;
    return out;
}

}  // namespace

std::string canonical_form(const QuiltedSurface& q) {
    // Components of the patch graph linked by seams.
    std::map<std::string, std::string> comp;
    UnionFind uf;
    for (const auto& s : q.seams) uf.unite(s.first.patch, s.second.patch);
    std::map<std::string, std::vector<const Patch*>> groups;
    for (const auto& p : q.patches) groups[uf.find(p.id)].push_back(&p);

    std::vector<std::string> parts;
    for (const auto& [_, members] : groups) {
        std::string best;
        bool have = false;
        for (const Patch* p : members) {
            for (std::size_t k = 0; k < std::max<std::size_t>(p->arcs.size(), 1); ++k) {
                std::string t = traverse(q, p->id, k);
                if (!have || t < best) {
                    best = std::move(t);
                    have = true;
                }
            }
        }
        parts.push_back(std::move(best));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + "\n";
    return out;
}

bool isomorphic(const QuiltedSurface& a, const QuiltedSurface& b) { return canonical_form(a) == canonical_form(b); }

}  // namespace lagcorr
