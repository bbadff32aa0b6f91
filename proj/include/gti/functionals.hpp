#pragma once

/**
 * @file functionals.hpp
 * @brief The functionals l_eta, the tuple sets L_n, B_n and the weak set
 *        B_n^w, the wall sets T_eta / T_eta^omega and the domination step.
 *
 * A functional is an n-tuple of equal-parity direction indices
 * (k_1, ..., k_n); on s = (s_1, ..., s_n) in the n-fold chamber it evaluates
 * to sum_i <s_i, e(k_i)>. For a fixed type, eta is represented by the chamber
 * vertex of that type (direction 0 or 1).
 */

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gti/coxeter.hpp"

namespace gti {

/// A point a*u0 + b*u1 of the Euclidean model Weyl chamber.
struct DeltaVector {
    CycloReal a, b;

    bool in_chamber() const { return a.sign() != Sign::negative && b.sign() != Sign::negative; }
    bool is_regular() const { return a.sign() == Sign::positive && b.sign() == Sign::positive; }
    Vec2 as_vec() const { return {a, b}; }
    friend bool operator==(const DeltaVector& x, const DeltaVector& y) { return x.a == y.a && x.b == y.b; }
};

/// L = (l_{e(k_1)}, ..., l_{e(k_n)}) with all k_i of one parity.
struct Functional {
    int m = 3;
    std::vector<DirectionIndex> indices;

    Functional() = default;
    Functional(int m_, std::vector<DirectionIndex> idx) : m(m_), indices(std::move(idx)) {
        if (indices.empty()) throw domain_error("functional needs at least one index");
        for (auto& d : indices) {
            d.k = ((d.k % (2 * m)) + 2 * m) % (2 * m);
            if (d.k % 2 != indices.front().k % 2)
                throw domain_error("functional indices must share one W-type (parity)");
        }
    }
    static Functional from_ints(int m_, const std::vector<int>& ks) {
        std::vector<DirectionIndex> idx;
        for (int k : ks) idx.push_back({k});
        return Functional(m_, std::move(idx));
    }

    int n() const { return static_cast<int>(indices.size()); }
    int parity() const { return indices.front().k % 2; }
    std::vector<int> ints() const {
        std::vector<int> out;
        for (auto d : indices) out.push_back(d.k);
        return out;
    }
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? "," : "") + std::to_string(indices[i].k);
        return s + ")";
    }
    friend bool operator==(const Functional& x, const Functional& y) { return x.m == y.m && x.indices == y.indices; }
    friend bool operator<(const Functional& x, const Functional& y) { return x.indices < y.indices; }
};

enum class Provenance { Ln, Bn, BnWeak, custom };

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Ln: return "Ln";
        case Provenance::Bn: return "Bn";
        case Provenance::BnWeak: return "BnWeak";
        case Provenance::custom: return "custom";
    }
    return "custom";
}

inline Provenance provenance_from_string(const std::string& s) {
    if (s == "Ln") return Provenance::Ln;
    if (s == "Bn") return Provenance::Bn;
    if (s == "BnWeak") return Provenance::BnWeak;
    if (s == "custom") return Provenance::custom;
    throw usage_error("unknown provenance: " + s);
}

/// Finite, deduplicated, lexicographically ordered collection of functionals.
struct InequalitySystem {
    int m = 3;
    int n = 3;
    std::vector<Functional> functionals;
    Provenance provenance = Provenance::custom;

    InequalitySystem() = default;
    InequalitySystem(int m_, int n_, std::vector<Functional> fs, Provenance p)
        : m(m_), n(n_), functionals(std::move(fs)), provenance(p) {
        for (const auto& f : functionals)
            if (f.m != m || f.n() != n) throw usage_error("functional " + f.to_string() + " does not match (m, n)");
        std::sort(functionals.begin(), functionals.end());
        functionals.erase(std::unique(functionals.begin(), functionals.end()), functionals.end());
    }

    std::size_t size() const { return functionals.size(); }
    bool contains(const Functional& f) const {
        return std::binary_search(functionals.begin(), functionals.end(), f);
    }
    std::size_t count_parity(int parity) const {
        return static_cast<std::size_t>(std::count_if(functionals.begin(), functionals.end(),
                                                      [&](const Functional& f) { return f.parity() == parity; }));
    }
    friend bool operator==(const InequalitySystem& a, const InequalitySystem& b) {
        return a.m == b.m && a.n == b.n && a.functionals == b.functionals && a.provenance == b.provenance;
    }
};

using WallSet = boost::dynamic_bitset<>;

// ---------------------------------------------------------------------------
// Evaluation

/// l_{e(k)}(s) = a cos(k pi/m) + b cos((k-1) pi/m).
inline CycloReal eval_l(const FieldPtr& ctx, DirectionIndex k, const DeltaVector& s) {
    if (!s.in_chamber()) throw domain_error("Delta vector has a negative chamber coordinate");
    return s.a * CycloReal::cos_pi(ctx, k.k) + s.b * CycloReal::cos_pi(ctx, k.k - 1L);
}

/// L(s) without the chamber-membership check (used for arbitrary cone points).
inline CycloReal eval_functional_raw(const FieldPtr& ctx, const Functional& f, const std::vector<DeltaVector>& s) {
    if (s.size() != f.indices.size()) throw usage_error("point has wrong number of sides");
    CycloReal acc(ctx);
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s[i].a * CycloReal::cos_pi(ctx, f.indices[i].k);
        acc += s[i].b * CycloReal::cos_pi(ctx, f.indices[i].k - 1L);
    }
    return acc;
}

inline CycloReal eval_functional(const FieldPtr& ctx, const Functional& f, const std::vector<DeltaVector>& s) {
    for (const auto& v : s)
        if (!v.in_chamber()) throw domain_error("Delta vector has a negative chamber coordinate");
    return eval_functional_raw(ctx, f, s);
}

inline std::vector<Sign> sign_vector(const InequalitySystem& sys, const std::vector<DeltaVector>& s) {
    FieldPtr ctx = make_field(sys.m);
    std::vector<Sign> out;
    out.reserve(sys.size());
    for (const auto& f : sys.functionals) out.push_back(eval_functional(ctx, f, s).sign());
    return out;
}

// ---------------------------------------------------------------------------
// Wall sets

/// Walls through the origin not containing eta.
inline WallSet T_eta(const Dihedral& W, DirectionIndex eta) {
    WallSet t(static_cast<std::size_t>(W.m()));
    for (int j = 0; j < W.m(); ++j)
        if (W.side_of_wall(eta, WallIndex{j}) != Side::on) t.set(static_cast<std::size_t>(j));
    return t;
}

/// Walls of T_eta having eta and the chamber omega(chamber 0) on the same side.
inline WallSet T_eta_omega(const Dihedral& W, DirectionIndex eta, const WeylElement& omega) {
    WallSet t(static_cast<std::size_t>(W.m()));
    ChamberIndex ch = W.chamber_of(omega);
    for (int j = 0; j < W.m(); ++j) {
        Side se = W.side_of_wall(eta, WallIndex{j});
        if (se == Side::on) continue;
        if (W.chamber_side(ch, WallIndex{j}) == se) t.set(static_cast<std::size_t>(j));
    }
    return t;
}

/// The two elements omega with omega(k) = eta: one rotation, one reflection.
inline std::array<WeylElement, 2> stabilizing_candidates(const Dihedral& W, DirectionIndex k, DirectionIndex eta) {
    // rotation_j: k + 2j = eta ; reflection_j: 2j - k = eta
    int diff = eta.k - k.k;
    int sum = eta.k + k.k;
    return {W.rotation(diff / 2), W.reflection(sum / 2)};
}

/// Canonical representative of the W-orbit of k: the chamber-0 vertex of that type.
inline DirectionIndex canonical_eta(const Dihedral& W, DirectionIndex k) { return {W.orbit_type(k)}; }

namespace detail {

inline void check_uniform_parity(const Dihedral& W, const std::vector<DirectionIndex>& tuple) {
    if (tuple.empty()) throw domain_error("empty tuple");
    for (auto d : tuple)
        if (W.orbit_type(d) != W.orbit_type(tuple.front()))
            throw domain_error("tuple indices must share one parity");
}

/// Enumerate omega choices satisfying the disjointness property, calling
/// visit(omegas, union) for every complete choice; visit returns true to stop.
inline bool search_disjoint(const Dihedral& W, const std::vector<DirectionIndex>& tuple, DirectionIndex eta,
                            const std::function<bool(const std::vector<WeylElement>&, const WallSet&)>& visit) {
    const std::size_t n = tuple.size();
    std::vector<std::array<WeylElement, 2>> cands(n);
    std::vector<std::array<WallSet, 2>> sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        cands[i] = stabilizing_candidates(W, tuple[i], eta);
        for (int c = 0; c < 2; ++c) sets[i][static_cast<std::size_t>(c)] = T_eta_omega(W, eta, cands[i][static_cast<std::size_t>(c)]);
    }
    std::vector<WeylElement> chosen(n);
    std::function<bool(std::size_t, const WallSet&)> rec = [&](std::size_t i, const WallSet& acc) -> bool {
        if (i == n) return visit(chosen, acc);
        for (std::size_t c = 0; c < 2; ++c) {
            // both candidates may coincide in their wall set; try each anyway
            if ((acc & sets[i][c]).any()) continue;
            chosen[i] = cands[i][c];
            if (rec(i + 1, acc | sets[i][c])) return true;
        }
        return false;
    };
    return rec(0, WallSet(static_cast<std::size_t>(W.m())));
}

}  // namespace detail

/// Membership in B_eta with a witnessing (omega_1, ..., omega_n).
inline std::optional<std::vector<WeylElement>> is_in_B(const Dihedral& W, const std::vector<DirectionIndex>& tuple) {
    detail::check_uniform_parity(W, tuple);
    DirectionIndex eta = canonical_eta(W, tuple.front());
    const WallSet full = T_eta(W, eta);
    std::optional<std::vector<WeylElement>> witness;
    detail::search_disjoint(W, tuple, eta, [&](const std::vector<WeylElement>& om, const WallSet& acc) {
        if (acc != full) return false;
        witness = om;
        return true;
    });
    return witness;
}

/// Disjointness alone, with a witness.
inline std::optional<std::vector<WeylElement>> satisfies_disjointness(const Dihedral& W,
                                                                      const std::vector<DirectionIndex>& tuple) {
    detail::check_uniform_parity(W, tuple);
    DirectionIndex eta = canonical_eta(W, tuple.front());
    std::optional<std::vector<WeylElement>> witness;
    detail::search_disjoint(W, tuple, eta, [&](const std::vector<WeylElement>& om, const WallSet&) {
        witness = om;
        return true;
    });
    return witness;
}

/// Witness in the weak form: omega_j, omega_j' with antipodal chambers and
/// every other chamber having -eta as a vertex.
struct WeakWitness {
    std::vector<WeylElement> omegas;
    int j = 0;
    int j_prime = 1;
};

inline std::optional<WeakWitness> weak_witness(const Dihedral& W, const std::vector<DirectionIndex>& tuple) {
    detail::check_uniform_parity(W, tuple);
    const int n = static_cast<int>(tuple.size());
    if (n < 2) return std::nullopt;
    DirectionIndex eta = canonical_eta(W, tuple.front());
    DirectionIndex minus_eta = W.antipode(eta);
    std::vector<std::array<WeylElement, 2>> cands;
    for (auto k : tuple) cands.push_back(stabilizing_candidates(W, k, eta));
    for (int j = 0; j < n; ++j) {
        for (int jp = 0; jp < n; ++jp) {
            if (jp == j) continue;
            for (const auto& oj : cands[static_cast<std::size_t>(j)]) {
                ChamberIndex cj = W.chamber_of(oj);
                const WeylElement* ojp = nullptr;
                for (const auto& o : cands[static_cast<std::size_t>(jp)])
                    if (W.chamber_of(o) == W.chamber(cj.c + W.m())) ojp = &o;
                if (!ojp) continue;
                WeakWitness w;
                w.omegas.resize(static_cast<std::size_t>(n));
                w.j = j;
                w.j_prime = jp;
                w.omegas[static_cast<std::size_t>(j)] = oj;
                w.omegas[static_cast<std::size_t>(jp)] = *ojp;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    if (i == j || i == jp) continue;
                    ok = false;
                    for (const auto& o : cands[static_cast<std::size_t>(i)]) {
                        if (W.chamber_has_vertex(W.chamber_of(o), minus_eta)) {
                            w.omegas[static_cast<std::size_t>(i)] = o;
                            ok = true;
                            break;
                        }
                    }
                }
                if (ok) return w;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

inline void for_each_tuple(int m, int n, int parity, const std::function<void(const std::vector<DirectionIndex>&)>& f) {
    std::vector<DirectionIndex> t(static_cast<std::size_t>(n), DirectionIndex{parity});
    for (;;) {
        f(t);
        int pos = n - 1;
        while (pos >= 0) {
            auto& k = t[static_cast<std::size_t>(pos)].k;
            if (k + 2 < 2 * m) {
                k += 2;
                break;
            }
            k = parity;
            --pos;
        }
        if (pos < 0) return;
    }
}

}  // namespace detail

/// All tuples of n equal-parity direction indices, both parities: 2 m^n functionals.
inline InequalitySystem enumerate_Ln(int m, int n) {
    if (n < 1) throw domain_error("n must be >= 1");
    Dihedral W(m);
    std::vector<Functional> out;
    for (int parity = 0; parity < 2; ++parity)
        detail::for_each_tuple(m, n, parity, [&](const std::vector<DirectionIndex>& t) { out.emplace_back(m, t); });
    return InequalitySystem(m, n, std::move(out), Provenance::Ln);
}

/// B_n: the tuples of L_n passing is_in_B.
inline InequalitySystem enumerate_Bn(int m, int n) {
    if (n < 2) throw domain_error("B_n requires n >= 2");
    Dihedral W(m);
    std::vector<Functional> out;
    for (int parity = 0; parity < 2; ++parity)
        detail::for_each_tuple(m, n, parity, [&](const std::vector<DirectionIndex>& t) {
            if (is_in_B(W, t)) out.emplace_back(m, t);
        });
    return InequalitySystem(m, n, std::move(out), Provenance::Bn);
}

/// B_n^w built directly: one antipodal chamber pair at positions j != j',
/// chambers with vertex -eta at every other position.
inline InequalitySystem enumerate_Bn_weak(int m, int n) {
    if (n < 2) throw domain_error("B_n^w requires n >= 2");
    Dihedral W(m);
    std::set<std::vector<DirectionIndex>> tuples;
    for (int parity = 0; parity < 2; ++parity) {
        DirectionIndex eta{parity};
        DirectionIndex minus_eta = W.antipode(eta);
        auto index_for = [&](ChamberIndex ch) { return W.act(W.inverse(W.chamber_element(ch)), eta); };
        std::vector<DirectionIndex> minimal;
        for (int c = 0; c < W.order(); ++c)
            if (W.chamber_has_vertex(ChamberIndex{c}, minus_eta)) minimal.push_back(index_for(ChamberIndex{c}));
        std::sort(minimal.begin(), minimal.end());
        minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
        for (int j = 0; j < n; ++j) {
            for (int jp = 0; jp < n; ++jp) {
                if (jp == j) continue;
                for (int c = 0; c < W.order(); ++c) {
                    std::vector<DirectionIndex> t(static_cast<std::size_t>(n));
                    t[static_cast<std::size_t>(j)] = index_for(ChamberIndex{c});
                    t[static_cast<std::size_t>(jp)] = index_for(W.chamber(c + W.m()));
                    // every other position: any of the (coinciding) minimal indices
                    std::function<void(int)> fill = [&](int i) {
                        if (i == n) {
                            tuples.insert(t);
                            return;
                        }
                        if (i == j || i == jp) return fill(i + 1);
                        for (auto k : minimal) {
                            t[static_cast<std::size_t>(i)] = k;
                            fill(i + 1);
                        }
                    };
                    fill(0);
                }
            }
        }
    }
    std::vector<Functional> out;
    for (const auto& t : tuples) out.emplace_back(m, t);
    return InequalitySystem(m, n, std::move(out), Provenance::BnWeak);
}

/// Index of the pointwise-smallest functional of the given type on the chamber.
inline DirectionIndex minimal_index(const Dihedral& W, int parity) {
    DirectionIndex eta{parity};
    ChamberIndex ch = W.chamber(W.antipode(eta).k);  // has -eta as a vertex
    return W.act(W.inverse(W.chamber_element(ch)), eta);
}

/// For a tuple with the disjointness property but not the covering one,
/// replace one position so the result lies in B_n and dominates pointwise.
inline Functional dominating_functional(const Dihedral& W, const Functional& f) {
    if (f.m != W.m()) throw usage_error("functional order does not match the group");
    if (is_in_B(W, f.indices)) throw domain_error("tuple " + f.to_string() + " already lies in B_n");
    auto witness = satisfies_disjointness(W, f.indices);
    if (!witness) throw domain_error("tuple " + f.to_string() + " lacks the disjointness property");
    DirectionIndex eta = canonical_eta(W, f.indices.front());
    const int n = f.n();
    if (n < 2) throw domain_error("dominating functional requires n >= 2");
    std::vector<int> nonempty;
    for (int i = 0; i < n; ++i)
        if (T_eta_omega(W, eta, (*witness)[static_cast<std::size_t>(i)]).any()) nonempty.push_back(i);
    // at most two positions carry nonempty wall sets in rank 2
    int j = nonempty.empty() ? 0 : nonempty.front();
    int jp = -1;
    if (nonempty.size() >= 2) {
        jp = nonempty[1];
    } else {
        for (int i = 0; i < n; ++i)
            if (i != j) {
                jp = i;
                break;
            }
    }
    ChamberIndex cj = W.chamber_of((*witness)[static_cast<std::size_t>(j)]);
    WeylElement hat = W.chamber_element(W.chamber(cj.c + W.m()));
    Functional out = f;
    out.indices[static_cast<std::size_t>(jp)] = W.act(W.inverse(hat), eta);
    return out;
}

}  // namespace gti
