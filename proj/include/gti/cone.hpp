#pragma once

/**
 * @file cone.hpp
 * @brief Homogeneous cones {x : r.x <= 0 for every row r} over Q(cos(pi/m)).
 *
 * build_cone gives the side-length cone of closed n-gons: variables
 * (a_1, b_1, ..., a_n, b_n), one row per functional followed by the chamber
 * rows -a_i <= 0, -b_i <= 0.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gti/functionals.hpp"
#include "gti/lp.hpp"

namespace gti {

struct ConeRow {
    enum class Kind { functional, nonnegativity, derived };
    std::vector<CycloReal> coeffs;  // the row reads coeffs . x <= 0
    Kind kind = Kind::derived;
    std::optional<Functional> source;
    std::string label;
};

struct ConeSystem {
    int m = 3;
    FieldPtr field;
    std::vector<std::string> variables;
    std::vector<ConeRow> rows;

    int dimension() const { return static_cast<int>(variables.size()); }
    std::vector<std::size_t> functional_rows() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].kind == ConeRow::Kind::functional) out.push_back(i);
        return out;
    }
};

inline std::vector<std::string> side_variable_names(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) {
        out.push_back("a" + std::to_string(i));
        out.push_back("b" + std::to_string(i));
    }
    return out;
}

inline ConeRow functional_row(const FieldPtr& ctx, const Functional& f) {
    ConeRow row;
    row.kind = ConeRow::Kind::functional;
    row.source = f;
    row.label = f.to_string();
    for (auto k : f.indices) {
        row.coeffs.push_back(CycloReal::cos_pi(ctx, k.k));
        row.coeffs.push_back(CycloReal::cos_pi(ctx, k.k - 1L));
    }
    return row;
}

inline ConeSystem build_cone(const InequalitySystem& sys) {
    ConeSystem cone;
    cone.m = sys.m;
    cone.field = make_field(sys.m);
    cone.variables = side_variable_names(sys.n);
    for (const auto& f : sys.functionals) cone.rows.push_back(functional_row(cone.field, f));
    const int d = 2 * sys.n;
    for (int v = 0; v < d; ++v) {
        ConeRow row;
        row.kind = ConeRow::Kind::nonnegativity;
        row.coeffs.assign(static_cast<std::size_t>(d), CycloReal(cone.field));
        row.coeffs[static_cast<std::size_t>(v)] = CycloReal(cone.field, -1L);
        row.label = cone.variables[static_cast<std::size_t>(v)] + ">=0";
        cone.rows.push_back(std::move(row));
    }
    return cone;
}

inline std::vector<CycloReal> flatten(const std::vector<DeltaVector>& s) {
    std::vector<CycloReal> out;
    for (const auto& v : s) {
        out.push_back(v.a);
        out.push_back(v.b);
    }
    return out;
}

inline CycloReal row_value(const FieldPtr& ctx, const ConeRow& row, const std::vector<CycloReal>& x) {
    return detail::dot(ctx, row.coeffs, x);
}

struct Membership {
    enum class Status { interior, boundary, outside };
    Status status = Status::interior;
    std::vector<std::size_t> active;    // rows with value 0
    std::vector<std::size_t> violated;  // rows with value > 0
    std::vector<CycloReal> values;
};

inline std::string to_string(Membership::Status s) {
    switch (s) {
        case Membership::Status::interior: return "interior";
        case Membership::Status::boundary: return "boundary";
        case Membership::Status::outside: return "outside";
    }
    return "?";
}

inline Membership member(const ConeSystem& cone, const std::vector<CycloReal>& x) {
    if (static_cast<int>(x.size()) != cone.dimension())
        throw usage_error("point has dimension " + std::to_string(x.size()) + ", cone has " +
                          std::to_string(cone.dimension()));
    Membership out;
    for (std::size_t i = 0; i < cone.rows.size(); ++i) {
        CycloReal v = row_value(cone.field, cone.rows[i], x);
        Sign s = v.sign();
        if (s == Sign::zero) out.active.push_back(i);
        if (s == Sign::positive) out.violated.push_back(i);
        out.values.push_back(std::move(v));
    }
    if (!out.violated.empty())
        out.status = Membership::Status::outside;
    else if (!out.active.empty())
        out.status = Membership::Status::boundary;
    return out;
}

inline Membership member(const ConeSystem& cone, const std::vector<DeltaVector>& s) { return member(cone, flatten(s)); }

struct Irredundancy {
    std::size_t row = 0;
    bool irredundant = false;
    LPCertificate certificate;
    std::vector<LinearRow> lp_rows;
};

/// Rows of the LP deciding whether `row` is the only active functional at
/// some regular point: row = 0, other functional rows <= -1, variables >= 1.
inline std::vector<LinearRow> irredundancy_rows(const ConeSystem& cone, std::size_t row) {
    const FieldPtr& ctx = cone.field;
    const std::size_t d = static_cast<std::size_t>(cone.dimension());
    std::vector<LinearRow> out;
    out.push_back({cone.rows[row].coeffs, Relation::eq, CycloReal(ctx)});
    for (std::size_t i = 0; i < cone.rows.size(); ++i) {
        if (i == row || cone.rows[i].kind == ConeRow::Kind::nonnegativity) continue;
        out.push_back({cone.rows[i].coeffs, Relation::le, CycloReal(ctx, -1L)});
    }
    for (std::size_t v = 0; v < d; ++v) {
        LinearRow b{std::vector<CycloReal>(d, CycloReal(ctx)), Relation::ge, CycloReal(ctx, 1L)};
        b.coeffs[v] = CycloReal(ctx, 1L);
        out.push_back(std::move(b));
    }
    return out;
}

inline Irredundancy irredundant(const ConeSystem& cone, std::size_t row) {
    if (row >= cone.rows.size() || cone.rows[row].kind == ConeRow::Kind::nonnegativity)
        throw usage_error("row " + std::to_string(row) + " is not a functional row of the cone");
    Irredundancy out;
    out.row = row;
    out.lp_rows = irredundancy_rows(cone, row);
    out.certificate = lp_feasible(cone.field, cone.dimension(), out.lp_rows);
    out.irredundant = out.certificate.feasible();
    return out;
}

inline Irredundancy irredundant(const ConeSystem& cone, const Functional& f) {
    for (std::size_t i = 0; i < cone.rows.size(); ++i)
        if (cone.rows[i].source && *cone.rows[i].source == f) return irredundant(cone, i);
    throw usage_error("functional " + f.to_string() + " is not a row of the cone");
}

/// Whether the system without `row` still forces row . x <= 0.
inline bool implied_by(const FieldPtr& ctx, int dim, const std::vector<ConeRow>& others, const ConeRow& row) {
    std::vector<LinearRow> lp;
    for (const auto& r : others) lp.push_back({r.coeffs, Relation::le, CycloReal(ctx)});
    lp.push_back({row.coeffs, Relation::ge, CycloReal(ctx, 1L)});
    return !lp_feasible(ctx, dim, lp).feasible();
}

namespace detail {

inline bool is_zero_row(const ConeRow& r) {
    return std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const CycloReal& c) { return c.is_zero(); });
}

/// Scale so the first nonzero coefficient is +-1; positive scaling only.
inline void normalize(ConeRow& r) {
    for (const auto& c : r.coeffs) {
        if (c.is_zero()) continue;
        CycloReal s = c.sign() == Sign::positive ? c.inverse() : (-c).inverse();
        for (auto& x : r.coeffs)
            if (!x.is_zero()) x *= s;
        return;
    }
}

/// Drop zero rows, positive-multiple duplicates and LP-implied rows.
inline std::vector<ConeRow> prune(const FieldPtr& ctx, int dim, std::vector<ConeRow> rows) {
    std::vector<ConeRow> uniq;
    for (auto& r : rows) {
        if (is_zero_row(r)) continue;
        normalize(r);
        bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const ConeRow& u) { return u.coeffs == r.coeffs; });
        if (!dup) uniq.push_back(std::move(r));
    }
    for (std::size_t i = uniq.size(); i-- > 0;) {
        std::vector<ConeRow> others;
        for (std::size_t k = 0; k < uniq.size(); ++k)
            if (k != i) others.push_back(uniq[k]);
        if (implied_by(ctx, dim, others, uniq[i])) uniq.erase(uniq.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return uniq;
}

}  // namespace detail

/// Project onto the variables listed in keep (by index, in that order).
inline ConeSystem fm_eliminate(const ConeSystem& cone, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw usage_error("projection needs at least one kept variable");
    const FieldPtr& ctx = cone.field;
    const int dim = cone.dimension();
    for (auto k : keep)
        if (k >= static_cast<std::size_t>(dim)) throw usage_error("kept variable index out of range");
    std::vector<bool> kept(static_cast<std::size_t>(dim), false);
    for (auto k : keep) kept[k] = true;

    std::vector<ConeRow> rows = cone.rows;
    for (auto& r : rows) r.kind = r.kind == ConeRow::Kind::nonnegativity ? r.kind : ConeRow::Kind::derived;
    rows = detail::prune(ctx, dim, std::move(rows));
    for (std::size_t v = 0; v < static_cast<std::size_t>(dim); ++v) {
        if (kept[v]) continue;
        std::vector<ConeRow> pos, neg, next;
        for (auto& r : rows) {
            Sign s = r.coeffs[v].sign();
            if (s == Sign::positive)
                pos.push_back(std::move(r));
            else if (s == Sign::negative)
                neg.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        for (const auto& p : pos)
            for (const auto& q : neg) {
                ConeRow c;
                c.kind = ConeRow::Kind::derived;
                CycloReal fp = -q.coeffs[v], fq = p.coeffs[v];
                for (std::size_t k = 0; k < p.coeffs.size(); ++k) c.coeffs.push_back(fp * p.coeffs[k] + fq * q.coeffs[k]);
                c.coeffs[v] = CycloReal(ctx);
                next.push_back(std::move(c));
            }
        rows = detail::prune(ctx, dim, std::move(next));
    }
    ConeSystem out;
    out.m = cone.m;
    out.field = ctx;
    for (auto k : keep) out.variables.push_back(cone.variables[k]);
    for (const auto& r : rows) {
        ConeRow p;
        p.kind = ConeRow::Kind::derived;
        for (auto k : keep) p.coeffs.push_back(r.coeffs[k]);
        p.label = "fm";
        out.rows.push_back(std::move(p));
    }
    return out;
}

struct RayDescription {
    std::vector<std::vector<CycloReal>> rays;
    std::vector<std::vector<CycloReal>> lineality;
};

constexpr int kMaxRayDimension = 8;

/// Double description: generators of {x : row . x <= 0 for all rows}.
inline RayDescription extreme_rays(const ConeSystem& cone) {
    const int dim = cone.dimension();
    if (dim > kMaxRayDimension)
        throw resource_error("extreme ray enumeration limited to dimension " + std::to_string(kMaxRayDimension));
    const FieldPtr& ctx = cone.field;
    const std::size_t d = static_cast<std::size_t>(dim);
    using Vec = std::vector<CycloReal>;
    struct Ray {
        Vec v;
        std::vector<bool> tight;
    };
    std::vector<Vec> lin;
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, CycloReal(ctx));
        e[i] = CycloReal(ctx, 1L);
        lin.push_back(std::move(e));
    }
    std::vector<Ray> rays;
    auto dotv = [&](const Vec& a, const Vec& b) { return detail::dot(ctx, a, b); };
    auto axpy = [&](const CycloReal& s, const Vec& a, const CycloReal& t, const Vec& b) {
        Vec out(d, CycloReal(ctx));
        for (std::size_t i = 0; i < d; ++i) out[i] = s * a[i] + t * b[i];
        return out;
    };

    for (std::size_t h = 0; h < cone.rows.size(); ++h) {
        const Vec& row = cone.rows[h].coeffs;
        auto pivot = std::find_if(lin.begin(), lin.end(), [&](const Vec& l) { return !dotv(row, l).is_zero(); });
        if (pivot != lin.end()) {
            Vec l = *pivot;
            lin.erase(pivot);
            CycloReal hl = dotv(row, l);
            for (auto& other : lin) other = axpy(CycloReal(ctx, 1L), other, -(dotv(row, other) / hl), l);
            for (auto& r : rays) {
                r.v = axpy(CycloReal(ctx, 1L), r.v, -(dotv(row, r.v) / hl), l);
                r.tight.push_back(true);
            }
            Ray fresh;
            fresh.v = l;
            if (hl.sign() == Sign::positive)
                for (auto& x : fresh.v) x = -x;
            fresh.tight.assign(h, true);
            fresh.tight.push_back(false);
            rays.push_back(std::move(fresh));
            continue;
        }
        std::vector<CycloReal> val;
        for (const auto& r : rays) val.push_back(dotv(row, r.v));
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (val[i].sign() != Sign::positive) {
                Ray r = rays[i];
                r.tight.push_back(val[i].is_zero());
                next.push_back(std::move(r));
            }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i].sign() != Sign::positive) continue;
            for (std::size_t k = 0; k < rays.size(); ++k) {
                if (val[k].sign() != Sign::negative) continue;
                // adjacency: no third ray is tight on every constraint both share
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == i || o == k) continue;
                    bool covers = true;
                    for (std::size_t c = 0; c < h && covers; ++c)
                        if (rays[i].tight[c] && rays[k].tight[c] && !rays[o].tight[c]) covers = false;
                    if (covers) adjacent = false;
                }
                if (!adjacent) continue;
                Ray r;
                r.v = axpy(val[i], rays[k].v, -val[k], rays[i].v);
                for (std::size_t c = 0; c < h; ++c) r.tight.push_back(rays[i].tight[c] && rays[k].tight[c]);
                r.tight.push_back(true);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }
    RayDescription out;
    for (auto& r : rays) {
        ConeRow tmp;
        tmp.coeffs = r.v;
        detail::normalize(tmp);
        if (std::none_of(out.rays.begin(), out.rays.end(), [&](const Vec& v) { return v == tmp.coeffs; }))
            out.rays.push_back(std::move(tmp.coeffs));
    }
    std::sort(out.rays.begin(), out.rays.end(), [](const Vec& a, const Vec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto c = a[i] <=> b[i];
            if (c != 0) return c > 0;
        }
        return false;
    });
    out.lineality = std::move(lin);
    return out;
}

/// Rank of a list of vectors by exact Gaussian elimination.
inline int rank_of(std::vector<std::vector<CycloReal>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t r0 = static_cast<std::size_t>(rank);
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r0), rows.end(),
                               [&](const std::vector<CycloReal>& r) { return !r[c].is_zero(); });
        if (it == rows.end()) continue;
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r0), it);
        CycloReal inv = rows[r0][c].inverse();
        for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
            if (rows[r][c].is_zero()) continue;
            CycloReal f = rows[r][c] * inv;
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[r0][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace gti
