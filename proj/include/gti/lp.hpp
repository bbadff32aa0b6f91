#pragma once

/**
 * @file lp.hpp
 * @brief Exact feasibility LP over Q(cos(pi/m)) with verifiable certificates.
 *
 * Phase-1 simplex on a dense tableau with Bland's rule. Variables are free
 * unless a single-variable row bounds them from below, in which case they are
 * shifted to be nonnegative; the remaining free variables are split.
 * Infeasibility certificates are read off the final tableau (the starting
 * basis columns hold B^-1) and mapped back to the caller's rows.
 */

#include <optional>
#include <string>
#include <vector>

#include "gti/exactreal.hpp"

namespace gti {

enum class Relation { le, eq, ge };

inline std::string to_string(Relation r) {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::eq: return "=";
        case Relation::ge: return ">=";
    }
    return "?";
}

struct LinearRow {
    std::vector<CycloReal> coeffs;
    Relation rel = Relation::le;
    CycloReal rhs;
};

/// Feasible: witness satisfies every row. Infeasible: multipliers y with
/// sum_i y_i a_i = 0, sum_i y_i b_i = -1, y_i >= 0 on <= rows, y_i <= 0 on >= rows.
struct LPCertificate {
    enum class Status { feasible, infeasible };
    Status status = Status::infeasible;
    std::vector<CycloReal> witness;
    std::vector<CycloReal> multipliers;

    bool feasible() const { return status == Status::feasible; }
};

namespace detail {

inline void check_rows(const FieldPtr& ctx, int nvars, const std::vector<LinearRow>& rows) {
    for (const auto& r : rows) {
        if (static_cast<int>(r.coeffs.size()) != nvars) throw usage_error("LP row has the wrong number of coefficients");
        for (const auto& c : r.coeffs)
            if (!c.valid() || c.context()->m() != ctx->m()) throw usage_error("LP coefficient from another field");
        if (!r.rhs.valid() || r.rhs.context()->m() != ctx->m()) throw usage_error("LP right-hand side from another field");
    }
}

inline CycloReal dot(const FieldPtr& ctx, const std::vector<CycloReal>& a, const std::vector<CycloReal>& x) {
    CycloReal acc(ctx);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !x[i].is_zero()) acc += a[i] * x[i];
    return acc;
}

}  // namespace detail

/// Exact substitution check of a certificate against its rows.
inline bool verify_certificate(const FieldPtr& ctx, int nvars, const std::vector<LinearRow>& rows,
                               const LPCertificate& cert) {
    if (cert.feasible()) {
        if (static_cast<int>(cert.witness.size()) != nvars) return false;
        for (const auto& r : rows) {
            Sign s = (detail::dot(ctx, r.coeffs, cert.witness) - r.rhs).sign();
            if (r.rel == Relation::le && s == Sign::positive) return false;
            if (r.rel == Relation::ge && s == Sign::negative) return false;
            if (r.rel == Relation::eq && s != Sign::zero) return false;
        }
        return true;
    }
    if (cert.multipliers.size() != rows.size()) return false;
    std::vector<CycloReal> combo(static_cast<std::size_t>(nvars), CycloReal(ctx));
    CycloReal rhs(ctx);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const CycloReal& y = cert.multipliers[i];
        if (y.is_zero()) continue;
        Sign s = y.sign();
        if (rows[i].rel == Relation::le && s == Sign::negative) return false;
        if (rows[i].rel == Relation::ge && s == Sign::positive) return false;
        for (int j = 0; j < nvars; ++j) combo[static_cast<std::size_t>(j)] += y * rows[i].coeffs[static_cast<std::size_t>(j)];
        rhs += y * rows[i].rhs;
    }
    for (const auto& c : combo)
        if (!c.is_zero()) return false;
    return rhs.sign() == Sign::negative;
}

/// Decide feasibility of {x in F^nvars : every row holds}.
inline LPCertificate lp_feasible(const FieldPtr& ctx, int nvars, const std::vector<LinearRow>& rows) {
    detail::check_rows(ctx, nvars, rows);
    const CycloReal zero(ctx);
    const std::size_t nv = static_cast<std::size_t>(nvars);

    // Presolve: first single-variable inequality row giving a lower bound.
    std::vector<std::optional<std::size_t>> bound_row(nv);
    std::vector<CycloReal> lower(nv, zero);
    std::vector<bool> dropped(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.rel == Relation::eq) continue;
        std::optional<std::size_t> only;
        bool single = true;
        for (std::size_t j = 0; j < nv && single; ++j) {
            if (r.coeffs[j].is_zero()) continue;
            if (only) single = false;
            only = j;
        }
        if (!single || !only || bound_row[*only]) continue;
        Sign cs = r.coeffs[*only].sign();
        if ((r.rel == Relation::ge && cs == Sign::positive) || (r.rel == Relation::le && cs == Sign::negative)) {
            bound_row[*only] = i;
            lower[*only] = r.rhs / r.coeffs[*only];
            dropped[i] = true;
        }
    }

    // Column layout: structural columns, one slack per inequality row, then
    // artificials for the rows that need one.
    struct VarCols {
        std::size_t pos;
        std::optional<std::size_t> neg;
    };
    std::vector<VarCols> vcols(nv);
    std::size_t ncol = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        vcols[j].pos = ncol++;
        if (!bound_row[j]) vcols[j].neg = ncol++;
    }
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!dropped[i]) live.push_back(i);
    const std::size_t nrow = live.size();
    std::vector<std::optional<std::size_t>> slack(nrow);
    for (std::size_t r = 0; r < nrow; ++r)
        if (rows[live[r]].rel != Relation::eq) slack[r] = ncol++;
    const std::size_t art0 = ncol;

    std::vector<std::vector<CycloReal>> T(nrow);
    std::vector<int> flip(nrow, 1);
    std::vector<CycloReal> rhs(nrow, zero);
    for (std::size_t r = 0; r < nrow; ++r) {
        const auto& row = rows[live[r]];
        CycloReal b = row.rhs;
        for (std::size_t j = 0; j < nv; ++j)
            if (bound_row[j] && !row.coeffs[j].is_zero()) b -= row.coeffs[j] * lower[j];
        Sign bs = b.sign();
        flip[r] = (bs == Sign::negative || (bs == Sign::zero && row.rel == Relation::ge)) ? -1 : 1;
        rhs[r] = b * Rational(flip[r]);
    }
    // A row whose (flipped) slack has coefficient +1 starts with the slack
    // basic; every other row gets an artificial.
    std::vector<std::size_t> start_col(nrow);
    std::vector<bool> artificial(nrow, false);
    for (std::size_t r = 0; r < nrow; ++r) {
        Relation rel = rows[live[r]].rel;
        bool slack_plus = (rel == Relation::le && flip[r] > 0) || (rel == Relation::ge && flip[r] < 0);
        if (slack_plus) {
            start_col[r] = *slack[r];
        } else {
            start_col[r] = ncol++;
            artificial[r] = true;
        }
    }
    const std::size_t rhs_col = ncol;
    std::vector<std::size_t> basis(nrow);
    for (std::size_t r = 0; r < nrow; ++r) {
        const auto& row = rows[live[r]];
        T[r].assign(ncol + 1, zero);
        Rational f(flip[r]);
        for (std::size_t j = 0; j < nv; ++j) {
            if (row.coeffs[j].is_zero()) continue;
            T[r][vcols[j].pos] = row.coeffs[j] * f;
            if (vcols[j].neg) T[r][*vcols[j].neg] = -T[r][vcols[j].pos];
        }
        if (slack[r]) T[r][*slack[r]] = CycloReal(ctx, row.rel == Relation::le ? Rational(flip[r]) : Rational(-flip[r]));
        T[r][start_col[r]] = CycloReal(ctx, 1L);
        T[r][rhs_col] = rhs[r];
        basis[r] = start_col[r];
    }

    // Phase-1 objective row: reduced costs of the sum of artificials, rhs = -value.
    std::vector<CycloReal> obj(ncol + 1, zero);
    for (std::size_t r = 0; r < nrow; ++r)
        if (artificial[r])
            for (std::size_t c = 0; c <= ncol; ++c)
                if (c < art0 || c == rhs_col) obj[c] -= T[r][c];

    auto pivot = [&](std::size_t pr, std::size_t pc) {
        CycloReal inv = T[pr][pc].inverse();
        for (auto& v : T[pr])
            if (!v.is_zero()) v *= inv;
        auto eliminate = [&](std::vector<CycloReal>& row) {
            if (row[pc].is_zero()) return;
            CycloReal f = row[pc];
            for (std::size_t c = 0; c <= ncol; ++c)
                if (!T[pr][c].is_zero()) row[c] -= f * T[pr][c];
        };
        for (std::size_t r = 0; r < nrow; ++r)
            if (r != pr) eliminate(T[r]);
        eliminate(obj);
        basis[pr] = pc;
    };

    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t c = 0; c < art0; ++c)
            if (!obj[c].is_zero() && obj[c].sign() == Sign::negative) {
                enter = c;
                break;
            }
        if (!enter) break;
        std::optional<std::size_t> leave;
        for (std::size_t r = 0; r < nrow; ++r) {
            if (T[r][*enter].is_zero() || T[r][*enter].sign() != Sign::positive) continue;
            if (!leave) {
                leave = r;
                continue;
            }
            // compare T[r][rhs]/T[r][e] with T[l][rhs]/T[l][e]; ties go to the smaller basic index
            Sign s = (T[r][rhs_col] * T[*leave][*enter] - T[*leave][rhs_col] * T[r][*enter]).sign();
            if (s == Sign::negative || (s == Sign::zero && basis[r] < basis[*leave])) leave = r;
        }
        // phase 1 is bounded below by 0, so a ray is impossible
        if (!leave) throw std::logic_error("unbounded phase-1 LP");
        pivot(*leave, *enter);
    }

    LPCertificate cert;
    if (obj[rhs_col].is_zero()) {
        cert.status = LPCertificate::Status::feasible;
        std::vector<CycloReal> z(ncol, zero);
        for (std::size_t r = 0; r < nrow; ++r) z[basis[r]] = T[r][rhs_col];
        cert.witness.assign(nv, zero);
        for (std::size_t j = 0; j < nv; ++j) {
            CycloReal v = z[vcols[j].pos];
            if (vcols[j].neg) v -= z[*vcols[j].neg];
            if (bound_row[j]) v += lower[j];
            cert.witness[j] = v;
        }
    } else {
        cert.status = LPCertificate::Status::infeasible;
        cert.multipliers.assign(rows.size(), zero);
        CycloReal one(ctx, 1L);
        // dual of the flipped system: y_r = cost - reduced cost of row r's starting column
        for (std::size_t r = 0; r < nrow; ++r) {
            CycloReal y = artificial[r] ? one - obj[start_col[r]] : -obj[start_col[r]];
            cert.multipliers[live[r]] = -(y * Rational(flip[r]));
        }
        // dropped bound rows absorb the residual on their variable
        for (std::size_t j = 0; j < nv; ++j) {
            if (!bound_row[j]) continue;
            CycloReal resid(ctx);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (!dropped[i] && !cert.multipliers[i].is_zero()) resid += cert.multipliers[i] * rows[i].coeffs[j];
            cert.multipliers[*bound_row[j]] = -(resid / rows[*bound_row[j]].coeffs[j]);
        }
        CycloReal total(ctx);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!cert.multipliers[i].is_zero()) total += cert.multipliers[i] * rows[i].rhs;
        CycloReal scale = (-total).inverse();
        for (auto& y : cert.multipliers)
            if (!y.is_zero()) y *= scale;
    }
    if (!verify_certificate(ctx, nvars, rows, cert)) throw std::logic_error("LP certificate failed verification");
    return cert;
}

}  // namespace gti
