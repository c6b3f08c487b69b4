#include "flowsched/milp/simplex.hpp"

#include <stdexcept>

namespace flowsched::milp {

namespace {
constexpr int kDegenerateStreakLimit = 40;
}

SimplexTableau::SimplexTableau(const MilpModel& model) {
    structurals_ = model.num_variables();
    m_ = static_cast<int>(model.constraints().size());
    n_ = structurals_ + m_;
    minimize_ = model.objective_sense() == ObjectiveSense::Minimize;

    cols_.resize(n_);
    for (int j = 0; j < structurals_; ++j) {
        const Variable& v = model.variable(j);
        Column& c = cols_[j];
        if (v.lower) { c.has_lower = true; c.lower = v.lower->raw(); }
        if (v.upper) { c.has_upper = true; c.upper = v.upper->raw(); }
        c.status = c.has_lower ? ColStatus::AtLower
                               : (c.has_upper ? ColStatus::AtUpper : ColStatus::NonbasicFree);
    }
    for (const auto& t : model.objective()) {
        cols_[t.var].cost += minimize_ ? mpq_class(-t.coeff.raw()) : t.coeff.raw();
    }

    rows_.assign(m_, std::vector<mpq_class>(n_));
    std::vector<mpq_class> rhs(m_);
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
        const Constraint& con = model.constraints()[i];
        for (const auto& t : con.terms) rows_[i][t.var] += t.coeff.raw();
        rhs[i] = con.rhs.raw();
        const int slack = structurals_ + i;
        rows_[i][slack] = 1;
        Column& s = cols_[slack];
        switch (con.sense) {
            case ConstraintSense::LessEq:
                s.has_lower = true; s.lower = 0;
                break;
            case ConstraintSense::GreaterEq:
                s.has_upper = true; s.upper = 0;
                break;
            case ConstraintSense::Equal:
                s.has_lower = s.has_upper = true; s.lower = 0; s.upper = 0;
                break;
        }
        s.status = ColStatus::Basic;
        basis_[i] = slack;
    }
    compute_beta(rhs);
}

mpq_class SimplexTableau::nonbasic_value(int j) const {
    switch (cols_[j].status) {
        case ColStatus::AtLower: return cols_[j].lower;
        case ColStatus::AtUpper: return cols_[j].upper;
        case ColStatus::NonbasicFree: return 0;
        case ColStatus::Basic: break;
    }
    throw std::logic_error("nonbasic_value on basic column");
}

void SimplexTableau::compute_beta(const std::vector<mpq_class>& rhs) {
    beta_.assign(m_, mpq_class(0));
    for (int i = 0; i < m_; ++i) {
        beta_[i] = rhs[i];
        const auto& row = rows_[i];
        for (int j = 0; j < n_; ++j) {
            if (cols_[j].status == ColStatus::Basic) continue;
            if (sgn(row[j]) == 0) continue;
            beta_[i] -= row[j] * nonbasic_value(j);
        }
    }
}

void SimplexTableau::compute_reduced_and_objective() {
    reduced_.assign(n_, mpq_class(0));
    for (int j = 0; j < n_; ++j) reduced_[j] = cols_[j].cost;
    for (int i = 0; i < m_; ++i) {
        const mpq_class& cb = cols_[basis_[i]].cost;
        if (sgn(cb) == 0) continue;
        const auto& row = rows_[i];
        for (int j = 0; j < n_; ++j)
            if (sgn(row[j]) != 0) reduced_[j] -= cb * row[j];
    }
    objective_ = 0;
    for (int j = 0; j < n_; ++j) {
        if (sgn(cols_[j].cost) == 0) continue;
        objective_ += cols_[j].cost *
                      (cols_[j].status == ColStatus::Basic ? mpq_class(0) : nonbasic_value(j));
    }
    for (int i = 0; i < m_; ++i) {
        const mpq_class& cb = cols_[basis_[i]].cost;
        if (sgn(cb) != 0) objective_ += cb * beta_[i];
    }
}

long g_pivots = 0;
long g_zero_ratio = 0;
void SimplexTableau::pivot(int row, int col) {
    ++g_pivots;
    auto& prow = rows_[row];
    const mpq_class inv = 1 / prow[col];
    // gather nonzero columns of the pivot row once
    static thread_local std::vector<int> nz;
    nz.clear();
    for (int j = 0; j < n_; ++j) {
        if (sgn(prow[j]) == 0) continue;
        prow[j] *= inv;
        nz.push_back(j);
    }
    for (int i = 0; i < m_; ++i) {
        if (i == row) continue;
        auto& r = rows_[i];
        if (sgn(r[col]) == 0) continue;
        const mpq_class f = r[col];
        for (int j : nz) r[j] -= f * prow[j];
    }
    if (sgn(reduced_[col]) != 0) {
        const mpq_class f = reduced_[col];
        for (int j : nz) reduced_[j] -= f * prow[j];
    }
    cols_[basis_[row]].status = ColStatus::AtLower;  // caller fixes the real status
    basis_[row] = col;
    cols_[col].status = ColStatus::Basic;
}

bool SimplexTableau::entering_eligible(int j, int* direction) const {
    const Column& c = cols_[j];
    if (c.status == ColStatus::Basic) return false;
    if (c.has_lower && c.has_upper && c.lower == c.upper) return false;  // fixed
    const int s = sgn(reduced_[j]);
    switch (c.status) {
        case ColStatus::AtLower:
            if (s > 0) { *direction = +1; return true; }
            return false;
        case ColStatus::AtUpper:
            if (s < 0) { *direction = -1; return true; }
            return false;
        case ColStatus::NonbasicFree:
            if (s != 0) { *direction = s > 0 ? +1 : -1; return true; }
            return false;
        case ColStatus::Basic: break;
    }
    return false;
}

void SimplexTableau::maybe_go_bland(bool degenerate) {
    if (bland_) return;
    degenerate_streak_ = degenerate ? degenerate_streak_ + 1 : 0;
    if (degenerate_streak_ >= kDegenerateStreakLimit) bland_ = true;
}

SolveStatus SimplexTableau::primal_loop() {
    for (;;) {
        // entering column
        int enter = -1, dir = 0;
        if (bland_) {
            for (int j = 0; j < n_; ++j) {
                int d;
                if (entering_eligible(j, &d)) { enter = j; dir = d; break; }
            }
        } else {
            mpq_class best;
            for (int j = 0; j < n_; ++j) {
                int d;
                if (!entering_eligible(j, &d)) continue;
                mpq_class mag = abs(reduced_[j]);
                if (enter < 0 || mag > best) { enter = j; dir = d; best = std::move(mag); }
            }
        }
        if (enter < 0) return SolveStatus::Optimal;

        // ratio test: theta >= 0 is the move of the entering variable times dir
        bool limited = false;
        mpq_class theta;
        int leave_row = -1;
        int leave_to_upper = 0;
        for (int i = 0; i < m_; ++i) {
            const mpq_class& a = rows_[i][enter];
            if (sgn(a) == 0) continue;
            const int k = basis_[i];
            const int delta_sign = -dir * sgn(a);  // sign of basic var movement
            if (delta_sign < 0 && cols_[k].has_lower) {
                mpq_class t = (beta_[i] - cols_[k].lower) / (dir > 0 ? a : -a);
                if (!limited || t < theta ||
                    (t == theta && (leave_row < 0 || basis_[i] < basis_[leave_row]))) {
                    limited = true; theta = std::move(t); leave_row = i; leave_to_upper = 0;
                }
            } else if (delta_sign > 0 && cols_[k].has_upper) {
                mpq_class t = (cols_[k].upper - beta_[i]) / (dir > 0 ? -a : a);
                if (!limited || t < theta ||
                    (t == theta && (leave_row < 0 || basis_[i] < basis_[leave_row]))) {
                    limited = true; theta = std::move(t); leave_row = i; leave_to_upper = 1;
                }
            }
        }
        // the entering variable's own opposite bound (bound flip)
        bool flip = false;
        if (cols_[enter].has_lower && cols_[enter].has_upper) {
            mpq_class span = cols_[enter].upper - cols_[enter].lower;
            if (!limited || span <= theta) {
                flip = true;
                theta = std::move(span);
                limited = true;
            }
        }
        if (!limited) return SolveStatus::Unbounded;

        const mpq_class step = dir > 0 ? theta : mpq_class(-theta);
        if (sgn(theta) != 0) {
            for (int i = 0; i < m_; ++i) {
                const mpq_class& a = rows_[i][enter];
                if (sgn(a) != 0) beta_[i] -= a * step;
            }
            objective_ += reduced_[enter] * step;
        }
        if (flip) {
            cols_[enter].status = cols_[enter].status == ColStatus::AtLower ? ColStatus::AtUpper
                                                                            : ColStatus::AtLower;
            maybe_go_bland(false);  // theta > 0 for non-fixed columns
            continue;
        }
        maybe_go_bland(sgn(theta) == 0);
        const mpq_class entering_value = nonbasic_value(enter) + step;
        const int leaving = basis_[leave_row];
        pivot(leave_row, enter);
        cols_[leaving].status = leave_to_upper ? ColStatus::AtUpper : ColStatus::AtLower;
        beta_[leave_row] = entering_value;
    }
}

SolveStatus SimplexTableau::solve_from_scratch() {
    if (scratch_used_) throw std::logic_error("solve_from_scratch must run on a fresh tableau");
    scratch_used_ = true;
    // phase 1: artificials for rows whose slack starts outside its bounds
    std::vector<mpq_class> saved_costs(n_);
    for (int j = 0; j < n_; ++j) {
        saved_costs[j] = cols_[j].cost;
        cols_[j].cost = 0;
    }
    std::vector<int> artificials;
    for (int i = 0; i < m_; ++i) {
        const int slack = structurals_ + i;
        const Column& s = cols_[slack];
        int viol = 0;
        if (s.has_lower && beta_[i] < s.lower) viol = -1;
        if (s.has_upper && beta_[i] > s.upper) viol = +1;
        if (viol == 0) continue;
        // park the slack at the violated bound, make an artificial basic
        const mpq_class bound = viol < 0 ? s.lower : s.upper;
        const mpq_class residual = beta_[i] - bound;  // sign matches viol
        for (auto& r : rows_) r.push_back(0);
        cols_.push_back(Column{});
        Column& art = cols_.back();
        art.has_lower = true;
        art.lower = 0;
        art.cost = -1;  // phase-1: maximize -sum of artificials
        art.status = ColStatus::Basic;
        const int art_col = n_++;
        rows_[i][art_col] = viol > 0 ? 1 : -1;
        cols_[slack].status = viol < 0 ? ColStatus::AtLower : ColStatus::AtUpper;
        basis_[i] = art_col;
        beta_[i] = viol > 0 ? residual : mpq_class(-residual);
        artificials.push_back(art_col);
        saved_costs.push_back(0);
    }

    if (!artificials.empty()) {
        compute_reduced_and_objective();
        const SolveStatus st = primal_loop();
        if (st == SolveStatus::Unbounded)
            throw std::logic_error("phase-1 objective cannot be unbounded");
        if (sgn(objective_) != 0) return SolveStatus::Infeasible;
        // drive basic artificials (all zero now) out where possible
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < structurals_ + m_) continue;
            int col = -1;
            for (int j = 0; j < structurals_ + m_; ++j)
                if (sgn(rows_[i][j]) != 0) { col = j; break; }
            if (col >= 0) {
                const int art = basis_[i];
                const mpq_class entering_value = nonbasic_value(col);
                pivot(i, col);  // degenerate: artificial sits at zero
                cols_[art].status = ColStatus::AtLower;
                beta_[i] = entering_value;
            }
        }
        // freeze every artificial at zero
        for (int a : artificials) {
            cols_[a].has_lower = cols_[a].has_upper = true;
            cols_[a].lower = 0;
            cols_[a].upper = 0;
            if (cols_[a].status != ColStatus::Basic) cols_[a].status = ColStatus::AtLower;
        }
    }

    for (int j = 0; j < n_; ++j) cols_[j].cost = saved_costs[j];
    compute_reduced_and_objective();
    bland_ = false;
    degenerate_streak_ = 0;
    const SolveStatus st = primal_loop();
    solved_once_ = (st == SolveStatus::Optimal);
    return st;
}

void SimplexTableau::set_var_bounds(int model_var, const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("set_var_bounds: empty interval");
    Column& c = cols_[model_var];
    const bool was_basic = c.status == ColStatus::Basic;
    const mpq_class old_value = was_basic ? mpq_class(0) : nonbasic_value(model_var);
    c.has_lower = true;
    c.has_upper = true;
    c.lower = lo.raw();
    c.upper = hi.raw();
    if (was_basic) return;  // dual re-solve will repair beta
    // nonbasic: re-park at the nearest new bound and propagate the value change
    c.status = (old_value <= c.lower) ? ColStatus::AtLower
               : (old_value >= c.upper) ? ColStatus::AtUpper
                                        : ColStatus::AtLower;
    const mpq_class new_value = nonbasic_value(model_var);
    if (new_value == old_value) return;
    const mpq_class delta = new_value - old_value;
    for (int i = 0; i < m_; ++i) {
        const mpq_class& a = rows_[i][model_var];
        if (sgn(a) != 0) beta_[i] -= a * delta;
    }
    // reduced costs exist only once a solve has run; fresh tableaus recompute
    // the objective from scratch anyway
    if (!reduced_.empty()) objective_ += reduced_[model_var] * delta;
}

SolveStatus SimplexTableau::reoptimize_dual() {
    if (!solved_once_) throw std::logic_error("reoptimize_dual needs a solved tableau");
    for (;;) {
        // leaving row: a basic variable outside its bounds
        int leave_row = -1;
        int need_increase = 0;
        mpq_class worst;
        for (int i = 0; i < m_; ++i) {
            const Column& c = cols_[basis_[i]];
            mpq_class viol;
            int dir = 0;
            if (c.has_lower && beta_[i] < c.lower) { viol = c.lower - beta_[i]; dir = +1; }
            else if (c.has_upper && beta_[i] > c.upper) { viol = beta_[i] - c.upper; dir = -1; }
            else continue;
            if (bland_) {
                if (leave_row < 0 || basis_[i] < basis_[leave_row]) {
                    leave_row = i; need_increase = dir;
                }
            } else if (leave_row < 0 || viol > worst ||
                       (viol == worst && basis_[i] < basis_[leave_row])) {
                leave_row = i; need_increase = dir; worst = viol;
            }
        }
        if (leave_row < 0) return SolveStatus::Optimal;

        // entering column: keeps dual feasibility, moves the leaving variable
        // toward its violated bound
        const auto& row = rows_[leave_row];
        int enter = -1;
        mpq_class best_ratio;
        for (int j = 0; j < n_; ++j) {
            const Column& c = cols_[j];
            if (c.status == ColStatus::Basic) continue;
            if (c.has_lower && c.has_upper && c.lower == c.upper) continue;
            const int a = sgn(row[j]);
            if (a == 0) continue;
            bool ok = false;
            if (c.status == ColStatus::AtLower || c.status == ColStatus::NonbasicFree)
                ok |= (need_increase > 0 ? a < 0 : a > 0);
            if (c.status == ColStatus::AtUpper || c.status == ColStatus::NonbasicFree)
                ok |= (need_increase > 0 ? a > 0 : a < 0);
            if (!ok) continue;
            mpq_class ratio = abs(reduced_[j] / row[j]);
            if (enter < 0 || ratio < best_ratio || (ratio == best_ratio && j < enter)) {
                enter = j;
                best_ratio = std::move(ratio);
            }
        }
        if (enter < 0) return SolveStatus::Infeasible;
        if (sgn(reduced_[enter]) == 0) ++g_zero_ratio;

        const Column& lc = cols_[basis_[leave_row]];
        const mpq_class target = need_increase > 0 ? lc.lower : lc.upper;
        const mpq_class enter_old = nonbasic_value(enter);
        const mpq_class enter_new = enter_old + (beta_[leave_row] - target) / row[enter];
        maybe_go_bland(sgn(reduced_[enter]) == 0);

        const mpq_class delta = enter_new - enter_old;
        for (int i = 0; i < m_; ++i) {
            if (i == leave_row) continue;
            const mpq_class& a = rows_[i][enter];
            if (sgn(a) != 0) beta_[i] -= a * delta;
        }
        objective_ += reduced_[enter] * delta;
        const int leaving = basis_[leave_row];
        pivot(leave_row, enter);
        cols_[leaving].status = need_increase > 0 ? ColStatus::AtLower : ColStatus::AtUpper;
        beta_[leave_row] = enter_new;
    }
}

Rational SimplexTableau::objective_value() const {
    return Rational(minimize_ ? mpq_class(-objective_) : objective_);
}

std::vector<Rational> SimplexTableau::solution() const {
    std::vector<Rational> x(structurals_, Rational(0));
    for (int j = 0; j < structurals_; ++j)
        if (cols_[j].status != ColStatus::Basic) x[j] = Rational(nonbasic_value(j));
    for (int i = 0; i < m_; ++i)
        if (basis_[i] < structurals_) x[basis_[i]] = Rational(beta_[i]);
    return x;
}

}  // namespace flowsched::milp
