#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <vector>

#include "flowsched/milp/model.hpp"

namespace flowsched::milp {

/// Exact rational simplex over bounded variables, full-tableau form.
///
/// Rows enter as A x + s = b with one slack per row whose bounds encode the
/// sense. solve_from_scratch runs a phase-1 with artificials for violated
/// rows, then the primal phase-2. reoptimize_dual restores optimality after
/// bound changes (the branch-and-bound re-solve path); bound changes never
/// disturb dual feasibility.
///
/// Pricing is Dantzig with a permanent switch to Bland's rule after a run of
/// degenerate pivots, so termination is guaranteed while typical solves stay
/// fast. All arithmetic is exact.
class SimplexTableau {
public:
    explicit SimplexTableau(const MilpModel& model);

    SolveStatus solve_from_scratch();

    /// Tightens/changes bounds of a structural variable in place.
    void set_var_bounds(int model_var, const Rational& lo, const Rational& hi);

    /// Dual simplex until primal feasibility; requires a previously optimal
    /// tableau. Returns Optimal or Infeasible.
    SolveStatus reoptimize_dual();

    /// Objective value in the model's own sense.
    Rational objective_value() const;
    /// Values of the model's structural variables.
    std::vector<Rational> solution() const;

    std::size_t cell_count() const { return rows_.empty() ? 0 : rows_.size() * rows_[0].size(); }

private:
    enum class ColStatus : unsigned char { Basic, AtLower, AtUpper, NonbasicFree };

    struct Column {
        bool has_lower = false, has_upper = false;
        mpq_class lower, upper;
        mpq_class cost;  // internal (always maximized)
        ColStatus status = ColStatus::AtLower;
    };

    int structurals_ = 0;
    int m_ = 0;   // rows
    int n_ = 0;   // total columns (structurals + slacks [+ artificials])
    bool minimize_ = false;
    std::vector<Column> cols_;
    std::vector<std::vector<mpq_class>> rows_;  // B^{-1} A, m x n
    std::vector<mpq_class> beta_;               // values of basic variables
    std::vector<int> basis_;                    // column basic in each row
    std::vector<mpq_class> reduced_;            // reduced costs
    mpq_class objective_;                       // internal objective value
    bool bland_ = false;
    int degenerate_streak_ = 0;
    bool solved_once_ = false;
    bool scratch_used_ = false;

    mpq_class nonbasic_value(int j) const;
    void compute_beta(const std::vector<mpq_class>& rhs);
    void compute_reduced_and_objective();
    void pivot(int row, int col);
    // returns Optimal or Unbounded
    SolveStatus primal_loop();
    bool entering_eligible(int j, int* direction) const;
    void maybe_go_bland(bool degenerate);
};

}  // namespace flowsched::milp
