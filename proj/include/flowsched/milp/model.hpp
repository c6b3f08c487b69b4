#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowsched/rational.hpp"

namespace flowsched::milp {

enum class VarKind { Continuous, Binary };
enum class ConstraintSense { LessEq, Equal, GreaterEq };
enum class ObjectiveSense { Maximize, Minimize };

/// Role tags let model consumers (schedule extraction, z-vector extraction)
/// find variables without parsing names.
struct VarMeta {
    std::string role;  // "y", "z", "x", "w", "t", "delta", "deltabar", "xs", ...
    std::string key;   // arc or node id, when applicable
    int index = -1;    // interval index, when applicable
};

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    std::optional<Rational> lower;  // nullopt = -infinity
    std::optional<Rational> upper;  // nullopt = +infinity
    VarMeta meta;
};

struct LinearTerm {
    int var;
    Rational coeff;
};

struct Constraint {
    std::string name;
    std::vector<LinearTerm> terms;
    ConstraintSense sense = ConstraintSense::LessEq;
    Rational rhs;
};

class MilpModel {
public:
    int add_variable(const std::string& name, VarKind kind, std::optional<Rational> lower,
                     std::optional<Rational> upper, VarMeta meta = {});
    int add_continuous(const std::string& name, Rational lower, std::optional<Rational> upper,
                       VarMeta meta = {});
    int add_binary(const std::string& name, VarMeta meta = {});

    void add_constraint(const std::string& name, std::vector<LinearTerm> terms,
                        ConstraintSense sense, Rational rhs);
    void set_objective(ObjectiveSense sense, std::vector<LinearTerm> terms);

    int var_index(const std::string& name) const;  // -1 when absent
    const Variable& variable(int idx) const { return variables_[idx]; }
    int num_variables() const { return static_cast<int>(variables_.size()); }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    ObjectiveSense objective_sense() const { return obj_sense_; }
    const std::vector<LinearTerm>& objective() const { return objective_; }

    std::vector<int> binary_indices() const;

    /// Exact objective value of an assignment (missing vars count as 0).
    Rational objective_value(const std::vector<Rational>& assignment) const;
    /// Names of constraints / bounds an assignment violates (exact check;
    /// integrality of binaries included). Empty means feasible.
    std::vector<std::string> violations(const std::vector<Rational>& assignment) const;

private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::vector<LinearTerm> objective_;
    ObjectiveSense obj_sense_ = ObjectiveSense::Maximize;
    std::map<std::string, int> name_to_index_;
};

enum class SolveStatus { Optimal, FeasibleAtLimit, Infeasible, Unbounded, LimitNoIncumbent };

std::string to_string(SolveStatus status);

struct Snapshot {
    long at_node = 0;            // node count when the snapshot fired
    double at_seconds = 0.0;     // elapsed seconds when the snapshot fired
    std::string trigger;         // "nodes:<n>" or "seconds:<s>"
    std::optional<std::vector<Rational>> best_bound_lp;  // active best-bound node's LP point
    std::optional<std::vector<Rational>> incumbent;
};

struct MilpResult {
    SolveStatus status = SolveStatus::LimitNoIncumbent;
    std::optional<std::vector<Rational>> incumbent;  // indexed like model variables
    std::optional<Rational> incumbent_value;
    std::optional<Rational> best_bound;
    long node_count = 0;
    double elapsed_seconds = 0.0;
    std::vector<Snapshot> snapshots;
};

}  // namespace flowsched::milp
