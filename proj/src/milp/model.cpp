#include "flowsched/milp/model.hpp"

#include <stdexcept>

namespace flowsched::milp {

int MilpModel::add_variable(const std::string& name, VarKind kind, std::optional<Rational> lower,
                            std::optional<Rational> upper, VarMeta meta) {
    if (name_to_index_.count(name)) throw std::invalid_argument("duplicate variable '" + name + "'");
    if (kind == VarKind::Binary) {
        lower = Rational(0);
        upper = Rational(1);
    }
    if (lower && upper && *lower > *upper)
        throw std::invalid_argument("variable '" + name + "' has empty bound interval");
    Variable v{name, kind, std::move(lower), std::move(upper), std::move(meta)};
    variables_.push_back(std::move(v));
    const int idx = static_cast<int>(variables_.size()) - 1;
    name_to_index_[name] = idx;
    return idx;
}

int MilpModel::add_continuous(const std::string& name, Rational lower,
                              std::optional<Rational> upper, VarMeta meta) {
    return add_variable(name, VarKind::Continuous, std::move(lower), std::move(upper), std::move(meta));
}

int MilpModel::add_binary(const std::string& name, VarMeta meta) {
    return add_variable(name, VarKind::Binary, Rational(0), Rational(1), std::move(meta));
}

void MilpModel::add_constraint(const std::string& name, std::vector<LinearTerm> terms,
                               ConstraintSense sense, Rational rhs) {
    for (const auto& t : terms)
        if (t.var < 0 || t.var >= num_variables())
            throw std::invalid_argument("constraint '" + name + "' references unknown variable");
    constraints_.push_back({name, std::move(terms), sense, std::move(rhs)});
}

void MilpModel::set_objective(ObjectiveSense sense, std::vector<LinearTerm> terms) {
    for (const auto& t : terms)
        if (t.var < 0 || t.var >= num_variables())
            throw std::invalid_argument("objective references unknown variable");
    obj_sense_ = sense;
    objective_ = std::move(terms);
}

int MilpModel::var_index(const std::string& name) const {
    auto it = name_to_index_.find(name);
    return it == name_to_index_.end() ? -1 : it->second;
}

std::vector<int> MilpModel::binary_indices() const {
    std::vector<int> out;
    for (int i = 0; i < num_variables(); ++i)
        if (variables_[i].kind == VarKind::Binary) out.push_back(i);
    return out;
}

Rational MilpModel::objective_value(const std::vector<Rational>& assignment) const {
    Rational v(0);
    for (const auto& t : objective_) v += t.coeff * assignment[t.var];
    return v;
}

std::vector<std::string> MilpModel::violations(const std::vector<Rational>& assignment) const {
    std::vector<std::string> bad;
    if (assignment.size() != variables_.size()) {
        bad.push_back("assignment size mismatch");
        return bad;
    }
    for (int i = 0; i < num_variables(); ++i) {
        const auto& var = variables_[i];
        const Rational& x = assignment[i];
        if (var.lower && x < *var.lower) bad.push_back("bound: " + var.name + " below lower");
        if (var.upper && x > *var.upper) bad.push_back("bound: " + var.name + " above upper");
        if (var.kind == VarKind::Binary && x != Rational(0) && x != Rational(1))
            bad.push_back("integrality: " + var.name + " = " + x.str());
    }
    for (const auto& c : constraints_) {
        Rational lhs(0);
        for (const auto& t : c.terms) lhs += t.coeff * assignment[t.var];
        const bool ok = c.sense == ConstraintSense::LessEq      ? lhs <= c.rhs
                        : c.sense == ConstraintSense::GreaterEq ? lhs >= c.rhs
                                                                : lhs == c.rhs;
        if (!ok) bad.push_back("constraint: " + c.name);
    }
    return bad;
}

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleAtLimit: return "feasible-at-limit";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::LimitNoIncumbent: return "limit-no-incumbent";
    }
    return "unknown";
}

}  // namespace flowsched::milp
