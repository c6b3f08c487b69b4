#include "flowsched/milp/writer.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flowsched::milp {

namespace {

// Decimal rendering: exact when the denominator is 2^a 5^b, otherwise 15
// significant digits (flagged so the caller can emit the exact ratio).
std::string decimal(const Rational& r, bool* exact) {
    mpz_class den = r.denominator();
    int twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den == 1) {
        *exact = true;
        const int k = std::max(twos, fives);
        mpz_class pow10 = 1;
        for (int i = 0; i < k; ++i) pow10 *= 10;
        mpz_class scaled = r.numerator() * (pow10 / r.denominator());
        std::string digits = scaled.get_str();
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg) digits.erase(digits.begin());
        while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
        std::string out = digits;
        if (k > 0) {
            out.insert(out.size() - static_cast<std::size_t>(k), ".");
            while (out.back() == '0') out.pop_back();
            if (out.back() == '.') out.pop_back();
        }
        return (neg ? "-" : "") + out;
    }
    *exact = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", r.to_double());
    return buf;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "v" + out;
    return out;
}

// Unique export names for variables and constraints.
struct NameTable {
    std::vector<std::string> var_names;
    std::vector<std::string> con_names;

    explicit NameTable(const MilpModel& m) {
        std::map<std::string, int> used;
        auto uniquify = [&used](const std::string& base) {
            std::string name = base;
            auto it = used.find(name);
            while (it != used.end()) {
                name = base + "_" + std::to_string(++it->second);
                it = used.find(name);
            }
            used[name] = 0;
            return name;
        };
        for (const auto& v : m.variables()) var_names.push_back(uniquify(sanitize(v.name)));
        int ci = 0;
        for (const auto& c : m.constraints()) {
            const std::string base = c.name.empty() ? "c" + std::to_string(ci) : sanitize(c.name);
            con_names.push_back(uniquify(base));
            ++ci;
        }
    }
};

std::string term_list(const std::vector<LinearTerm>& terms, const NameTable& names,
                      std::vector<std::string>* inexact) {
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        bool exact = true;
        const Rational mag = t.coeff.abs();
        const std::string coeff = decimal(mag, &exact);
        if (!exact)
            inexact->push_back(names.var_names[t.var] + " coefficient = " + t.coeff.str());
        if (first) {
            out << (t.coeff.sign() < 0 ? "- " : "");
            first = false;
        } else {
            out << (t.coeff.sign() < 0 ? " - " : " + ");
        }
        if (coeff != "1") out << coeff << " ";
        out << names.var_names[t.var];
    }
    if (first) out << "0 " << (names.var_names.empty() ? "x" : names.var_names[0]);
    return out.str();
}

std::string write_lp(const MilpModel& m, const NameTable& names) {
    std::vector<std::string> inexact;
    std::ostringstream body;
    body << (m.objective_sense() == ObjectiveSense::Maximize ? "Maximize" : "Minimize") << "\n";
    body << " obj: " << term_list(m.objective(), names, &inexact) << "\n";
    body << "Subject To\n";
    for (std::size_t i = 0; i < m.constraints().size(); ++i) {
        const auto& c = m.constraints()[i];
        const char* rel = c.sense == ConstraintSense::LessEq      ? "<="
                          : c.sense == ConstraintSense::GreaterEq ? ">="
                                                                  : "=";
        bool exact = true;
        const std::string rhs = decimal(c.rhs, &exact);
        if (!exact) inexact.push_back(names.con_names[i] + " rhs = " + c.rhs.str());
        body << " " << names.con_names[i] << ": " << term_list(c.terms, names, &inexact) << " "
             << rel << " " << rhs << "\n";
    }
    body << "Bounds\n";
    for (int j = 0; j < m.num_variables(); ++j) {
        const auto& v = m.variable(j);
        if (v.kind == VarKind::Binary) continue;
        if (!v.lower && !v.upper) {
            body << " " << names.var_names[j] << " free\n";
            continue;
        }
        if (v.lower && v.upper && *v.lower == *v.upper) {
            bool exact = true;
            const std::string val = decimal(*v.lower, &exact);
            if (!exact) inexact.push_back(names.var_names[j] + " fixed = " + v.lower->str());
            body << " " << names.var_names[j] << " = " << val << "\n";
            continue;
        }
        if (v.lower && *v.lower == Rational(0) && !v.upper) continue;  // LP default
        std::ostringstream line;
        line << " ";
        if (v.lower) {
            bool exact = true;
            const std::string lo = decimal(*v.lower, &exact);
            if (!exact) inexact.push_back(names.var_names[j] + " lower = " + v.lower->str());
            line << lo << " <= ";
        } else {
            line << "-inf <= ";
        }
        line << names.var_names[j];
        if (v.upper) {
            bool exact = true;
            const std::string hi = decimal(*v.upper, &exact);
            if (!exact) inexact.push_back(names.var_names[j] + " upper = " + v.upper->str());
            line << " <= " << hi;
        }
        body << line.str() << "\n";
    }
    bool any_binary = false;
    for (int j = 0; j < m.num_variables(); ++j)
        if (m.variable(j).kind == VarKind::Binary) any_binary = true;
    if (any_binary) {
        body << "Binaries\n";
        for (int j = 0; j < m.num_variables(); ++j)
            if (m.variable(j).kind == VarKind::Binary) body << " " << names.var_names[j] << "\n";
    }
    body << "End\n";

    std::ostringstream out;
    for (const auto& note : inexact) out << "\\ exact: " << note << "\n";
    out << body.str();
    return out.str();
}

std::string write_mps(const MilpModel& m, const NameTable& names) {
    std::vector<std::string> inexact;
    std::ostringstream out;
    out << "NAME model\n";
    if (m.objective_sense() == ObjectiveSense::Maximize) out << "OBJSENSE\n    MAX\n";
    out << "ROWS\n N  COST\n";
    for (std::size_t i = 0; i < m.constraints().size(); ++i) {
        const char sense = m.constraints()[i].sense == ConstraintSense::LessEq      ? 'L'
                           : m.constraints()[i].sense == ConstraintSense::GreaterEq ? 'G'
                                                                                    : 'E';
        out << " " << sense << "  " << names.con_names[i] << "\n";
    }

    // column-major entries
    std::vector<std::vector<std::pair<std::string, Rational>>> cols(m.num_variables());
    for (const auto& t : m.objective()) cols[t.var].push_back({"COST", t.coeff});
    for (std::size_t i = 0; i < m.constraints().size(); ++i)
        for (const auto& t : m.constraints()[i].terms)
            cols[t.var].push_back({names.con_names[i], t.coeff});

    out << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (int j = 0; j < m.num_variables(); ++j) {
        const bool integral = m.variable(j).kind == VarKind::Binary;
        if (integral != in_int) {
            out << "    MARKER" << marker++ << "  'MARKER'  "
                << (integral ? "'INTORG'" : "'INTEND'") << "\n";
            in_int = integral;
        }
        for (const auto& [row, coeff] : cols[j]) {
            bool exact = true;
            const std::string val = decimal(coeff, &exact);
            if (!exact) inexact.push_back(names.var_names[j] + " in " + row + " = " + coeff.str());
            out << "    " << names.var_names[j] << "  " << row << "  " << val << "\n";
        }
        if (cols[j].empty()) out << "    " << names.var_names[j] << "  COST  0\n";
    }
    if (in_int) out << "    MARKER" << marker++ << "  'MARKER'  'INTEND'\n";

    out << "RHS\n";
    for (std::size_t i = 0; i < m.constraints().size(); ++i) {
        if (m.constraints()[i].rhs.is_zero()) continue;
        bool exact = true;
        const std::string val = decimal(m.constraints()[i].rhs, &exact);
        if (!exact) inexact.push_back(names.con_names[i] + " rhs = " + m.constraints()[i].rhs.str());
        out << "    RHS  " << names.con_names[i] << "  " << val << "\n";
    }

    out << "BOUNDS\n";
    for (int j = 0; j < m.num_variables(); ++j) {
        const auto& v = m.variable(j);
        const std::string& name = names.var_names[j];
        if (v.kind == VarKind::Binary) {
            out << " BV BND  " << name << "\n";
            continue;
        }
        if (!v.lower && !v.upper) {
            out << " FR BND  " << name << "\n";
            continue;
        }
        auto emit = [&](const char* kind, const Rational& val) {
            bool exact = true;
            const std::string s = decimal(val, &exact);
            if (!exact) inexact.push_back(name + " bound = " + val.str());
            out << " " << kind << " BND  " << name << "  " << s << "\n";
        };
        if (v.lower && !(*v.lower == Rational(0))) emit("LO", *v.lower);
        if (!v.lower) out << " MI BND  " << name << "\n";
        if (v.upper) emit("UP", *v.upper);
    }
    out << "ENDATA\n";

    std::ostringstream full;
    for (const auto& note : inexact) full << "* exact: " << note << "\n";
    full << out.str();
    return full.str();
}

}  // namespace

std::string write_model(const MilpModel& model, ExportFormat format) {
    NameTable names(model);
    return format == ExportFormat::Lp ? write_lp(model, names) : write_mps(model, names);
}

void export_model(const MilpModel& model, ExportFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << write_model(model, format);
}

}  // namespace flowsched::milp
